#include "ecf/reference.hpp"

#include "ecf/errors.hpp"

namespace ecf {

namespace {

constexpr long kGuardBits = 32;

long working_bits(long bits) { return bits + kGuardBits; }

// Sum of t^(2k+1)/(2k+1), with alternating signs when `alternate` is set
// (arctan) and plain signs otherwise (atanh). Requires |t| < 1; the callers
// reduce the argument well below that so the loop is short.
HPFloat odd_power_series(const HPFloat& t, long w, bool alternate) {
  HPFloat sum = t.rounded(w);
  if (sum.is_zero()) return sum;
  HPFloat power = sum;
  HPFloat t2 = sum * sum;
  HPFloat term(w);
  const long floor_exp = sum.exponent() - w - 2;
  for (long k = 1;; ++k) {
    mpfr_mul(power.get(), power.get(), t2.get(), MPFR_RNDN);
    mpfr_div_si(term.get(), power.get(), 2 * k + 1, MPFR_RNDN);
    if (term.is_zero() || term.exponent() < floor_exp) break;
    if (alternate && (k % 2 == 1)) {
      mpfr_sub(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    } else {
      mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    }
  }
  return sum;
}

// arctan(1/k) for an integer k >= 2 by the series in 1/k^2; exact divisions
// by small integers keep every step at one rounding.
HPFloat arccot_integer(long k, long w) {
  HPFloat power(1, w);
  mpfr_div_si(power.get(), power.get(), k, MPFR_RNDN);
  HPFloat sum = power;
  HPFloat term(w);
  const long k2 = k * k;
  const long floor_exp = sum.exponent() - w - 2;
  for (long j = 1;; ++j) {
    mpfr_div_si(power.get(), power.get(), k2, MPFR_RNDN);
    mpfr_div_si(term.get(), power.get(), 2 * j + 1, MPFR_RNDN);
    if (term.is_zero() || term.exponent() < floor_exp) break;
    if (j % 2 == 1) {
      mpfr_sub(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    } else {
      mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    }
  }
  return sum;
}

HPFloat ln2_working(long w) {
  HPFloat third(1, w);
  mpfr_div_si(third.get(), third.get(), 3, MPFR_RNDN);
  return odd_power_series(third, w, false).scaled(1);
}

HPFloat pi_working(long w) {
  // Machin: pi = 16 arctan(1/5) - 4 arctan(1/239).
  HPFloat a = arccot_integer(5, w).scaled(4);
  HPFloat b = arccot_integer(239, w).scaled(2);
  return a - b;
}

}  // namespace

HPFloat ln_ref(const HPFloat& x) {
  if (x.sign() <= 0) throw DomainError("logarithm of a non-positive number");
  const long bits = x.precision();
  const long w = working_bits(bits);

  // x = m * 2^e with m in [1/sqrt(2), sqrt(2)).
  long e = x.exponent();
  HPFloat m = x.rounded(w).scaled(-e);  // m in [1/2, 1)
  if ((m * m) < HPFloat::power_of_two(-1, w)) {
    m = m.scaled(1);
    e -= 1;
  }

  // ln m = 2 atanh((m - 1) / (m + 1)), |t| <= 0.1716.
  const HPFloat one(1, w);
  const HPFloat t = (m - one) / (m + one);
  HPFloat result = odd_power_series(t, w, false).scaled(1);
  if (e != 0) result += ln2_working(w) * HPFloat(e, w);
  return result.rounded(bits);
}

HPFloat atan_ref(const HPFloat& x) {
  const long bits = x.precision();
  if (x.is_zero()) return HPFloat(bits);
  const long w = working_bits(bits);

  HPFloat y = x.abs().rounded(w);
  const HPFloat one(1, w);
  const bool reflect = y > one;
  if (reflect) y = one / y;

  // arctan y = 2 arctan(y / (1 + sqrt(1 + y^2))); halve until y < 2^-8.
  long halvings = 0;
  while (y.exponent() > -8) {
    y = y / (one + sqrt_hp(one + y * y));
    ++halvings;
  }
  HPFloat result = odd_power_series(y, w, true).scaled(halvings);
  if (reflect) result = pi_working(w).scaled(-1) - result;
  if (x.sign() < 0) result = -result;
  return result.rounded(bits);
}

HPFloat pi_ref(long bits) {
  if (bits < kMinPrecision) throw DomainError("pi_ref needs at least 64 bits");
  return pi_working(working_bits(bits)).rounded(bits);
}

}  // namespace ecf
