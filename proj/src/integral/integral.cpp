#include "ecf/integral.hpp"

#include <algorithm>

#include "ecf/errors.hpp"
#include "ecf/reference.hpp"

namespace ecf {

namespace {

constexpr long kGuardBits = 24;
constexpr long kMaxGuardBits = 1L << 16;

HPFloat hp(const Rational& r, long w) { return HPFloat(r, w); }

// sqrt(|c|); exact when |c| is a rational square.
HPFloat sqrt_abs_c(const QuadraticForm& form, long w) {
  return sqrt_hp(hp(form.c().abs(), w));
}

void require_in_domain(const QuadraticForm& form, const Rational& x) {
  if (!form.in_domain(x))
    throw DomainError("upper limit " + x.to_string() + " is outside [0, x*] for " +
                      form.to_string());
}

// Pi at a point where R = R(x) and the product c x are already known.
//
// Both branches are rewritten to avoid cancellation; with D = b^2 - a^2 c,
//   c > 0:  (f^2 x - b + f R)/(af - b) = (af + b)/(b - c x + f R)
//   c < 0:  the arcsin difference is the angle between (ag, b) and
//           (gR, g^2 x + b), i.e. atan(cross/dot) with
//           cross = g x (a g^2 + b (2b + g^2 x)/(a + R)),
//           dot   = a g^2 R + b (g^2 x + b).
HPFloat pi_from_parts(const QuadraticForm& form, const HPFloat& x, const HPFloat& r, long w) {
  const HPFloat a = hp(form.a(), w), b = hp(form.b(), w), c = hp(form.c(), w);
  const HPFloat root_c = sqrt_abs_c(form, w);
  if (form.form_case() == FormCase::Log) {
    const HPFloat num = a * root_c + b;
    const HPFloat den = b - c * x + root_c * r;
    return ln_ref(num / den) / root_c;
  }
  const HPFloat g2 = -c;
  const HPFloat g2x = g2 * x;
  const HPFloat cross = root_c * x * (a * g2 + b * (b.scaled(1) + g2x) / (a + r));
  const HPFloat dot = a * g2 * r + b * (g2x + b);
  return atan_ref(cross / dot) / root_c;
}

}  // namespace

Roots roots(const QuadraticForm& form, long bits) {
  const long w = bits + kGuardBits;
  const HPFloat a = hp(form.a(), w), b = hp(form.b(), w), c = hp(form.c(), w);
  const HPFloat s = b + sqrt_hp(hp(form.discriminant(), w));
  return {(a * a / s).rounded(bits), (s / c).rounded(bits)};
}

HPFloat radicand_root(const QuadraticForm& form, const Rational& x, long bits) {
  require_in_domain(form, x);
  return sqrt_hp(hp(form.radicand(x), bits));
}

HPFloat delta(const QuadraticForm& form, long bits) {
  const long w = bits + kGuardBits;
  const HPFloat a = hp(form.a(), w), b = hp(form.b(), w);
  const HPFloat root_c = sqrt_abs_c(form, w);
  if (form.form_case() == FormCase::Log) {
    // (b + af)/(b - af) = (b + af)^2 / D, with D = b^2 - a^2 c exact.
    const HPFloat s = b + a * root_c;
    const HPFloat ratio = s * s / hp(form.discriminant(), w);
    return (ln_ref(ratio) / root_c.scaled(1)).rounded(bits);
  }
  return (atan_ref(a * root_c / b) / root_c).rounded(bits);
}

HPFloat big_pi(const QuadraticForm& form, const UpperLimit& x, long bits) {
  const long w = bits + kGuardBits;
  if (std::holds_alternative<AtRoot>(x))
    return pi_from_parts(form, roots(form, w).xstar, HPFloat(w), w).rounded(bits);
  const Rational& xr = std::get<Rational>(x);
  require_in_domain(form, xr);
  if (xr.is_zero()) return HPFloat(bits);
  return pi_from_parts(form, hp(xr, w), radicand_root(form, xr, w), w).rounded(bits);
}

std::vector<ClosedFormCoeffs> coeff_table(unsigned n, const QuadraticForm& form) {
  const Rational& a = form.a();
  const Rational& b = form.b();
  const Rational& c = form.c();
  std::vector<ClosedFormCoeffs> out;
  out.reserve(n + 1);
  out.push_back({0, Rational(1), Rational(0)});
  if (n >= 1) out.push_back({1, b / c, a / c});
  for (unsigned k = 1; k < n; ++k) {
    // (k+1) c I_{k+1} = (2k+1) b I_k - k a^2 I_{k-1} at the root.
    const Rational up = Rational(static_cast<long>(2 * k + 1)) * b;
    const Rational down = Rational(static_cast<long>(k)) * a * a;
    const Rational scale = Rational(static_cast<long>(k + 1)) * c;
    const ClosedFormCoeffs& cur = out[k];
    const ClosedFormCoeffs& prev = out[k - 1];
    out.push_back({k + 1, (up * cur.curly - down * prev.curly) / scale,
                   (up * cur.frak - down * prev.frak) / scale});
  }
  return out;
}

ClosedFormCoeffs coeffs(unsigned n, const QuadraticForm& form) {
  return coeff_table(n, form).back();
}

HPFloat integral_at_root(unsigned n, const QuadraticForm& form, long bits) {
  const ClosedFormCoeffs k = coeffs(n, form);
  long guard = kGuardBits + 8;
  while (guard <= kMaxGuardBits) {
    const long w = bits + guard;
    const HPFloat lead = hp(k.curly, w) * delta(form, w);
    const HPFloat tail = hp(k.frak, w);
    const HPFloat result = lead - tail;
    if (tail.is_zero()) return result.rounded(bits);
    if (!result.is_zero()) {
      const long lost = std::max(lead.exponent(), tail.exponent()) - result.exponent();
      if (lost <= guard - 16) return result.rounded(bits);
      guard = lost + 48;
    } else {
      guard *= 2;
    }
  }
  throw ConvergenceError("integral_at_root: cancellation exceeds the precision budget");
}

namespace {

HPFloat integral_to_at(unsigned n, const QuadraticForm& form, const Rational& x, long w) {
  const HPFloat xs = hp(x, w);
  const HPFloat r = radicand_root(form, x, w);
  const HPFloat a = hp(form.a(), w), b = hp(form.b(), w), c = hp(form.c(), w);
  HPFloat prev = pi_from_parts(form, xs, r, w);  // I_0
  if (n == 0) return prev;
  HPFloat cur = (b * prev + r - a) / c;  // I_1
  HPFloat x_pow_r = r;                    // x^k R(x)
  const HPFloat a2 = a * a;
  for (unsigned k = 1; k < n; ++k) {
    x_pow_r *= xs;
    const HPFloat up(static_cast<long>(2 * k + 1), w);
    const HPFloat down(static_cast<long>(k), w);
    const HPFloat scale(static_cast<long>(k + 1), w);
    HPFloat next = (up * b * cur - down * a2 * prev + x_pow_r) / (scale * c);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

HPFloat integral_to(unsigned n, const QuadraticForm& form, const UpperLimit& x, long bits) {
  if (std::holds_alternative<AtRoot>(x)) return integral_at_root(n, form, bits);
  const Rational& xr = std::get<Rational>(x);
  require_in_domain(form, xr);
  if (xr.is_zero()) return HPFloat(bits);

  // The forward recurrence is unstable for small x; compare two working
  // precisions and widen until they agree to the requested one.
  const HPFloat tolerance = HPFloat::power_of_two(-bits - 1, bits);
  for (long guard = kGuardBits + 8; guard <= kMaxGuardBits; guard *= 2) {
    const HPFloat coarse = integral_to_at(n, form, xr, bits + guard);
    const HPFloat fine = integral_to_at(n, form, xr, bits + 2 * guard);
    if (relative_error(coarse, fine) <= tolerance) return fine.rounded(bits);
  }
  throw ConvergenceError("integral_to: forward recurrence did not stabilise");
}

}  // namespace ecf
