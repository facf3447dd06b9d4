#include "ecf/hpfloat.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "ecf/errors.hpp"

namespace ecf {

namespace {

long checked(long bits) {
  if (bits < kMinPrecision)
    throw DomainError("precision " + std::to_string(bits) + " bits is below the minimum of " +
                      std::to_string(kMinPrecision));
  if (bits > MPFR_PREC_MAX) throw DomainError("precision too large");
  return bits;
}

}  // namespace

HPFloat::HPFloat(long bits) {
  mpfr_init2(v_, checked(bits));
  mpfr_set_zero(v_, 1);
}

HPFloat::HPFloat(long value, long bits) {
  mpfr_init2(v_, checked(bits));
  mpfr_set_si(v_, value, MPFR_RNDN);
}

HPFloat::HPFloat(const Rational& value, long bits) {
  mpfr_init2(v_, checked(bits));
  mpfr_set_q(v_, value.raw().get_mpq_t(), MPFR_RNDN);
}

HPFloat::HPFloat(const Integer& value, long bits) {
  mpfr_init2(v_, checked(bits));
  mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

HPFloat HPFloat::parse(std::string_view text, long bits) {
  HPFloat out(bits);
  const std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(out.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end == nullptr || *end != '\0' || !out.is_finite())
    throw ParseError("malformed decimal '" + s + "'");
  return out;
}

HPFloat HPFloat::power_of_two(long exponent, long bits) {
  HPFloat out(1, bits);
  mpfr_mul_2si(out.v_, out.v_, exponent, MPFR_RNDN);
  return out;
}

HPFloat::HPFloat(const HPFloat& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

HPFloat::HPFloat(HPFloat&& other) noexcept {
  // mpfr has no null state: swap with a freshly initialised value.
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

HPFloat& HPFloat::operator=(const HPFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

HPFloat& HPFloat::operator=(HPFloat&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

HPFloat::~HPFloat() { mpfr_clear(v_); }

HPFloat HPFloat::rounded(long bits) const {
  HPFloat out(bits);
  mpfr_set(out.v_, v_, MPFR_RNDN);
  return out;
}

HPFloat HPFloat::abs() const {
  HPFloat out(precision());
  mpfr_abs(out.v_, v_, MPFR_RNDN);
  return out;
}

HPFloat HPFloat::scaled(long k) const {
  HPFloat out(precision());
  mpfr_mul_2si(out.v_, v_, k, MPFR_RNDN);
  return out;
}

std::string HPFloat::to_string(int significant_digits) const {
  significant_digits = std::max(significant_digits, 1);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", significant_digits, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

namespace {

template <int (*Op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)>
HPFloat binary(const HPFloat& a, const HPFloat& b) {
  HPFloat out(std::max(a.precision(), b.precision()));
  Op(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}

template <int (*Op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)>
void in_place(HPFloat& a, const HPFloat& b) {
  if (b.precision() > a.precision()) {
    a = binary<Op>(a, b);
  } else {
    Op(a.get(), a.get(), b.get(), MPFR_RNDN);
  }
}

}  // namespace

HPFloat& HPFloat::operator+=(const HPFloat& o) { in_place<mpfr_add>(*this, o); return *this; }
HPFloat& HPFloat::operator-=(const HPFloat& o) { in_place<mpfr_sub>(*this, o); return *this; }
HPFloat& HPFloat::operator*=(const HPFloat& o) { in_place<mpfr_mul>(*this, o); return *this; }
HPFloat& HPFloat::operator/=(const HPFloat& o) { in_place<mpfr_div>(*this, o); return *this; }

HPFloat operator+(const HPFloat& a, const HPFloat& b) { return binary<mpfr_add>(a, b); }
HPFloat operator-(const HPFloat& a, const HPFloat& b) { return binary<mpfr_sub>(a, b); }
HPFloat operator*(const HPFloat& a, const HPFloat& b) { return binary<mpfr_mul>(a, b); }
HPFloat operator/(const HPFloat& a, const HPFloat& b) { return binary<mpfr_div>(a, b); }

HPFloat operator-(const HPFloat& a) {
  HPFloat out(a.precision());
  mpfr_neg(out.v_, a.v_, MPFR_RNDN);
  return out;
}

namespace {

std::partial_ordering ordering_of(int unordered, int c) {
  if (unordered) return std::partial_ordering::unordered;
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

}  // namespace

std::partial_ordering operator<=>(const HPFloat& a, const HPFloat& b) {
  return ordering_of(mpfr_unordered_p(a.v_, b.v_), mpfr_cmp(a.v_, b.v_));
}

std::partial_ordering operator<=>(const HPFloat& a, long b) {
  return ordering_of(mpfr_nan_p(a.v_), mpfr_cmp_si(a.v_, b));
}

std::ostream& operator<<(std::ostream& os, const HPFloat& x) { return os << x.to_string(); }

HPFloat sqrt_hp(const HPFloat& x) {
  if (x.sign() < 0) throw DomainError("square root of a negative number");
  HPFloat out(x.precision());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

HPFloat relative_error(const HPFloat& a, const HPFloat& b) {
  HPFloat diff = (a - b).abs();
  if (b.is_zero()) return diff;
  return diff / b.abs();
}

double ulp_distance(const HPFloat& a, const HPFloat& b, long bits) {
  const HPFloat diff = (a - b).abs();
  if (diff.is_zero()) return 0.0;
  if (b.is_zero()) return diff.is_zero() ? 0.0 : HUGE_VAL;
  // ulp(b) at `bits` is 2^(exp(b) - bits).
  return diff.scaled(bits - b.exponent()).to_double();
}

}  // namespace ecf
