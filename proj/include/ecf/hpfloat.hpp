#pragma once

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ecf/rational.hpp"

namespace ecf {

/// Precision, in bits, used when a caller does not ask for one.
inline constexpr long kDefaultPrecision = 128;
/// Smallest precision accepted at the public API.
inline constexpr long kMinPrecision = 64;

/// Arbitrary-precision binary float with an explicit precision.
///
/// Thin RAII owner of an mpfr_t. Binary operations produce a result at the
/// larger of the two operand precisions, rounded to nearest. Values are
/// immutable from the caller's point of view; the compound assignment
/// operators exist for kernels that build a value up in place.
class HPFloat {
 public:
  /// Zero at the given precision. Throws DomainError below kMinPrecision.
  explicit HPFloat(long bits = kDefaultPrecision);
  HPFloat(long value, long bits);
  HPFloat(const Rational& value, long bits);
  HPFloat(const Integer& value, long bits);

  /// Parses a decimal literal such as "1e-12" or "0.5".
  static HPFloat parse(std::string_view text, long bits = kDefaultPrecision);
  /// 2^exponent, exact.
  static HPFloat power_of_two(long exponent, long bits);

  HPFloat(const HPFloat& other);
  HPFloat(HPFloat&& other) noexcept;
  HPFloat& operator=(const HPFloat& other);
  HPFloat& operator=(HPFloat&& other) noexcept;
  ~HPFloat();

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

  /// Same value rounded to a new precision.
  HPFloat rounded(long bits) const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  /// Binary exponent e with |x| in [2^(e-1), 2^e); undefined for zero.
  long exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }

  HPFloat abs() const;
  /// x * 2^k, exact.
  HPFloat scaled(long k) const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Decimal rendering with the given number of significant digits.
  std::string to_string(int significant_digits = 15) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  HPFloat& operator+=(const HPFloat& o);
  HPFloat& operator-=(const HPFloat& o);
  HPFloat& operator*=(const HPFloat& o);
  HPFloat& operator/=(const HPFloat& o);

  friend HPFloat operator+(const HPFloat& a, const HPFloat& b);
  friend HPFloat operator-(const HPFloat& a, const HPFloat& b);
  friend HPFloat operator*(const HPFloat& a, const HPFloat& b);
  friend HPFloat operator/(const HPFloat& a, const HPFloat& b);
  friend HPFloat operator-(const HPFloat& a);

  friend bool operator==(const HPFloat& a, const HPFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const HPFloat& a, const HPFloat& b);
  friend bool operator==(const HPFloat& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const HPFloat& a, long b);

  friend std::ostream& operator<<(std::ostream& os, const HPFloat& x);

 private:
  mpfr_t v_;
};

/// Correctly rounded square root. Throws DomainError for negative input.
HPFloat sqrt_hp(const HPFloat& x);

/// |a - b| / |b| (|a - b| when b is zero), at the larger precision.
HPFloat relative_error(const HPFloat& a, const HPFloat& b);

/// |a - b| measured in units in the last place of b at `bits`.
double ulp_distance(const HPFloat& a, const HPFloat& b, long bits);

}  // namespace ecf
