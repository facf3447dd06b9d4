#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace ecf {

using Integer = mpz_class;

/// Exact fraction of arbitrary-precision integers.
///
/// Always canonical: the denominator is positive and gcd(|num|, den) = 1.
/// Every constructor and arithmetic operator re-establishes this, so two
/// equal values have identical num()/den() pairs.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& value) : q_(value) {}  // NOLINT(google-explicit-constructor)

  /// num/den in lowest terms. Throws DomainError when den == 0.
  Rational(const Integer& num, const Integer& den);

  /// Reduces an arbitrary (num, den) pair; same as the two-argument
  /// constructor, exposed under a name that reads well at call sites that
  /// start from unreduced data.
  static Rational normalized(const Integer& num, const Integer& den) { return {num, den}; }

  /// Parses "p/q", "-p/q", "+p" or "p". Decimal points and exponents are
  /// rejected: exact parameters never go through floating point.
  static Rational parse(std::string_view text);

  const Integer& num() const { return q_.get_num(); }
  const Integer& den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return den() == 1; }

  Rational abs() const;
  Rational reciprocal() const;
  Rational pow(unsigned exponent) const;

  /// The rational square root when this value is the square of a rational.
  std::optional<Rational> exact_sqrt() const;

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;

  const mpq_class& raw() const { return q_; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  struct FromRaw {};
  Rational(FromRaw, mpq_class q) : q_(std::move(q)) {}

  mpq_class q_;
};

/// Integer square root when n is a perfect square.
std::optional<Integer> exact_isqrt(const Integer& n);

/// k! as an exact integer.
Integer factorial(unsigned long k);

}  // namespace ecf
