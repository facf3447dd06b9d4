#pragma once

#include <string>

#include "ecf/rational.hpp"

namespace ecf {

/// Sign case of the quadratic coefficient: c > 0 gives logarithms, c < 0
/// gives arctangents.
enum class FormCase { Log, Trig };

/// The radicand a^2 - 2bx + cx^2 with exact rational coefficients.
///
/// Valid forms have a > 0, b > 0, c != 0 and, for c > 0, b^2 > a^2 c, so
/// that a smallest positive root x* exists and the radicand is positive on
/// [0, x*).
class QuadraticForm {
 public:
  /// Validates and builds; throws DomainError for invalid coefficients.
  QuadraticForm(Rational a, Rational b, Rational c);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  FormCase form_case() const { return c_.sign() > 0 ? FormCase::Log : FormCase::Trig; }

  /// b^2 - a^2 c, positive for every valid form.
  Rational discriminant() const { return b_ * b_ - a_ * a_ * c_; }
  /// a^2 - 2bx + cx^2.
  Rational radicand(const Rational& x) const { return a_ * a_ - Rational(2) * b_ * x + c_ * x * x; }
  /// True iff 0 <= x <= x*, decided exactly.
  bool in_domain(const Rational& x) const;

  std::string to_string() const;

 private:
  Rational a_, b_, c_;
};

}  // namespace ecf
