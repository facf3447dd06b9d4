#include "ecf/quadratic_form.hpp"

#include "ecf/errors.hpp"

namespace ecf {

QuadraticForm::QuadraticForm(Rational a, Rational b, Rational c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (a_.sign() <= 0) throw DomainError("quadratic form needs a > 0");
  if (b_.sign() <= 0) throw DomainError("quadratic form needs b > 0");
  if (c_.is_zero()) throw DomainError("quadratic form needs c != 0 (the radicand must be quadratic)");
  if (c_.sign() > 0 && discriminant().sign() <= 0)
    throw DomainError("log case needs b^2 > a^2 c (otherwise the radicand has no real root)");
}

bool QuadraticForm::in_domain(const Rational& x) const {
  if (x.sign() < 0) return false;
  if (radicand(x).sign() < 0) return false;
  // For c > 0 the radicand turns positive again past the larger root; the
  // vertex b/c separates the two roots.
  if (c_.sign() > 0 && x > b_ / c_) return false;
  return true;
}

std::string QuadraticForm::to_string() const {
  return "(a=" + a_.to_string() + ", b=" + b_.to_string() + ", c=" + c_.to_string() + ")";
}

}  // namespace ecf
