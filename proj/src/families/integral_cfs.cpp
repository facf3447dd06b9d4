#include "ecf/errors.hpp"
#include "ecf/families.hpp"

namespace ecf {

CFTermSeq ratio_cf_spec(unsigned nexp, const QuadraticForm& form) {
  if (nexp < 1) throw DomainError("ratio fraction needs exponent >= 1");
  const Rational b = form.b();
  const Rational a2c = form.a() * form.a() * form.c();
  const long n0 = nexp;
  auto terms = [n0, b, a2c](std::size_t k) -> TermPair {
    const long j = n0 + static_cast<long>(k);
    return {-Rational(j * j) * a2c, Rational(2 * j + 1) * b};
  };
  return {Rational(2 * n0 + 1) * b, terms, {}, {FamilyKind::RatioGeneralN, {}, {}}};
}

CFTermSeq completed_cf_spec(const QuadraticForm& form) {
  const Rational b = form.b();
  const Rational a2c = form.a() * form.a() * form.c();
  auto terms = [b, a2c](std::size_t k) -> TermPair {
    const long j = static_cast<long>(k);
    return {-Rational(j * j) * a2c, Rational(2 * j + 1) * b};
  };
  return {b, terms, {}, {FamilyKind::CompletedADelta, {}, {}}};
}

DepthValue completed_cf_value(const QuadraticForm& form, std::size_t depth, long bits) {
  return {eval_backward(completed_cf_spec(form), depth, bits), depth};
}

}  // namespace ecf
