#include "ecf/errors.hpp"
#include "ecf/families.hpp"

namespace ecf {

CFTermSeq brouncker_cf_spec() {
  auto terms = [](std::size_t k) -> TermPair {
    if (k == 1) return {Rational(1), Rational(2)};
    const long odd = 2 * static_cast<long>(k) - 1;
    return {Rational(odd * odd), Rational(2)};
  };
  return {Rational(0), terms, {}, {FamilyKind::Brouncker, {}, {}}};
}

CFTermSeq degenerate_cf_spec() {
  auto terms = [](std::size_t k) -> TermPair {
    const long j = static_cast<long>(k);
    return {Rational(-j * j), Rational(2 * j + 1)};
  };
  return {Rational(1), terms, {}, {FamilyKind::DegenerateZero, {}, {}}};
}

HPFloat degenerate_tail(std::size_t k, std::size_t depth, long bits) {
  if (k < 1) throw DomainError("degenerate tail index starts at 1");
  const long w = bits + 32;
  const long top = static_cast<long>(k + depth);
  HPFloat tail(2 * top + 1, w);
  for (long j = top - 1; j >= static_cast<long>(k); --j) {
    // T_j = (2j+1) - (j+1)^2 / T_{j+1}
    HPFloat quotient((j + 1) * (j + 1), w);
    quotient /= tail;
    tail = HPFloat(2 * j + 1, w);
    tail -= quotient;
  }
  return tail.rounded(bits);
}

}  // namespace ecf
