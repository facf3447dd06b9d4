#include <optional>

#include "ecf/errors.hpp"
#include "ecf/families.hpp"

namespace ecf {

namespace {

void require_log_domain(const Rational& n, const Rational& msq) {
  if (n.sign() <= 0) throw DomainError("log fraction needs n > 0");
  if (msq.sign() <= 0) throw DomainError("log fraction needs m^2 > 0");
  if (msq >= n * n)
    throw DomainError("log fraction needs m^2 < n^2 (value would be infinite or complex)");
}

}  // namespace

CFTermSeq log_cf_spec(const Rational& n, const Rational& msq) {
  require_log_domain(n, msq);
  const std::optional<Rational> m = msq.exact_sqrt();
  const Rational lead = m ? Rational(2) * *m : Rational(2);
  FrontFactor front = m ? FrontFactor{} : FrontFactor{SqrtOf{msq}};
  auto terms = [n, msq, lead](std::size_t k) -> TermPair {
    const Rational beta = Rational(static_cast<long>(2 * k - 1)) * n;
    if (k == 1) return {lead, beta};
    const long j = static_cast<long>(k - 1);
    return {-Rational(j * j) * msq, beta};
  };
  return {Rational(0), terms, std::move(front), {FamilyKind::LogNM, n, msq}};
}

CFTermSeq log_reciprocal_cf_spec(const Rational& n, const Rational& msq) {
  require_log_domain(n, msq);
  auto terms = [n, msq](std::size_t k) -> TermPair {
    const long j = static_cast<long>(k);
    return {-Rational(j * j) * msq, Rational(2 * j + 1) * n};
  };
  return {n, terms, {}, {FamilyKind::LogReciprocal, n, msq}};
}

CFTermSeq log_of_integer(const Integer& i) {
  if (i < 2) throw DomainError("log_of_integer needs i >= 2");
  const Integer m = i - 1;
  return log_cf_spec(Rational(Integer(i + 1)), Rational(Integer(m * m)));
}

CFTermSeq log_of_fraction(const Integer& p, const Integer& q) {
  if (q < 1) throw DomainError("log_of_fraction needs q >= 1");
  if (p <= q) throw DomainError("log_of_fraction needs p > q");
  const Integer m = p - q;
  return log_cf_spec(Rational(Integer(p + q)), Rational(Integer(m * m)));
}

CFTermSeq atan_cf_spec(const Rational& n, const Rational& msq) {
  if (n.sign() <= 0) throw DomainError("arctan fraction needs n > 0");
  if (msq.sign() <= 0) throw DomainError("arctan fraction needs m^2 > 0");
  const std::optional<Rational> m = msq.exact_sqrt();
  const Rational lead = m ? *m : Rational(1);
  FrontFactor front = m ? FrontFactor{} : FrontFactor{SqrtOf{msq}};
  auto terms = [n, msq, lead](std::size_t k) -> TermPair {
    const Rational beta = Rational(static_cast<long>(2 * k - 1)) * n;
    if (k == 1) return {lead, beta};
    const long j = static_cast<long>(k - 1);
    return {Rational(j * j) * msq, beta};
  };
  return {Rational(0), terms, std::move(front), {FamilyKind::AtanNM, n, msq}};
}

}  // namespace ecf
