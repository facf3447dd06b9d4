#include <algorithm>
#include <optional>

#include "ecf/errors.hpp"
#include "ecf/families.hpp"

namespace ecf {

namespace {

constexpr std::size_t kMaxAutoTerms = 1'000'000;

struct LogAtanParams {
  Rational n;
  Rational msq;
  bool is_log;
  Rational lead;  // first partial numerator: 2m / m folded, else 2 / 1
  bool stripped;  // m carried as a SqrtOf front factor
};

LogAtanParams params_for(const Rational& n, const Rational& msq, FamilyKind kind) {
  if (kind != FamilyKind::LogNM && kind != FamilyKind::AtanNM)
    throw DomainError("difference law applies to the log and arctan families only");
  if (n.sign() <= 0 || msq.sign() <= 0) throw DomainError("family needs n > 0 and m^2 > 0");
  const bool is_log = kind == FamilyKind::LogNM;
  if (is_log && msq >= n * n)
    throw DomainError("log family is non-contractive for m >= n");
  const std::optional<Rational> m = msq.exact_sqrt();
  const Rational unit = is_log ? Rational(2) : Rational(1);
  return {n, msq, is_log, m ? unit * *m : unit, !m.has_value()};
}

// Denominators q_0 .. q_upto of the family fraction. They do not depend on
// the first partial numerator, so folded and stripped forms share them.
class DenominatorRun {
 public:
  explicit DenominatorRun(const LogAtanParams& p) : p_(p), prev_(1), cur_(p.n) {}

  // Advances from (q_{k-1}, q_k) to (q_k, q_{k+1}).
  void advance() {
    ++k_;
    const long j = static_cast<long>(k_);
    const Rational alpha = Rational(j - 1) * Rational(j - 1) * p_.msq;
    Rational next = Rational(2 * j - 1) * p_.n * cur_ + (p_.is_log ? -alpha : alpha) * prev_;
    prev_ = std::move(cur_);
    cur_ = std::move(next);
  }

  std::size_t k() const { return k_; }
  const Rational& q_prev() const { return prev_; }
  const Rational& q_cur() const { return cur_; }

 private:
  const LogAtanParams& p_;
  std::size_t k_ = 1;  // cur_ = q_k, prev_ = q_{k-1}
  Rational prev_, cur_;
};

}  // namespace

Rational difference_closed_form(std::size_t k, const Rational& n, const Rational& msq,
                                FamilyKind kind) {
  if (k < 1) throw DomainError("convergent differences start at k = 1");
  const LogAtanParams p = params_for(n, msq, kind);
  DenominatorRun q(p);
  while (q.k() < k) q.advance();
  const Integer f = factorial(k - 1);
  Rational numerator = p.lead * Rational(Integer(f * f)) * msq.pow(static_cast<unsigned>(k - 1));
  if (!p.is_log && (k % 2 == 0)) numerator = -numerator;
  return numerator / (q.q_prev() * q.q_cur());
}

HPFloat next_difference_magnitude(const CFTermSeq& cf, std::size_t k, long bits) {
  const FamilyTag& tag = cf.family();
  const Rational d = difference_closed_form(k + 1, tag.n, tag.msq, tag.kind).abs();
  return (HPFloat(d, bits + 8) * front_value(cf, bits + 8)).rounded(bits);
}

std::size_t auto_terms(const CFTermSeq& cf, const HPFloat& tol) {
  if (tol.sign() <= 0) throw DomainError("tolerance must be positive");
  const FamilyTag& tag = cf.family();
  const LogAtanParams p = params_for(tag.n, tag.msq, tag.kind);

  const long bits = std::max({kDefaultPrecision, tol.precision(), 32 - tol.exponent()});
  const HPFloat front = front_value(cf, bits);

  // Walk the closed-form differences d_j = lead ((j-1)!)^2 msq^(j-1) / (q_{j-1} q_j).
  DenominatorRun q(p);
  Rational numerator = p.lead;  // j = 1
  for (std::size_t k = 1; k < kMaxAutoTerms; ++k) {
    // numerator of d_{k+1}
    numerator *= Rational(static_cast<long>(k)) * Rational(static_cast<long>(k)) * p.msq;
    q.advance();
    const HPFloat magnitude = HPFloat((numerator / (q.q_prev() * q.q_cur())).abs(), bits) * front;
    if (magnitude >= tol) continue;

    // The model says depth k is enough; confirm with one more term.
    const HPFloat at_k = eval_value(cf, k, bits);
    const HPFloat at_next = eval_value(cf, k + 1, bits);
    if ((at_next - at_k).abs() < tol) return k;
  }
  throw ConvergenceError("auto_terms: tolerance not reached within the term limit");
}

}  // namespace ecf
