#include "ecf/cf_core.hpp"

#include <bit>
#include <exception>
#include <string>

#include "ecf/errors.hpp"

namespace ecf {

CFTermSeq::CFTermSeq(Rational beta0, Generator terms, FrontFactor front, FamilyTag family)
    : beta0_(std::move(beta0)),
      terms_(std::move(terms)),
      front_(std::move(front)),
      family_(std::move(family)) {
  if (!terms_) throw DomainError("continued fraction without a term generator");
  if (const auto* s = std::get_if<SqrtOf>(&front_); s != nullptr && s->radicand.sign() < 0)
    throw DomainError("front factor is the square root of a negative number");
}

TermPair CFTermSeq::term(std::size_t k) const {
  if (k == 0) throw DomainError("continued fraction levels start at 1");
  TermPair t = terms_(k);
  if (t.alpha.is_zero())
    throw DomainError("partial numerator at level " + std::to_string(k) + " is zero");
  return t;
}

std::vector<Convergent> convergents(const CFTermSeq& cf, std::size_t count) {
  std::vector<Convergent> out;
  out.reserve(count + 1);
  Rational p_prev = 1, q_prev = 0;
  Rational p = cf.beta0(), q = 1;
  out.push_back({0, p, q});
  for (std::size_t k = 1; k <= count; ++k) {
    const TermPair t = cf.term(k);
    Rational p_next = t.beta * p + t.alpha * p_prev;
    Rational q_next = t.beta * q + t.alpha * q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    out.push_back({k, p, q});
  }
  return out;
}

namespace {

long backward_working_bits(long bits, std::size_t depth) {
  // Each level costs at most a couple of roundings.
  return bits + 24 + static_cast<long>(std::bit_width(depth));
}

}  // namespace

HPFloat eval_backward(const CFTermSeq& cf, std::size_t depth, long bits) {
  if (depth == 0) throw DomainError("backward evaluation needs depth >= 1");
  const long w = backward_working_bits(bits, depth);
  HPFloat tail(w);
  HPFloat denom(w);
  for (std::size_t k = depth; k >= 1; --k) {
    const TermPair t = cf.term(k);
    denom = HPFloat(t.beta, w);
    denom += tail;
    if (denom.is_zero())
      throw EvaluationError(
          "zero tail denominator at level " + std::to_string(k) + " (degenerate truncation)", k);
    tail = HPFloat(t.alpha, w);
    tail /= denom;
  }
  tail += HPFloat(cf.beta0(), w);
  return tail.rounded(bits);
}

HPFloat front_value(const CFTermSeq& cf, long bits) {
  const FrontFactor& f = cf.front();
  if (const auto* r = std::get_if<Rational>(&f)) return HPFloat(*r, bits);
  if (const auto* s = std::get_if<SqrtOf>(&f)) return sqrt_hp(HPFloat(s->radicand, bits + 8)).rounded(bits);
  return HPFloat(1, bits);
}

HPFloat apply_front(const CFTermSeq& cf, const HPFloat& raw) {
  if (std::holds_alternative<std::monostate>(cf.front())) return raw;
  const long bits = raw.precision();
  return (raw.rounded(bits + 8) * front_value(cf, bits + 8)).rounded(bits);
}

HPFloat eval_value(const CFTermSeq& cf, std::size_t depth, long bits) {
  return apply_front(cf, eval_backward(cf, depth, bits + 8)).rounded(bits);
}

bool determinant_identity_check(std::span<const Convergent> convs, const CFTermSeq& cf) {
  if (convs.size() < 2) return true;
  // Running product alpha_1 ... alpha_k, started at the first pair's index.
  const std::size_t first = convs.front().k;
  Rational product = 1;
  for (std::size_t j = 1; j <= first; ++j) product *= cf.term(j).alpha;
  for (std::size_t i = 1; i < convs.size(); ++i) {
    const Convergent& cur = convs[i];
    const Convergent& prev = convs[i - 1];
    if (cur.k != prev.k + 1) return false;
    product *= cf.term(cur.k).alpha;
    const Rational lhs = cur.p * prev.q - prev.p * cur.q;
    const Rational rhs = (cur.k % 2 == 1) ? product : -product;
    if (lhs != rhs) return false;
  }
  return true;
}

std::vector<HPFloat> eval_batch(std::span<const EvalRequest> requests, long bits, Execution exec) {
  const auto n = static_cast<std::ptrdiff_t>(requests.size());
  std::vector<HPFloat> out(requests.size(), HPFloat(bits));
  std::vector<std::exception_ptr> errors(requests.size());

  auto evaluate_one = [&](std::ptrdiff_t i) {
    try {
      out[i] = eval_value(*requests[i].cf, requests[i].depth, bits);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) evaluate_one(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) evaluate_one(i);
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace ecf
