#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ecf/hpfloat.hpp"
#include "ecf/rational.hpp"

namespace ecf {

/// Partial numerator alpha_k and partial denominator beta_k of one level.
struct TermPair {
  Rational alpha;
  Rational beta;
};

/// sqrt(radicand), kept symbolic so the term sequence stays rational.
struct SqrtOf {
  Rational radicand;
};

/// Scalar multiplier applied to the continued fraction after evaluation.
/// monostate means no multiplier.
using FrontFactor = std::variant<std::monostate, Rational, SqrtOf>;

/// Which closed-form family a term sequence came from. Used by routines
/// that exploit the family's known structure (difference law, term-count
/// selection); generic machinery ignores it.
enum class FamilyKind {
  LogNM,            ///< 2m / (n - m^2 / (3n - 4m^2 / (5n - ...)))  = ln((n+m)/(n-m))
  LogReciprocal,    ///< n - m^2 / (3n - 4m^2 / (5n - ...))          = 2m / ln((n+m)/(n-m))
  AtanNM,           ///< m / (n + m^2 / (3n + 4m^2 / (5n + ...)))  = arctan(m/n)
  RatioGeneralN,    ///< (2N+1)b - (N+1)^2 a^2 c / ((2N+3)b - ...)
  CompletedADelta,  ///< b - a^2 c / (3b - 4 a^2 c / (5b - ...))      = a / Delta
  Brouncker,        ///< 1 / (2 + 9 / (2 + 25 / (2 + ...)))
  DegenerateZero,   ///< 1 - 1 / (3 - 4 / (5 - 9 / (7 - ...)))
  Custom,
};

struct FamilyTag {
  FamilyKind kind = FamilyKind::Custom;
  Rational n;    ///< n for the log/atan families
  Rational msq;  ///< m^2 for the log/atan families
};

/// A continued fraction beta0 + alpha1 / (beta1 + alpha2 / (beta2 + ...)).
///
/// Terms come from an index-based generator, so any level can be produced
/// without materialising the prefix. The generator must be pure; it is
/// called concurrently by the batch evaluators.
class CFTermSeq {
 public:
  using Generator = std::function<TermPair(std::size_t k)>;

  CFTermSeq(Rational beta0, Generator terms, FrontFactor front = {}, FamilyTag family = {});

  const Rational& beta0() const { return beta0_; }

  /// Terms of level k >= 1. Throws DomainError if the generator produces a
  /// zero partial numerator or k == 0.
  TermPair term(std::size_t k) const;

  const FrontFactor& front() const { return front_; }
  const FamilyTag& family() const { return family_; }
  bool has_irrational_front() const { return std::holds_alternative<SqrtOf>(front_); }

 private:
  Rational beta0_;
  Generator terms_;
  FrontFactor front_;
  FamilyTag family_;
};

/// Truncation of a continued fraction at level k, as the unreduced pair
/// produced by the three-term recurrence.
struct Convergent {
  std::size_t k = 0;
  Rational p;
  Rational q;

  /// p / q in lowest terms.
  Rational value() const { return p / q; }
};

/// Convergents 0..count by the forward recurrence
///   p_k = beta_k p_{k-1} + alpha_k p_{k-2}, and likewise for q,
/// seeded with p_{-1} = 1, q_{-1} = 0, p_0 = beta0, q_0 = 1. Entries are not
/// reduced. The front factor is not applied.
std::vector<Convergent> convergents(const CFTermSeq& cf, std::size_t count);

/// Tail-first evaluation of the truncation at `depth` (front factor not
/// applied). Throws EvaluationError naming the level whose denominator
/// beta_k + tail vanished.
HPFloat eval_backward(const CFTermSeq& cf, std::size_t depth, long bits);

/// Multiplies an evaluated continued fraction by its front factor.
HPFloat apply_front(const CFTermSeq& cf, const HPFloat& raw);

/// eval_backward followed by apply_front.
HPFloat eval_value(const CFTermSeq& cf, std::size_t depth, long bits);

/// The front factor as a number; 1 when there is none.
HPFloat front_value(const CFTermSeq& cf, long bits);

/// True iff p_k q_{k-1} - p_{k-1} q_k = (-1)^(k-1) alpha_1 ... alpha_k holds
/// exactly for every consecutive pair in `convs`. `convs` must be a
/// contiguous run produced by convergents(cf, ...).
bool determinant_identity_check(std::span<const Convergent> convs, const CFTermSeq& cf);

/// One backward evaluation request for the batch kernels.
struct EvalRequest {
  const CFTermSeq* cf = nullptr;
  std::size_t depth = 1;
};

enum class Execution { Serial, Parallel };

/// Evaluates every request with eval_value. The parallel path distributes
/// requests over OpenMP threads; each result depends only on its own
/// request, so both paths return bit-identical vectors.
std::vector<HPFloat> eval_batch(std::span<const EvalRequest> requests, long bits,
                                Execution exec = Execution::Parallel);

}  // namespace ecf
