#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ecf/cf_core.hpp"
#include "ecf/hpfloat.hpp"
#include "ecf/quadratic_form.hpp"
#include "ecf/rational.hpp"

// The concrete continued-fraction families: logarithms, arctangents, the
// ratio of consecutive integrals of x^n / sqrt(a^2 - 2bx + cx^2), the
// completed fraction for a / Delta, Brouncker's fraction and the degenerate
// fraction whose value is zero.
//
// Throughout, m = sqrt(msq). When msq is the square of a rational, m is
// folded into the first partial numerator and the convergents carry it, so
// they reproduce the classical tables term for term. Otherwise the term
// sequence is stripped of m and carries a SqrtOf front factor.

namespace ecf {

/// ln((n+m)/(n-m)) = 2m / (n - m^2/(3n - 4m^2/(5n - 9m^2/(7n - ...)))).
/// Requires n > 0 and 0 < msq < n^2.
CFTermSeq log_cf_spec(const Rational& n, const Rational& msq);

/// 2m / ln((n+m)/(n-m)) = n - m^2/(3n - 4m^2/(5n - ...)); same domain.
CFTermSeq log_reciprocal_cf_spec(const Rational& n, const Rational& msq);

/// ln i via n = i + 1, m = i - 1. Requires i >= 2.
CFTermSeq log_of_integer(const Integer& i);

/// ln(p/q) via n = p + q, m = p - q. Requires p > q >= 1.
CFTermSeq log_of_fraction(const Integer& p, const Integer& q);

/// arctan(m/n) = m / (n + m^2/(3n + 4m^2/(5n + ...))). Requires n > 0, msq > 0.
CFTermSeq atan_cf_spec(const Rational& n, const Rational& msq);

/// N a^2 I_{N-1} / I_N = (2N+1)b - (N+1)^2 a^2 c / ((2N+3)b - (N+2)^2 a^2 c / ...),
/// where I_k is the integral of x^k / sqrt(a^2 - 2bx + cx^2) from 0 to x*.
/// Requires N >= 1.
CFTermSeq ratio_cf_spec(unsigned nexp, const QuadraticForm& form);

/// a / Delta = b - a^2 c / (3b - 4 a^2 c / (5b - 9 a^2 c / ...)).
CFTermSeq completed_cf_spec(const QuadraticForm& form);

struct DepthValue {
  HPFloat value;
  std::size_t depth;
};

/// completed_cf_spec(form) evaluated tail-first at `depth`.
DepthValue completed_cf_value(const QuadraticForm& form, std::size_t depth, long bits);

/// 1 / (2 + 9 / (2 + 25 / (2 + 49 / ...))).
CFTermSeq brouncker_cf_spec();

/// 1 - 1 / (3 - 4 / (5 - 9 / (7 - ...))), whose limit is zero.
CFTermSeq degenerate_cf_spec();

/// Truncated tail T_k = (2k+1) - (k+1)^2 / T_{k+1} of the degenerate fraction,
/// seeded at level k + depth with its bare partial denominator. The limit
/// of T_k is k.
HPFloat degenerate_tail(std::size_t k, std::size_t depth, long bits);

/// value(Conv k) - value(Conv k-1) of log_cf_spec / atan_cf_spec(n, msq),
/// from the closed form
///   lead * ((k-1)!)^2 * msq^(k-1) / (q_{k-1} q_k),
/// with lead = 2m (log) or m (atan) when m is rational and 2 or 1 when it is
/// stripped, positive for the log family and of sign (-1)^(k-1) for atan.
/// For a stripped m, multiply by m for the difference of the values.
/// Requires k >= 1 and kind LogNM or AtanNM.
Rational difference_closed_form(std::size_t k, const Rational& n, const Rational& msq,
                                FamilyKind kind);

/// Smallest depth k >= 1 whose next convergent difference (closed form, front
/// factor included) is below `tol`, confirmed by evaluating depths k and k+1.
/// Only for LogNM and AtanNM term sequences.
std::size_t auto_terms(const CFTermSeq& cf, const HPFloat& tol);

/// A priori error estimate for evaluating `cf` (LogNM or AtanNM) at depth k:
/// the magnitude of the next convergent difference, front factor included.
HPFloat next_difference_magnitude(const CFTermSeq& cf, std::size_t k, long bits);

enum class PiMethod { Atan11, Sqrt3, MachinSplit, Brouncker };

std::optional<PiMethod> parse_pi_method(std::string_view name);
std::string_view to_string(PiMethod method);

struct PiEstimate {
  HPFloat value;
  HPFloat error_est;
  std::vector<std::size_t> depths;  ///< one entry per continued fraction used
};

/// pi from the arctangent fractions (4 arctan 1, 6 arctan(1/sqrt 3),
/// 4 (arctan 1/2 + arctan 1/3)) or from Brouncker's fraction, either at a
/// fixed depth or at depths chosen for an absolute tolerance.
PiEstimate pi_by_fraction(PiMethod method, std::optional<std::size_t> terms,
                          std::optional<HPFloat> tol, long bits);

}  // namespace ecf
