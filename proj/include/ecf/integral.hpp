#pragma once

#include <variant>
#include <vector>

#include "ecf/hpfloat.hpp"
#include "ecf/quadratic_form.hpp"
#include "ecf/rational.hpp"

// The integral family I_n(x) = integral from 0 to x of t^n / sqrt(a^2 - 2bt + ct^2).
//
// x* is the smallest positive root of the radicand; Delta = I_0(x*) and
// Pi(x) = I_0(x). At the root every I_n collapses to curlyN * Delta - frakN
// with exact rational coefficients given by the reduction recurrence
//   (n+1) c I_{n+1} = (2n+1) b I_n - n a^2 I_{n-1} + x^n R(x),
// where R(x) = sqrt(a^2 - 2bx + cx^2) and the boundary term vanishes at x*.

namespace ecf {

/// Upper limit at the root x* itself.
struct AtRoot {};

using UpperLimit = std::variant<AtRoot, Rational>;

struct Roots {
  HPFloat xstar;   ///< smallest positive root
  HPFloat xother;  ///< the other root (larger for c > 0, negative for c < 0)
};

/// Both roots of a^2 - 2bx + cx^2. x* is computed as a^2 / (b + sqrt(b^2 - a^2 c)),
/// which is the smaller root in either sign case without cancellation.
Roots roots(const QuadraticForm& form, long bits = kDefaultPrecision);

/// R(x) = sqrt(a^2 - 2bx + cx^2); throws DomainError outside [0, x*].
HPFloat radicand_root(const QuadraticForm& form, const Rational& x, long bits);

/// Delta: (1/(2f)) ln((b+af)/(b-af)) for c = f^2, (1/g) arctan(ag/b) for c = -g^2.
HPFloat delta(const QuadraticForm& form, long bits = kDefaultPrecision);

/// Pi(x) = I_0(x), normalised to vanish at x = 0.
///   c = f^2:  (1/f) ln((f^2 x - b + f R(x)) / (af - b))
///   c = -g^2: (1/g) [arcsin((g^2 x + b)/S) - arcsin(b/S)],  S = sqrt(a^2 g^2 + b^2)
/// AtRoot evaluates the same closed forms with R = 0.
HPFloat big_pi(const QuadraticForm& form, const UpperLimit& x, long bits = kDefaultPrecision);

/// I_n(x*) = curly * Delta - frak.
struct ClosedFormCoeffs {
  unsigned n = 0;
  Rational curly;
  Rational frak;
};

/// Coefficients for exponent n, exact.
ClosedFormCoeffs coeffs(unsigned n, const QuadraticForm& form);

/// Coefficients for every exponent 0..n.
std::vector<ClosedFormCoeffs> coeff_table(unsigned n, const QuadraticForm& form);

/// I_n(x*) from the closed-form coefficients. Extra working precision is
/// added until the subtraction curly * Delta - frak is resolved to `bits`.
HPFloat integral_at_root(unsigned n, const QuadraticForm& form, long bits = kDefaultPrecision);

/// I_n(x) for 0 <= x <= x* by the forward recurrence seeded with
/// I_0 = Pi(x), I_1 = (b Pi(x) + R(x) - a) / c. Working precision grows
/// until two evaluations agree to `bits`.
HPFloat integral_to(unsigned n, const QuadraticForm& form, const UpperLimit& x,
                    long bits = kDefaultPrecision);

}  // namespace ecf
