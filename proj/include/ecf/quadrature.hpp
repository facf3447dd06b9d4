#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ecf/cf_core.hpp"
#include "ecf/errors.hpp"
#include "ecf/hpfloat.hpp"
#include "ecf/integral.hpp"
#include "ecf/quadratic_form.hpp"

// Composite Gauss-Legendre quadrature of x^n / sqrt(a^2 - 2bx + cx^2),
// independent of the closed forms in integral.hpp.

namespace ecf {

struct QuadratureResult {
  HPFloat value;
  HPFloat est_error;        ///< 4 |S_L - S_{L-1}| plus a rounding floor
  std::size_t evaluations;  ///< integrand calls over all levels
};

struct QuadratureOptions {
  /// Integrate in u with x = x*(1 - u^2). Required at the root, where the
  /// plain integrand is singular.
  bool substitute = true;
  Execution exec = Execution::Parallel;
  unsigned order = 24;      ///< Gauss-Legendre points per panel
  unsigned max_level = 12;  ///< at most 2^max_level panels
};

/// Tolerance not met; carries the last estimate.
class QuadratureError : public ConvergenceError {
 public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : ConvergenceError(what), best_(std::move(best)) {}
  const QuadratureResult& best() const { return best_; }

 private:
  QuadratureResult best_;
};

/// Integral from 0 to x with absolute error at most tol. Panels double per
/// level until 4 |S_L - S_{L-1}| <= tol. Serial and parallel execution give
/// bit-identical results.
QuadratureResult quad_integral(unsigned n, const QuadraticForm& form, const UpperLimit& x,
                               const HPFloat& tol, const QuadratureOptions& options = {});

/// Gauss-Legendre nodes and weights on [-1, 1], nodes in decreasing order.
struct GaussRule {
  std::vector<HPFloat> nodes;
  std::vector<HPFloat> weights;
};
GaussRule gauss_legendre(unsigned order, long bits);

}  // namespace ecf
