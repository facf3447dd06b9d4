#include "ecf/quadrature.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>

namespace ecf {

namespace {

using Integrand = std::function<HPFloat(const HPFloat&)>;

struct Legendre {
  HPFloat p;   // P_order(x)
  HPFloat dp;  // P'_order(x)
};

Legendre legendre(unsigned order, const HPFloat& x) {
  const long w = x.precision();
  HPFloat prev(1, w), cur = x;
  for (unsigned j = 2; j <= order; ++j) {
    HPFloat next = (HPFloat(2 * j - 1, w) * x * cur - HPFloat(j - 1, w) * prev) / HPFloat(j, w);
    prev = std::move(cur);
    cur = std::move(next);
  }
  HPFloat dp = HPFloat(order, w) * (x * cur - prev) / (x * x - HPFloat(1, w));
  return {std::move(cur), std::move(dp)};
}

struct Panels {
  HPFloat lo, hi;
  std::size_t count;
};

HPFloat panel_sum(const Integrand& f, const GaussRule& rule, const Panels& p, std::size_t i) {
  const long w = p.lo.precision();
  const HPFloat width = (p.hi - p.lo) / HPFloat(static_cast<long>(p.count), w);
  const HPFloat left = p.lo + width * HPFloat(static_cast<long>(i), w);
  const HPFloat half = width.scaled(-1);
  const HPFloat mid = left + half;
  HPFloat sum(w);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) sum += rule.weights[j] * f(mid + half * rule.nodes[j]);
  return sum * half;
}

HPFloat level_sum(const Integrand& f, const GaussRule& rule, const Panels& p, Execution exec) {
  const long w = p.lo.precision();
  std::vector<HPFloat> sums(p.count, HPFloat(w));
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < p.count; ++i) sums[i] = panel_sum(f, rule, p, i);
  } else {
    std::vector<std::exception_ptr> errors(p.count);
    const long count = static_cast<long>(p.count);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
      try {
        sums[i] = panel_sum(f, rule, p, static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  // Fixed left-to-right order keeps the result independent of the schedule.
  HPFloat total(w);
  for (const HPFloat& s : sums) total += s;
  return total;
}

HPFloat power(const HPFloat& x, unsigned n) {
  HPFloat out(1, x.precision());
  for (unsigned k = 0; k < n; ++k) out *= x;
  return out;
}

}  // namespace

GaussRule gauss_legendre(unsigned order, long bits) {
  if (order < 2) throw DomainError("Gauss-Legendre rule needs at least 2 points");
  const long w = bits + 32;
  std::vector<HPFloat> pos, pos_w;
  const unsigned half = order / 2;
  for (unsigned i = 1; i <= half; ++i) {
    HPFloat x(w);
    mpfr_set_d(x.get(), std::cos(std::numbers::pi * (i - 0.25) / (order + 0.5)), MPFR_RNDN);
    const HPFloat stop = HPFloat::power_of_two(-(w - 8), w);
    for (int it = 0; it < 200; ++it) {
      const Legendre l = legendre(order, x);
      const HPFloat dx = l.p / l.dp;
      x -= dx;
      if (dx.abs() <= stop) break;
    }
    const Legendre l = legendre(order, x);
    pos_w.push_back((HPFloat(2, w) / ((HPFloat(1, w) - x * x) * l.dp * l.dp)).rounded(bits));
    pos.push_back(x.rounded(bits));
  }
  GaussRule rule;
  rule.nodes = pos;
  rule.weights = pos_w;
  if (order % 2 == 1) {
    const HPFloat zero(w);
    const Legendre l = legendre(order, zero);
    rule.nodes.push_back(HPFloat(bits));
    rule.weights.push_back((HPFloat(2, w) / (l.dp * l.dp)).rounded(bits));
  }
  for (unsigned i = half; i-- > 0;) {
    rule.nodes.push_back(-pos[i]);
    rule.weights.push_back(pos_w[i]);
  }
  return rule;
}

QuadratureResult quad_integral(unsigned n, const QuadraticForm& form, const UpperLimit& x,
                               const HPFloat& tol, const QuadratureOptions& options) {
  if (tol.sign() <= 0) throw DomainError("quadrature tolerance must be positive");
  const long w = std::max(tol.precision(), 64 - tol.exponent()) + 32;

  bool at_root = std::holds_alternative<AtRoot>(x);
  Rational upper;
  if (!at_root) {
    upper = std::get<Rational>(x);
    if (!form.in_domain(upper))
      throw DomainError("upper limit " + upper.to_string() + " is outside [0, x*]");
    if (upper.is_zero()) return {HPFloat(w), HPFloat(w), 0};
    at_root = form.radicand(upper).is_zero();
  }
  if (at_root && !options.substitute)
    throw DomainError("the plain integrand is singular at the root; use the substitution");

  const HPFloat a(form.a(), w), b(form.b(), w), c(form.c(), w);
  Integrand f;
  Panels panels{HPFloat(w), HPFloat(1, w), 1};
  if (options.substitute) {
    // x = x*(1 - u^2): the integrand becomes 2 sqrt(x*) x^n / sqrt(2b - c(x + x*)).
    const HPFloat disc = b * b - a * a * c;
    const HPFloat xstar = a * a / (b + sqrt_hp(disc));
    const HPFloat scale = sqrt_hp(xstar).scaled(1);
    const HPFloat two_b = b.scaled(1);
    f = [=](const HPFloat& u) {
      const HPFloat t = xstar - xstar * u * u;
      return scale * power(t, n) / sqrt_hp(two_b - c * (t + xstar));
    };
    if (!at_root) panels.lo = sqrt_hp(HPFloat(1, w) - HPFloat(upper, w) / xstar);
  } else {
    f = [=](const HPFloat& t) {
      return power(t, n) / sqrt_hp(a * a - (b * t).scaled(1) + c * t * t);
    };
    panels.hi = HPFloat(upper, w);
  }

  const GaussRule rule = gauss_legendre(options.order, w);
  const HPFloat floor_scale = HPFloat::power_of_two(-(w - 24), w);
  HPFloat prev = level_sum(f, rule, panels, options.exec);
  std::size_t evaluations = rule.nodes.size();
  QuadratureResult best{prev, HPFloat(w), evaluations};
  for (unsigned level = 1; level <= options.max_level; ++level) {
    panels.count *= 2;
    HPFloat cur = level_sum(f, rule, panels, options.exec);
    evaluations += panels.count * rule.nodes.size();
    HPFloat est = (cur - prev).abs() * HPFloat(4, w) + cur.abs() * floor_scale;
    best = {cur, est, evaluations};
    if (est <= tol) return best;
    prev = std::move(cur);
  }
  throw QuadratureError("quadrature did not reach the tolerance", std::move(best));
}

}  // namespace ecf
