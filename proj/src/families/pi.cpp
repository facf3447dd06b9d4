#include <array>

#include "ecf/errors.hpp"
#include "ecf/families.hpp"

namespace ecf {

namespace {

constexpr std::size_t kBrounckerMaxDepth = std::size_t{1} << 20;

struct Component {
  CFTermSeq cf;
  long weight;  // pi = sum of weight * value
};

std::vector<Component> components(PiMethod method) {
  switch (method) {
    case PiMethod::Atan11:
      return {{atan_cf_spec(1, 1), 4}};
    case PiMethod::Sqrt3:
      // pi / 6 = arctan(sqrt(3) / 3)
      return {{atan_cf_spec(3, 3), 6}};
    case PiMethod::MachinSplit:
      return {{atan_cf_spec(2, 1), 4}, {atan_cf_spec(3, 1), 4}};
    case PiMethod::Brouncker:
      break;
  }
  return {};
}

// 4 / (1 + B) with B Brouncker's fraction at `depth`.
HPFloat brouncker_pi(std::size_t depth, long bits) {
  const long w = bits + 16;
  const HPFloat b = eval_backward(brouncker_cf_spec(), depth, w);
  return (HPFloat(4, w) / (HPFloat(1, w) + b)).rounded(bits);
}

PiEstimate brouncker_estimate(std::optional<std::size_t> terms, std::optional<HPFloat> tol,
                              long bits) {
  // Successive truncations bracket the limit, so the gap between depth d
  // and d + 1 bounds the error of either.
  auto at = [bits](std::size_t d) {
    HPFloat v = brouncker_pi(d, bits);
    HPFloat gap = (brouncker_pi(d + 1, bits) - v).abs();
    return PiEstimate{std::move(v), std::move(gap), {d}};
  };
  if (terms) return at(*terms);
  for (std::size_t d = 1; d <= kBrounckerMaxDepth; d *= 2) {
    PiEstimate e = at(d);
    if (e.error_est < *tol) return e;
  }
  throw ConvergenceError("Brouncker's fraction converges too slowly for this tolerance");
}

}  // namespace

std::optional<PiMethod> parse_pi_method(std::string_view name) {
  if (name == "atan11") return PiMethod::Atan11;
  if (name == "sqrt3") return PiMethod::Sqrt3;
  if (name == "machin-split") return PiMethod::MachinSplit;
  if (name == "brouncker") return PiMethod::Brouncker;
  return std::nullopt;
}

std::string_view to_string(PiMethod method) {
  switch (method) {
    case PiMethod::Atan11: return "atan11";
    case PiMethod::Sqrt3: return "sqrt3";
    case PiMethod::MachinSplit: return "machin-split";
    case PiMethod::Brouncker: return "brouncker";
  }
  return "?";
}

PiEstimate pi_by_fraction(PiMethod method, std::optional<std::size_t> terms,
                          std::optional<HPFloat> tol, long bits) {
  if (terms.has_value() == tol.has_value())
    throw DomainError("pi_by_fraction needs exactly one of terms and tol");
  if (terms && *terms == 0) throw DomainError("depth must be at least 1");
  if (method == PiMethod::Brouncker) return brouncker_estimate(terms, tol, bits);

  const std::vector<Component> parts = components(method);
  const long w = bits + 16;
  PiEstimate out{HPFloat(w), HPFloat(w), {}};
  for (const Component& c : parts) {
    std::size_t depth = 0;
    if (terms) {
      depth = *terms;
    } else {
      // Split the budget evenly over the weighted components.
      const HPFloat share =
          *tol / HPFloat(c.weight * static_cast<long>(parts.size()), tol->precision());
      depth = auto_terms(c.cf, share);
    }
    const HPFloat weight(c.weight, w);
    out.value += weight * eval_value(c.cf, depth, w);
    out.error_est += weight * next_difference_magnitude(c.cf, depth, w);
    out.depths.push_back(depth);
  }
  out.value = out.value.rounded(bits);
  out.error_est = out.error_est.rounded(bits);
  return out;
}

}  // namespace ecf
