#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Self-check suite behind `ecf verify`: the numbered acceptance criteria
// followed by library invariants, each checked against the reference
// functions and the quadrature oracle.

namespace ecf {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool empirical = false;  ///< the checked identity is observed, not derived
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  bool deep = false;  ///< larger random samples
  std::uint64_t seed = 20240601;
};

/// Number of numbered acceptance criteria; invariants follow them.
inline constexpr int kAcceptanceCriteria = 11;

/// Every check, in id order. Exceptions inside a check become failures.
std::vector<CheckResult> run_verify(const VerifyOptions& options = {});

/// A single check by id; throws DomainError for an unknown id.
CheckResult run_check(int id, const VerifyOptions& options = {});

/// Ids accepted by run_check.
std::vector<int> check_ids();

}  // namespace ecf
