#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ecf::cli {

enum class RecordKind { Value, ConvergentRow, DiffRow, VerifyResult };

/// One line of command output. Absent fields are omitted from JSON and left
/// empty in CSV.
struct OutputRecord {
  RecordKind kind = RecordKind::Value;
  std::optional<long> index;           ///< depth k, exponent n or check id
  std::optional<std::string> label;    ///< what the record is about
  std::optional<std::string> exact;    ///< "p/q" as produced, unreduced
  std::optional<std::string> reduced;  ///< "p/q" in lowest terms
  std::optional<std::string> front;    ///< factor the exact value is to be multiplied by
  std::optional<std::string> decimal;
  std::optional<std::string> error_est;
  std::optional<bool> passed;
  std::optional<std::string> detail;
};

std::string to_string(RecordKind kind);

/// Runs one command line (program name excluded). Records go to `out`,
/// diagnostics to `err`. Returns 0 on success, 2 on a usage error and 1 on
/// a domain, evaluation or convergence error or a failed verification.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ecf::cli
