/**
 * \file validation.hpp
 * \brief Violation reporting and error types shared by all meridian modules.
 *
 * Validation is two-layered throughout the library:
 *  - structural breakage (out-of-range indices, duplicate ranks, inconsistent
 *    sizes) throws one of the exception types below, because no meaningful
 *    report can be produced from a malformed value;
 *  - violations of the numbered construction conditions are collected into a
 *    ValidationReport, one issue per violated clause, so that a caller can see
 *    everything that is wrong at once.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace meridian {

/// One violated condition. `code` is a stable identifier such as "2.3.1(4)",
/// "winding-ge-2" or "C-must-intersect"; `piece` is the index of the offending
/// piece within an assembly, or -1 for assembly-level conditions; `detail` is
/// a short human-readable explanation.
struct ValidationIssue {
  std::string code;
  int piece = -1;
  std::string detail;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

/// All violations found in one value. Empty means valid.
using ValidationReport = std::vector<ValidationIssue>;

/// True iff `code` appears among the issues.
inline bool has_code(const ValidationReport& report, const std::string& code) {
  for (const ValidationIssue& issue : report)
    if (issue.code == code) return true;
  return false;
}

/// Thrown by canonicalize(0, 0): the zero vector names no curve.
class ZeroVectorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a piece is structurally broken (position out of range,
/// duplicate or non-consecutive height ranks, more than two subarcs, ...).
class MalformedPiece : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an assembly is structurally broken (piece/slope count mismatch,
/// inconsistent sheet count r, missing offsets, ...).
class MalformedAssembly : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by the cell-complex oracle when an instance exceeds its cell budget.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by operations whose precondition is a clean validation report
/// (surface invariants, the cell-complex oracle) when handed an assembly
/// that still has violations.
class InvalidAssembly : public std::invalid_argument {
 public:
  InvalidAssembly(const std::string& what, ValidationReport report)
      : std::invalid_argument(what), report(std::move(report)) {}

  ValidationReport report;
};

/// Thrown by the trace recognizer and the descriptor/trace readers on input
/// that does not match the expected grammar.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace meridian
