#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dbox {

enum class ErrorCode {
  InvalidArgument,
  SpaceMismatch,
  NotDichotomous,
  NotProper,
  BudgetExceeded,
  NotAPartition,
  UnionsOverlap,
  EvenFactor,
  InvalidCode,
  GSumExceeds2d,
  CriteriaDisagree,
  NoWitness,
  InconsistentOrientation,
  NotUnique,
  Incomplete,
  WrongCount,
  CoordOutOfRange,
  NotTwoExtremal,
  TheoremViolation,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::NotDichotomous: return "NotDichotomous";
    case ErrorCode::NotProper: return "NotProper";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotAPartition: return "NotAPartition";
    case ErrorCode::UnionsOverlap: return "UnionsOverlap";
    case ErrorCode::EvenFactor: return "EvenFactor";
    case ErrorCode::InvalidCode: return "InvalidCode";
    case ErrorCode::GSumExceeds2d: return "GSumExceeds2d";
    case ErrorCode::CriteriaDisagree: return "CriteriaDisagree";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorCode::NotUnique: return "NotUnique";
    case ErrorCode::Incomplete: return "Incomplete";
    case ErrorCode::WrongCount: return "WrongCount";
    case ErrorCode::CoordOutOfRange: return "CoordOutOfRange";
    case ErrorCode::NotTwoExtremal: return "NotTwoExtremal";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Domain error carrying a machine-readable code and, where meaningful,
/// the positions of the offending items (e.g. the two boxes of a
/// non-dichotomous pair).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, std::vector<std::size_t> where = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(std::move(detail)),
        where_(std::move(where)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::vector<std::size_t>& where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::vector<std::size_t> where_;
};

/// Cap on exhaustive enumeration, expressed as a power of two.
struct Budget {
  int bits = 24;
};

inline void require_budget(int needed_bits, Budget budget, std::string_view what) {
  if (needed_bits > budget.bits) {
    throw Error(ErrorCode::BudgetExceeded,
                std::string(what) + " needs 2^" + std::to_string(needed_bits) +
                    " steps, budget is 2^" + std::to_string(budget.bits));
  }
}

}  // namespace dbox
