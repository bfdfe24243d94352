#pragma once

#include <string_view>

namespace lcl {

/// Outcome of a monotone fixed-point iteration.
enum class SolveStatus {
  kConverged,     ///< sup-norm step fell below the tolerance
  kDiverged,      ///< an entry exceeded the value cap: no bounded solution
  kIndeterminate, ///< iteration cap reached with neither of the above
};

inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kDiverged: return "diverged";
    case SolveStatus::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

struct SolveOptions {
  double tol = 1e-12;
  std::size_t iter_cap = 100000;
  double value_cap = 1e9;
};

}  // namespace lcl
