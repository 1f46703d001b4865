#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperlace/polycore/scalar.hpp"

namespace hyperlace::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double time_limit = 0;  // 0 = none
};

struct Options {
  /// Scales the Jacobi side of the identity check; anything but 1 must make
  /// criterion 1 fail (used as a mutation test).
  Rational jacobi_normalization{1};
  /// Criteria to run; empty runs all ten.
  std::vector<int> only;
};

/// Runs the acceptance criteria in order. Exceptions inside a criterion are
/// reported as failures, never propagated.
std::vector<CriterionResult> run(const Options& options = {});

/// "[PASS] 3 name: detail (1.23 s)"
std::string format_line(const CriterionResult& r);

}  // namespace hyperlace::acceptance
