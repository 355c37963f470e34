#pragma once

#include <string>
#include <vector>

#include "liegeo/structure.hpp"

namespace liegeo {

struct CheckResult {
  std::string name;
  double deviation = 0.0;
  std::string worst_location;
};

// Outcome of running every closed-form result against the brute-force
// oracle on one algebra.  known_discrepancies lists tabulated values that
// deliberately deviate from the derived/brute quantities (they are
// reported, not counted against `passed`).
struct DeviationReport {
  bool passed = false;
  double tolerance = kDefaultTol;
  double max_abs_deviation = 0.0;
  std::string worst_location;
  ValidationReport validation;
  std::vector<CheckResult> checks;
  std::vector<CheckResult> known_discrepancies;
};

DeviationReport full_verify(const StructureConstants& sc,
                            double tol = kDefaultTol);

}  // namespace liegeo
