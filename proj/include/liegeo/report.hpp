#pragma once

#include <string>

#include <json.hpp>

#include "liegeo/structure.hpp"
#include "liegeo/verify.hpp"

namespace liegeo {

inline constexpr const char* kToolVersion = "liegeo 1.0.0";

// Active tolerance: LIEGEO_TOL when set to a positive real, kDefaultTol
// otherwise.
double active_tolerance();

// Formats a real for humans: exact small fractions (denominator <= 64) print
// as "p/q", everything else with 17 significant digits.
std::string format_real(double v);

// Wraps a payload in the common report envelope:
//   {"kind": ..., "tool_version": ..., "tolerance": ..., "payload": ...}
nlohmann::ordered_json make_report(const std::string& kind,
                                   nlohmann::ordered_json payload,
                                   double tol);

nlohmann::ordered_json validation_to_json(const ValidationReport& vr);
nlohmann::ordered_json verify_to_json(const DeviationReport& dr);

}  // namespace liegeo
