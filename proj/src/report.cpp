#include "liegeo/report.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace liegeo {

double active_tolerance() {
  if (const char* env = std::getenv("LIEGEO_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && std::isfinite(v) && v > 0.0) return v;
  }
  return kDefaultTol;
}

std::string format_real(double v) {
  if (!std::isfinite(v)) return std::to_string(v);
  for (int q = 1; q <= 64; ++q) {
    const double scaled = v * q;
    const double p = std::round(scaled);
    if (std::abs(scaled - p) <= 1e-12 * q && std::abs(p) < 1e15) {
      const long long pi = static_cast<long long>(p);
      if (q == 1) return std::to_string(pi);
      const long long g = std::gcd(std::abs(pi), static_cast<long long>(q));
      const long long num = pi / g, den = q / g;
      if (den == 1) return std::to_string(num);
      return std::to_string(num) + "/" + std::to_string(den);
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

nlohmann::ordered_json make_report(const std::string& kind,
                                   nlohmann::ordered_json payload,
                                   double tol) {
  nlohmann::ordered_json rep;
  rep["kind"] = kind;
  rep["tool_version"] = kToolVersion;
  rep["tolerance"] = tol;
  rep["payload"] = std::move(payload);
  return rep;
}

nlohmann::ordered_json validation_to_json(const ValidationReport& vr) {
  nlohmann::ordered_json j;
  j["passed"] = vr.passed;
  j["jacobi_defect"] = vr.jacobi_defect;
  j["derived_dim"] = vr.derived_dim;
  j["derived_is_b01_span"] = vr.derived_is_b01_span;
  j["derived_abelian"] = vr.derived_abelian;
  j["messages"] = vr.messages;
  return j;
}

nlohmann::ordered_json verify_to_json(const DeviationReport& dr) {
  nlohmann::ordered_json j;
  j["passed"] = dr.passed;
  j["max_abs_deviation"] = dr.max_abs_deviation;
  j["worst_location"] = dr.worst_location;
  j["validation"] = validation_to_json(dr.validation);
  auto checks = nlohmann::ordered_json::array();
  for (const CheckResult& c : dr.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["deviation"] = c.deviation;
    if (!c.worst_location.empty()) jc["worst_location"] = c.worst_location;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  auto known = nlohmann::ordered_json::array();
  for (const CheckResult& c : dr.known_discrepancies) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["deviation"] = c.deviation;
    known.push_back(std::move(jc));
  }
  j["known_discrepancies"] = std::move(known);
  return j;
}

}  // namespace liegeo
