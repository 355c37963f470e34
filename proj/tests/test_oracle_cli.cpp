#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fuzz_families.hpp"
#include "liegeo/cli.hpp"
#include "liegeo/kernels.hpp"
#include "liegeo/oracle.hpp"
#include "liegeo/report.hpp"
#include "liegeo/structure.hpp"

using namespace liegeo;

namespace {

struct CliResult {
  int rc = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("liegeo");
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json report_of(const CliResult& r) {
  return nlohmann::json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::filesystem::path p =
      std::filesystem::temp_directory_path() / ("liegeo_test_" + name);
  std::ofstream f(p);
  f << content;
  f.close();
  return p.string();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// paper5d with one extra complement bracket, which breaks the Jacobi
// identity against the existing a2 pairing.
std::string corrupted_fixture() {
  nlohmann::json j =
      nlohmann::json::parse(serialize_structure(catalog_entry("paper5d")));
  nlohmann::json extra;
  extra["i"] = 3;
  extra["j"] = 4;
  extra["result"] = nlohmann::json::array({{{"k", 0}, {"c", 1.0}}});
  j["brackets"].push_back(extra);
  return temp_file("corrupt.json", j.dump(2));
}

}  // namespace

TEST_CASE("null space basis is orthonormal and annihilated") {
  fuzz::Rng rng(13579);
  Eigen::MatrixXd left(5, 2), right(2, 7);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 2; ++j) left(i, j) = rng.normal();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 7; ++j) right(i, j) = rng.normal();
  const Eigen::MatrixXd a = left * right;  // rank 2 by construction
  const Eigen::MatrixXd ns = oracle::null_space(a);
  CHECK(ns.cols() == 5);
  CHECK((ns.transpose() * ns - Eigen::MatrixXd::Identity(5, 5))
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
  CHECK((a * ns).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("dense jacobi defect flags a broken bracket tensor") {
  for (const std::string& name : catalog_names())
    CHECK(oracle::jacobi_defect_dense(
              oracle::bracket_tensor(catalog_entry(name))) <= 1e-12);

  Tensor3 c = oracle::bracket_tensor(catalog_entry("paper5d"));
  c(3, 4, 0) += 1.0;
  c(4, 3, 0) -= 1.0;
  CHECK(oracle::jacobi_defect_dense(c) > 0.5);
}

TEST_CASE("curvature kernels agree bit for bit across modes") {
  const kernels::Mode before = kernels::mode();
  kernels::set_mode(kernels::Mode::Serial);
  CHECK(kernels::mode() == kernels::Mode::Serial);
  CHECK(std::string(kernels::to_string(kernels::Mode::Serial)) == "serial");
  CHECK(std::string(kernels::to_string(kernels::Mode::Parallel)) ==
        "parallel");

  for (StructureConstants& sc : fuzz::corpus(6, 9753, 4, 6)) {
    const Tensor3 c =
        oracle::doubled_bracket_tensor(oracle::bracket_tensor(sc));
    const Tensor3 conn = oracle::koszul_connection(c);
    const Tensor4 serial =
        kernels::assemble_curvature(conn, c, kernels::Mode::Serial);
    const Tensor4 parallel =
        kernels::assemble_curvature(conn, c, kernels::Mode::Parallel);
    REQUIRE(serial.data().size() == parallel.data().size());
    CHECK(std::memcmp(serial.data().data(), parallel.data().data(),
                      serial.data().size() * sizeof(double)) == 0);
  }
  kernels::set_mode(before);
}

TEST_CASE("reals print as small fractions when exact") {
  CHECK(format_real(0.25) == "1/4");
  CHECK(format_real(-0.75) == "-3/4");
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(2.0) == "2");
  CHECK(format_real(-3.0) == "-3");
  CHECK(format_real(1.0 / 3.0) == "1/3");
  CHECK(format_real(-0.5) == "-1/2");
  CHECK(format_real(1.0 / 64.0) == "1/64");
  CHECK(format_real(1e-13) == "0");

  // Denominators above 64 fall back to a 17-digit round-trippable form.
  const std::string s128 = format_real(1.0 / 128.0);
  CHECK(s128 != "1/128");
  CHECK(std::stod(s128) == 1.0 / 128.0);
  const double irr = 0.12345678901234567;
  CHECK(std::stod(format_real(irr)) == irr);
  const double big = 1.2345678901234567e18;
  CHECK(std::stod(format_real(big)) == big);
}

TEST_CASE("tolerance resolution honors the environment override") {
  const char* saved = std::getenv("LIEGEO_TOL");
  const std::string saved_value = saved ? saved : "";

  unsetenv("LIEGEO_TOL");
  CHECK(active_tolerance() == kDefaultTol);
  setenv("LIEGEO_TOL", "1e-6", 1);
  CHECK(active_tolerance() == 1e-6);
  setenv("LIEGEO_TOL", "garbage", 1);
  CHECK(active_tolerance() == kDefaultTol);
  setenv("LIEGEO_TOL", "-1e-6", 1);
  CHECK(active_tolerance() == kDefaultTol);

  if (saved)
    setenv("LIEGEO_TOL", saved_value.c_str(), 1);
  else
    unsetenv("LIEGEO_TOL");
}

TEST_CASE("report envelope carries kind, version, tolerance, payload") {
  nlohmann::ordered_json payload;
  payload["x"] = 0.25;
  const nlohmann::ordered_json rep = make_report("base", payload, 1e-9);
  CHECK(rep.at("kind") == "base");
  CHECK(rep.at("tool_version") == kToolVersion);
  CHECK(rep.at("tolerance") == 1e-9);
  CHECK(rep.at("payload").at("x") == 0.25);

  // Serialization round-trips to the identical payload.
  const std::string text = rep.dump(2);
  const nlohmann::json back = nlohmann::json::parse(text);
  CHECK(nlohmann::json::parse(back.dump(2)) == back);
  CHECK(back.at("payload").at("x").get<double>() == 0.25);
}

TEST_CASE("cli validate reports pass, fail, and parse errors") {
  CliResult r = run({"validate", "paper5d"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "PASS"));

  r = run({"validate", "paper5d", "--json"});
  CHECK(r.rc == 0);
  const nlohmann::json rep = report_of(r);
  CHECK(rep.at("kind") == "validation");
  CHECK(rep.at("tool_version") == kToolVersion);
  CHECK(rep.at("payload").at("passed") == true);
  // Emission round-trips to the identical document.
  CHECK(nlohmann::json::parse(rep.dump(2)) == rep);

  r = run({"validate", "/no/such/file.json"});
  CHECK(r.rc == 2);
  CHECK(!r.err.empty());

  const std::string bad = temp_file("bad.json", "{ not json");
  r = run({"validate", bad});
  CHECK(r.rc == 2);

  const std::string abelian =
      temp_file("abelian.json", R"({"dimension": 3, "brackets": []})");
  r = run({"validate", abelian});
  CHECK(r.rc == 1);
  CHECK(contains(r.out, "derived dimension: 0"));
  CHECK(contains(r.out, "FAIL"));
}

TEST_CASE("cli base report carries the riemannian summary") {
  CliResult r = run({"base", "paper5d", "--json"});
  CHECK(r.rc == 0);
  nlohmann::json p = report_of(r).at("payload");
  CHECK(p.at("sectional").at("e1e2").get<double>() == 0.25);
  CHECK(p.at("unimodular") == true);
  CHECK(p.at("dimension") == 5);
  const auto& ric = p.at("ricci");
  CHECK(std::abs(ric[1][1].get<double>() - 0.5) <= 1e-12);
  CHECK(std::abs(ric[2][2].get<double>() + 1.0) <= 1e-12);
  CHECK(p.at("connection").size() == 5);
  CHECK(p.at("biinvariance_obstruction").size() > 0);
  CHECK(p.at("geodesics").at("complement_defect").get<double>() <= 1e-12);

  r = run({"base", "paper5d"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "K(e1,e2) = 1/4"));
  CHECK(contains(r.out, "unimodular: yes"));

  r = run({"base", "aff4", "--json"});
  p = report_of(r).at("payload");
  CHECK(p.at("unimodular") == false);
  CHECK(p.at("unimodularity_defect").get<double>() > 0.5);

  r = run({"base", "rot4", "--json"});
  p = report_of(r).at("payload");
  CHECK(p.at("sectional").at("e1e2").get<double>() == 0.0);
  for (const auto& v : p.at("sectional").at("e1u"))
    CHECK(v.get<double>() == 0.0);
  for (const auto& v : p.at("sectional").at("e2u"))
    CHECK(v.get<double>() == 0.0);
  for (const auto& row : p.at("sectional").at("uv"))
    for (const auto& v : row) CHECK(v.get<double>() == 0.0);
}

TEST_CASE("cli tangent report lists planes, ricci entries, and relations") {
  CliResult r = run({"tangent", "paper5d", "--json"});
  CHECK(r.rc == 0);
  nlohmann::json p = report_of(r).at("payload");
  CHECK(p.at("tangent_dimension") == 10);
  CHECK(p.at("sectional").size() == 18);
  CHECK(p.at("ricci_entries").size() == 15);
  for (int id = 1; id <= 15; ++id)
    CHECK(p.at("ricci_entries")[id - 1].at("id") == id);

  bool found = false;
  for (const auto& s : p.at("sectional"))
    if (s.at("plane") == "uc,e1c") {
      found = true;
      CHECK(std::abs(s.at("per_u")[0].get<double>() + 0.5) <= 1e-12);
    }
  CHECK(found);

  const auto& rel = p.at("base_relations");
  CHECK(rel.at("has_positive") == true);
  CHECK(rel.at("has_negative") == true);
  CHECK(rel.at("has_zero") == true);
  CHECK(rel.at("max_deviation").get<double>() <= 1e-9);

  CHECK(p.at("tabulated_connection_differences").size() > 0);
  for (const auto& d : p.at("tabulated_connection_differences")) {
    CHECK(d.at("row") == "uc");
    CHECK(d.at("col") == "uc");
    CHECK(d.at("max_abs").get<double>() > 1e-9);
  }

  // rot4 has a flat base metric, yet the tangent metric keeps curvature
  // wherever a vertical lift meets the a2/b1 data; only the second
  // complement direction (the central one) is curvature-free.
  r = run({"tangent", "rot4", "--json"});
  p = report_of(r).at("payload");
  std::map<std::string, nlohmann::json> sec;
  for (const auto& s : p.at("sectional"))
    sec[s.at("plane").get<std::string>()] = s;
  CHECK(sec.at("e1c,e2c").at("value").get<double>() == 0.0);
  CHECK(sec.at("e1v,e2v").at("value").get<double>() == 0.0);
  CHECK(sec.at("e1c,e2v").at("value").get<double>() == 0.25);
  CHECK(sec.at("e1v,e2c").at("value").get<double>() == 0.25);
  CHECK(sec.at("uc,e1c").at("per_u")[0].get<double>() == 0.0);
  CHECK(sec.at("uc,e2v").at("per_u")[0].get<double>() == 0.0);
  CHECK(sec.at("uv,e1c").at("per_u")[0].get<double>() == -0.75);
  CHECK(sec.at("uv,e2c").at("per_u")[0].get<double>() == -0.75);
  CHECK(sec.at("uv,e1v").at("per_u")[0].get<double>() == 0.25);
  CHECK(sec.at("uv,e2v").at("per_u")[0].get<double>() == 0.25);
  CHECK(sec.at("uv,e1c").at("per_u")[1].get<double>() == 0.0);
  CHECK(sec.at("uv,e2v").at("per_u")[1].get<double>() == 0.0);
  CHECK(sec.at("uc,vc").at("per_uv")[0][1].get<double>() == 0.0);
  CHECK(sec.at("uv,vv").at("per_uv")[1][0].get<double>() == 0.0);
  CHECK(sec.at("uc,uv").at("per_u")[0].get<double>() == 0.0);
  std::map<int, nlohmann::json> ric;
  for (const auto& e : p.at("ricci_entries")) ric[e.at("id").get<int>()] = e;
  CHECK(ric.at(1).at("value").get<double>() == -0.5);
  CHECK(ric.at(2).at("value").get<double>() == -0.5);
  CHECK(ric.at(3).at("value").get<double>() == 0.5);
  CHECK(ric.at(4).at("value").get<double>() == 0.5);
  CHECK(ric.at(5).at("per_u")[0].get<double>() == 0.0);
  CHECK(ric.at(6).at("per_u")[0].get<double>() == -1.0);
  CHECK(ric.at(6).at("per_u")[1].get<double>() == 0.0);
  CHECK(ric.at(10).at("per_uv")[0][0].get<double>() == -1.0);
  CHECK(ric.at(7).at("value").get<double>() == 0.0);
  CHECK(ric.at(15).at("value").get<double>() == 0.0);
  // A flat base shares only zeros with its tangent planes.
  CHECK(p.at("base_relations").at("max_deviation").get<double>() == 0.0);
  CHECK(p.at("base_relations").at("has_zero").get<bool>());
  CHECK_FALSE(p.at("base_relations").at("has_positive").get<bool>());
  CHECK_FALSE(p.at("base_relations").at("has_negative").get<bool>());

  r = run({"tangent", "paper5d"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "K~(e1c,e2c) = 1/4"));
  CHECK(contains(r.out, "sign spectrum: positive negative zero"));
}

TEST_CASE("cli randers classifies drifts and reports the admissible space") {
  CliResult r =
      run({"randers", "paper5d", "--drift", "0,0,0,0,0.5", "--json"});
  CHECK(r.rc == 0);
  nlohmann::json p = report_of(r).at("payload");
  CHECK(p.at("lift") == "none");
  CHECK(p.at("douglas") == true);
  CHECK(p.at("berwald") == true);
  CHECK(p.at("oracle_berwald") == true);
  CHECK(p.at("agreement") == true);
  CHECK(p.at("berwald_drift_space").at("dimension") == 1);

  r = run({"randers", "paper5d", "--drift", "0.5,0,0,0,0", "--json"});
  CHECK(r.rc == 0);
  p = report_of(r).at("payload");
  CHECK(p.at("douglas") == false);
  CHECK(p.at("douglas_witnesses").size() > 0);

  r = run({"randers", "paper5d", "--drift", "0,0,0,0,1.0"});
  CHECK(r.rc == 1);
  CHECK(contains(r.err, "DRIFT_NORM"));

  r = run({"randers", "paper5d", "--drift", "0,0,abc,0,0"});
  CHECK(r.rc == 2);

  r = run({"randers", "paper5d", "--drift", "0,0,0.5"});
  CHECK(r.rc == 2);
  CHECK(contains(r.err, "DIMENSION_MISMATCH"));

  // The documented vertical-lift disagreement is visible end to end.
  r = run({"randers", "paper5d", "--drift", "0,0.5,0,0,0", "--lift", "v",
           "--json"});
  CHECK(r.rc == 0);
  p = report_of(r).at("payload");
  CHECK(p.at("berwald") == true);
  CHECK(p.at("oracle_berwald") == false);
  CHECK(p.at("agreement") == false);
  CHECK(std::abs(p.at("oracle_residual").get<double>() - 0.5) <= 1e-12);
}

TEST_CASE("cli flag evaluates the tabulated cases with exit-code contract") {
  CliResult r = run({"flag", "paper5d", "--drift", "0,0,0,0,0.5", "--lift",
                     "c", "--plane", "e1c,Y1v", "--flagpole", "e1c"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "flag curvature = -3/4"));
  CHECK(contains(r.out, "case 7"));

  r = run({"flag", "paper5d", "--drift", "0,0,0,0,0.5", "--lift", "c",
           "--plane", "e1c,Y1v", "--flagpole", "e1c", "--json"});
  nlohmann::json p = report_of(r).at("payload");
  CHECK(p.at("value").get<double>() == -0.75);
  CHECK(p.at("case_id") == 7);
  CHECK(p.at("plane")[0] == "e1c");
  CHECK(p.at("plane")[1] == "Y1v");

  r = run({"flag", "paper5d", "--drift", "0,0,0,0,0.5", "--lift", "c",
           "--plane", "e2c,Y1c", "--flagpole", "e2c"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "flag curvature = 1/4"));

  r = run({"flag", "paper5d", "--drift", "0,0,0,0,0.5", "--lift", "v",
           "--plane", "Y1v,Y2c", "--flagpole", "Y1v", "--json"});
  CHECK(r.rc == 0);
  p = report_of(r).at("payload");
  CHECK(p.at("case_id") == 22);
  CHECK(p.at("value").get<double>() == -0.75);

  r = run({"flag", "paper5d", "--drift", "0,0,0,0,0.5", "--lift", "c",
           "--plane", "e1c,e1c", "--flagpole", "e1c"});
  CHECK(r.rc == 3);
  CHECK(contains(r.err, "CASE_UNSUPPORTED"));

  r = run({"flag", "paper5d", "--drift", "0,0,0.5,0,0", "--lift", "c",
           "--plane", "e1c,Y1v", "--flagpole", "e1c"});
  CHECK(r.rc == 1);
  CHECK(contains(r.err, "NOT_BERWALD"));

  r = run({"flag", "paper5d", "--drift", "0,0,0,0,0.5", "--lift", "c",
           "--plane", "e1c,Y1v", "--flagpole", "e2c"});
  CHECK(r.rc == 2);
  CHECK(contains(r.err, "BAD_CASE_ARGS"));

  r = run({"flag", "paper5d", "--drift", "0,0,0,0,0.5", "--lift", "c",
           "--plane", "e1c", "--flagpole", "e1c"});
  CHECK(r.rc == 2);
}

TEST_CASE("cli verify passes on the catalog and fails on broken input") {
  for (const std::string& name : catalog_names()) {
    const CliResult r = run({"verify", name});
    CHECK_MESSAGE(r.rc == 0, "verify failed for ", name, ":\n", r.out);
    CHECK(contains(r.out, "PASS"));
  }

  CliResult r = run({"verify", "paper5d", "--json"});
  CHECK(r.rc == 0);
  const nlohmann::json rep = report_of(r);
  CHECK(rep.at("payload").at("passed") == true);
  CHECK(rep.at("payload").at("known_discrepancies").size() > 0);
  CHECK(rep.at("payload").at("checks").size() > 0);
  CHECK(rep.at("payload").at("max_abs_deviation").get<double>() <= 1e-9);
  CHECK(nlohmann::json::parse(rep.dump(2)) == rep);

  r = run({"verify", "paper5d"});
  CHECK(contains(r.out, "known discrepancies"));

  r = run({"verify", "rot4"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "max deviation 0"));

  r = run({"verify", corrupted_fixture()});
  CHECK(r.rc == 1);
  CHECK(contains(r.out, "validation: FAIL"));

  r = run({"verify", "paper5d", "--tolerance", "1e-6", "--json"});
  CHECK(report_of(r).at("tolerance").get<double>() == 1e-6);
}

TEST_CASE("cli catalog lists and emits the built-in algebras") {
  CliResult r = run({"catalog", "--list"});
  CHECK(r.rc == 0);
  std::vector<std::string> lines;
  std::stringstream ss(r.out);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) lines.push_back(line);
  const std::vector<std::string> names = catalog_names();
  CHECK(lines == names);
  CHECK(lines.size() == 4);
  CHECK(lines[0] == "paper5d");

  r = run({"catalog", "--emit", "nosuch"});
  CHECK(r.rc == 2);

  r = run({"catalog", "--emit", "paper5d"});
  CHECK(r.rc == 0);
  const StructureConstants parsed = parse_structure(r.out);
  const StructureConstants expect = catalog_entry("paper5d");
  const Tensor3 ca = dense_brackets(parsed);
  const Tensor3 cb = dense_brackets(expect);
  REQUIRE(ca.data().size() == cb.data().size());
  for (std::size_t i = 0; i < ca.data().size(); ++i)
    CHECK(ca.data()[i] == cb.data()[i]);

  const std::string out_path =
      (std::filesystem::temp_directory_path() / "liegeo_test_emit.json")
          .string();
  r = run({"catalog", "--emit", "heis_ext6", "--out", out_path});
  CHECK(r.rc == 0);
  r = run({"validate", out_path});
  CHECK(r.rc == 0);

  r = run({"catalog"});
  CHECK(r.rc == 2);
}

TEST_CASE("cli rejects unknown commands and honors the env tolerance") {
  CliResult r = run({"frobnicate"});
  CHECK(r.rc == 2);
  r = run({});
  CHECK(r.rc == 2);
  r = run({"--help"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "validate"));

  const char* saved = std::getenv("LIEGEO_TOL");
  const std::string saved_value = saved ? saved : "";
  setenv("LIEGEO_TOL", "1e-3", 1);
  r = run({"validate", "paper5d", "--json"});
  CHECK(report_of(r).at("tolerance").get<double>() == 1e-3);
  if (saved)
    setenv("LIEGEO_TOL", saved_value.c_str(), 1);
  else
    unsetenv("LIEGEO_TOL");
}
