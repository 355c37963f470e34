#include "liegeo/structure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace liegeo {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    fail(ErrorCode::MALFORMED_INPUT,
         std::string("missing or non-integer field '") + key + "'");
  return j[key].get<int>();
}

double require_finite(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    fail(ErrorCode::MALFORMED_INPUT,
         std::string("missing or non-numeric field '") + key + "'");
  double v = j[key].get<double>();
  if (!std::isfinite(v))
    fail(ErrorCode::MALFORMED_INPUT,
         std::string("non-finite value in field '") + key + "'");
  return v;
}

}  // namespace

std::string StructureConstants::label(int i) const {
  if (i >= 0 && i < static_cast<int>(basis_labels.size()))
    return basis_labels[i];
  if (i == 0) return "e1";
  if (i == 1) return "e2";
  return "Y" + std::to_string(i - 1);
}

StructureConstants parse_structure(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::MALFORMED_INPUT, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object())
    fail(ErrorCode::MALFORMED_INPUT, "top-level JSON value must be an object");

  StructureConstants sc;
  if (j.contains("name")) {
    if (!j["name"].is_string())
      fail(ErrorCode::MALFORMED_INPUT, "'name' must be a string");
    sc.name = j["name"].get<std::string>();
  }

  sc.n = require_int(j, "dimension");
  if (sc.n < kMinDim || sc.n > kMaxDim)
    fail(ErrorCode::MALFORMED_INPUT,
         "dimension " + std::to_string(sc.n) + " out of range [" +
             std::to_string(kMinDim) + ", " + std::to_string(kMaxDim) + "]");

  if (j.contains("basis_labels")) {
    const json& bl = j["basis_labels"];
    if (!bl.is_array() || static_cast<int>(bl.size()) != sc.n)
      fail(ErrorCode::MALFORMED_INPUT,
           "'basis_labels' must be an array of length equal to 'dimension'");
    for (const auto& s : bl) {
      if (!s.is_string())
        fail(ErrorCode::MALFORMED_INPUT, "'basis_labels' entries must be strings");
      sc.basis_labels.push_back(s.get<std::string>());
    }
  }

  if (!j.contains("brackets") || !j["brackets"].is_array())
    fail(ErrorCode::MALFORMED_INPUT, "'brackets' must be an array");

  for (const auto& b : j["brackets"]) {
    if (!b.is_object())
      fail(ErrorCode::MALFORMED_INPUT, "bracket entries must be objects");
    int i = require_int(b, "i");
    int jj = require_int(b, "j");
    if (i < 0 || i >= sc.n || jj < 0 || jj >= sc.n)
      fail(ErrorCode::MALFORMED_INPUT,
           "bracket index out of range: (" + std::to_string(i) + ", " +
               std::to_string(jj) + ")");
    if (i >= jj)
      fail(ErrorCode::MALFORMED_INPUT,
           "bracket pairs must satisfy i < j, got (" + std::to_string(i) +
               ", " + std::to_string(jj) + ")");
    auto key = std::make_pair(i, jj);
    if (sc.brackets.count(key))
      fail(ErrorCode::MALFORMED_INPUT,
           "duplicate bracket pair (" + std::to_string(i) + ", " +
               std::to_string(jj) + ")");
    if (!b.contains("result") || !b["result"].is_array())
      fail(ErrorCode::MALFORMED_INPUT, "bracket 'result' must be an array");
    std::vector<BracketTerm> terms;
    std::vector<bool> seen(sc.n, false);
    for (const auto& t : b["result"]) {
      if (!t.is_object())
        fail(ErrorCode::MALFORMED_INPUT, "bracket result terms must be objects");
      int k = require_int(t, "k");
      if (k < 0 || k >= sc.n)
        fail(ErrorCode::MALFORMED_INPUT,
             "result index k=" + std::to_string(k) + " out of range");
      if (seen[k])
        fail(ErrorCode::MALFORMED_INPUT,
             "duplicate result index k=" + std::to_string(k) +
                 " in bracket (" + std::to_string(i) + ", " +
                 std::to_string(jj) + ")");
      seen[k] = true;
      terms.push_back({k, require_finite(t, "c")});
    }
    if (!terms.empty()) sc.brackets.emplace(key, std::move(terms));
  }
  return sc;
}

StructureConstants parse_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorCode::MALFORMED_INPUT, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_structure(ss.str());
}

std::string serialize_structure(const StructureConstants& sc) {
  ordered_json j;
  j["name"] = sc.name;
  j["dimension"] = sc.n;
  if (!sc.basis_labels.empty()) j["basis_labels"] = sc.basis_labels;
  j["brackets"] = ordered_json::array();
  for (const auto& [key, terms] : sc.brackets) {
    ordered_json b;
    b["i"] = key.first;
    b["j"] = key.second;
    b["result"] = ordered_json::array();
    auto sorted = terms;
    std::sort(sorted.begin(), sorted.end(),
              [](const BracketTerm& x, const BracketTerm& y) { return x.k < y.k; });
    for (const auto& t : sorted)
      b["result"].push_back(ordered_json{{"k", t.k}, {"c", t.c}});
    j["brackets"].push_back(std::move(b));
  }
  return j.dump(2);
}

Tensor3 dense_brackets(const StructureConstants& sc) {
  Tensor3 c(sc.n, sc.n, sc.n);
  for (const auto& [key, terms] : sc.brackets) {
    for (const auto& t : terms) {
      c(key.first, key.second, t.k) = t.c;
      c(key.second, key.first, t.k) = -t.c;
    }
  }
  return c;
}

double jacobi_defect(const StructureConstants& sc) {
  const int n = sc.n;
  Tensor3 c = dense_brackets(sc);
  double worst = 0.0;
  // [[x,y],z] in coordinates: sum_l c(x,y,l) c(l,z,k).
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = y + 1; z < n; ++z)
        for (int k = 0; k < n; ++k) {
          double s = 0.0;
          for (int l = 0; l < n; ++l)
            s += c(x, y, l) * c(l, z, k) + c(y, z, l) * c(l, x, k) +
                 c(z, x, l) * c(l, y, k);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

ValidationReport validate_structure(const StructureConstants& sc, double tol) {
  ValidationReport rep;
  rep.jacobi_defect = jacobi_defect(sc);
  if (rep.jacobi_defect > tol)
    rep.messages.push_back("Jacobi identity fails (defect " +
                           std::to_string(rep.jacobi_defect) + ")");

  // Derived subalgebra = span of all bracket values.
  Eigen::MatrixXd vals(sc.n, std::max<std::size_t>(sc.brackets.size(), 1));
  vals.setZero();
  int col = 0;
  double outside = 0.0;
  for (const auto& [key, terms] : sc.brackets) {
    (void)key;
    for (const auto& t : terms) {
      vals(t.k, col) = t.c;
      if (t.k >= 2) outside = std::max(outside, std::abs(t.c));
    }
    ++col;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vals);
  rep.derived_dim = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rep.derived_dim;

  rep.derived_is_b01_span = (rep.derived_dim == 2 && outside <= tol);
  if (rep.derived_dim != 2)
    rep.messages.push_back("derived subalgebra has dimension " +
                           std::to_string(rep.derived_dim) + ", expected 2");
  if (outside > tol)
    rep.messages.push_back(
        "a bracket value leaves span{" + sc.label(0) + ", " + sc.label(1) +
        "} (coefficient " + std::to_string(outside) + ")");

  double ab = 0.0;
  auto it = sc.brackets.find({0, 1});
  if (it != sc.brackets.end())
    for (const auto& t : it->second) ab = std::max(ab, std::abs(t.c));
  rep.derived_abelian = (ab <= tol);
  if (!rep.derived_abelian)
    rep.messages.push_back("[" + sc.label(0) + ", " + sc.label(1) +
                           "] != 0: the derived subalgebra is not abelian");

  rep.passed = rep.messages.empty();
  return rep;
}

AdaptedData extract_adapted(const StructureConstants& sc) {
  const int n = sc.n;
  const int m = n - 2;
  Tensor3 c = dense_brackets(sc);

  for (int k = 0; k < n; ++k)
    if (std::abs(c(0, 1, k)) > kDefaultTol)
      fail(ErrorCode::NOT_ADAPTED,
           "[" + sc.label(0) + ", " + sc.label(1) + "] != 0");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 2; k < n; ++k)
        if (std::abs(c(i, j, k)) > kDefaultTol)
          fail(ErrorCode::NOT_ADAPTED,
               "bracket [" + sc.label(i) + ", " + sc.label(j) +
                   "] has a component along " + sc.label(k));

  AdaptedData ad;
  ad.m = m;
  ad.a1.resize(m);
  ad.a2.resize(m);
  ad.b1.resize(m);
  ad.b2.resize(m);
  ad.f1 = Eigen::MatrixXd::Zero(m, m);
  ad.f2 = Eigen::MatrixXd::Zero(m, m);
  for (int p = 0; p < m; ++p) {
    ad.a1(p) = c(2 + p, 0, 0);
    ad.a2(p) = c(2 + p, 0, 1);
    ad.b1(p) = c(2 + p, 1, 0);
    ad.b2(p) = c(2 + p, 1, 1);
    for (int q = 0; q < m; ++q) {
      ad.f1(q, p) = c(2 + p, 2 + q, 0);
      ad.f2(q, p) = c(2 + p, 2 + q, 1);
    }
  }
  return ad;
}

StructureConstants reconstruct_structure(const AdaptedData& ad,
                                         const std::string& name, double tol) {
  const int m = ad.m;
  double skew = std::max(max_abs(Eigen::MatrixXd(ad.f1 + ad.f1.transpose())),
                         max_abs(Eigen::MatrixXd(ad.f2 + ad.f2.transpose())));
  if (skew > tol)
    fail(ErrorCode::SKEW_VIOLATION,
         "f1/f2 must be skew-symmetric (defect " + std::to_string(skew) + ")");

  StructureConstants sc;
  sc.name = name;
  sc.n = m + 2;
  auto add = [&sc](int i, int j, int k, double c) {
    if (c != 0.0) sc.brackets[{i, j}].push_back({k, c});
  };
  for (int p = 0; p < m; ++p) {
    // [b_0, u_p] = -[u_p, e_1] = -(a1_p e_1 + a2_p e_2)
    add(0, 2 + p, 0, -ad.a1(p));
    add(0, 2 + p, 1, -ad.a2(p));
    add(1, 2 + p, 0, -ad.b1(p));
    add(1, 2 + p, 1, -ad.b2(p));
    for (int q = p + 1; q < m; ++q) {
      add(2 + p, 2 + q, 0, ad.f1(q, p));
      add(2 + p, 2 + q, 1, ad.f2(q, p));
    }
  }
  return sc;
}

std::vector<std::string> catalog_names() {
  return {"paper5d", "aff4", "rot4", "heis_ext6"};
}

StructureConstants catalog_entry(const std::string& name) {
  StructureConstants sc;
  sc.name = name;
  if (name == "paper5d") {
    // n = 5: [e1, Y1] = -e2, [Y1, Y2] = e1.
    sc.n = 5;
    sc.basis_labels = {"e1", "e2", "Y1", "Y2", "Y3"};
    sc.brackets[{0, 2}] = {{1, -1.0}};
    sc.brackets[{2, 3}] = {{0, 1.0}};
  } else if (name == "aff4") {
    // n = 4: [e1, Y1] = -e1, [e2, Y1] = -e2.
    sc.n = 4;
    sc.basis_labels = {"e1", "e2", "Y1", "Y2"};
    sc.brackets[{0, 2}] = {{0, -1.0}};
    sc.brackets[{1, 2}] = {{1, -1.0}};
  } else if (name == "rot4") {
    // n = 4: [e1, Y1] = -e2, [e2, Y1] = e1 (rotation action on the plane).
    sc.n = 4;
    sc.basis_labels = {"e1", "e2", "Y1", "Y2"};
    sc.brackets[{0, 2}] = {{1, -1.0}};
    sc.brackets[{1, 2}] = {{0, 1.0}};
  } else if (name == "heis_ext6") {
    // n = 6: [Y1, Y2] = e1, [Y3, Y4] = e2 (two decoupled central extensions).
    sc.n = 6;
    sc.basis_labels = {"e1", "e2", "Y1", "Y2", "Y3", "Y4"};
    sc.brackets[{2, 3}] = {{0, 1.0}};
    sc.brackets[{4, 5}] = {{1, 1.0}};
  } else {
    fail(ErrorCode::MALFORMED_INPUT, "unknown catalog entry: " + name);
  }
  return sc;
}

}  // namespace liegeo

namespace liegeo {

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::MALFORMED_INPUT: return "MALFORMED_INPUT";
    case ErrorCode::NOT_ADAPTED: return "NOT_ADAPTED";
    case ErrorCode::SKEW_VIOLATION: return "SKEW_VIOLATION";
    case ErrorCode::DEGENERATE_PLANE: return "DEGENERATE_PLANE";
    case ErrorCode::BAD_CASE_ARGS: return "BAD_CASE_ARGS";
    case ErrorCode::ZERO_VECTOR: return "ZERO_VECTOR";
    case ErrorCode::DIMENSION_MISMATCH: return "DIMENSION_MISMATCH";
    case ErrorCode::DRIFT_NORM: return "DRIFT_NORM";
    case ErrorCode::NOT_BERWALD: return "NOT_BERWALD";
    case ErrorCode::CASE_UNSUPPORTED: return "CASE_UNSUPPORTED";
  }
  return "UNKNOWN";
}

}  // namespace liegeo
