#include "liegeo/cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "liegeo/base_geometry.hpp"
#include "liegeo/errors.hpp"
#include "liegeo/randers.hpp"
#include "liegeo/report.hpp"
#include "liegeo/structure.hpp"
#include "liegeo/tangent.hpp"
#include "liegeo/verify.hpp"

namespace liegeo {
namespace {

using nlohmann::ordered_json;

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NOT_BERWALD:
    case ErrorCode::DRIFT_NORM:
      return 1;
    case ErrorCode::CASE_UNSUPPORTED:
      return 3;
    default:
      return 2;
  }
}

StructureConstants load_algebra(const std::string& ref) {
  for (const std::string& name : catalog_names())
    if (ref == name) return catalog_entry(ref);
  return parse_structure_file(ref);
}

Eigen::VectorXd parse_csv_vector(const std::string& text,
                                 const std::string& what) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(item, &pos);
      while (pos < item.size() &&
             std::isspace(static_cast<unsigned char>(item[pos])))
        ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
      vals.push_back(v);
    } catch (...) {
      fail(ErrorCode::MALFORMED_INPUT, "bad " + what + " '" + text + "'");
    }
  }
  if (vals.empty())
    fail(ErrorCode::MALFORMED_INPUT, "empty " + what + " '" + text + "'");
  return Eigen::Map<Eigen::VectorXd>(vals.data(),
                                     static_cast<int>(vals.size()));
}

ordered_json vec_json(const Eigen::VectorXd& v) {
  auto a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ordered_json mat_json(const Eigen::MatrixXd& m) {
  auto rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    auto row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json tensor3_json(const Tensor3& t) {
  auto out = ordered_json::array();
  for (int i = 0; i < t.dim0(); ++i) {
    auto mid = ordered_json::array();
    for (int j = 0; j < t.dim1(); ++j) {
      auto row = ordered_json::array();
      for (int k = 0; k < t.dim2(); ++k) row.push_back(t(i, j, k));
      mid.push_back(std::move(row));
    }
    out.push_back(std::move(mid));
  }
  return out;
}

std::string fmt_vec(const Eigen::VectorXd& v) {
  std::string s = "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_real(v(i));
  }
  return s + "]";
}

void print_messages(const std::vector<std::string>& msgs, std::ostream& out) {
  for (const std::string& m : msgs) out << "  - " << m << "\n";
}

// Validates and unpacks, printing the failure report when invalid.
// Returns false (and sets rc = 1) when the algebra does not validate.
bool require_valid(const StructureConstants& sc, double tol, bool json,
                   std::ostream& out, int& rc) {
  const ValidationReport vr = validate_structure(sc, tol);
  if (vr.passed) return true;
  if (json) {
    out << make_report("validation", validation_to_json(vr), tol).dump(2)
        << "\n";
  } else {
    out << "validation: FAIL\n";
    print_messages(vr.messages, out);
  }
  rc = 1;
  return false;
}

int cmd_validate(const std::string& ref, bool json, double tol,
                 std::ostream& out) {
  const StructureConstants sc = load_algebra(ref);
  const ValidationReport vr = validate_structure(sc, tol);
  if (json) {
    out << make_report("validation", validation_to_json(vr), tol).dump(2)
        << "\n";
  } else {
    out << "algebra: " << (sc.name.empty() ? ref : sc.name) << " (dimension "
        << sc.n << ")\n";
    out << "jacobi defect: " << format_real(vr.jacobi_defect) << "\n";
    out << "derived dimension: " << vr.derived_dim << "\n";
    if (!vr.messages.empty()) print_messages(vr.messages, out);
    out << "validation: " << (vr.passed ? "PASS" : "FAIL") << "\n";
  }
  return vr.passed ? 0 : 1;
}

int cmd_base(const std::string& ref, bool json, double tol,
             std::ostream& out) {
  const StructureConstants sc = load_algebra(ref);
  int rc = 0;
  if (!require_valid(sc, tol, json, out, rc)) return rc;
  const AdaptedData ad = extract_adapted(sc);
  const int m = ad.m;
  const ConnectionTable conn = connection_base(ad);
  const CurvatureTensor curv =
      curvature_from_connection(conn, dense_brackets(sc));
  const Eigen::MatrixXd ric = ricci_base(curv);

  const double k12 = sectional_closed_base(ad, BaseSectionalCase::E1E2);
  Eigen::VectorXd k1u(m), k2u(m);
  Eigen::MatrixXd kuv = Eigen::MatrixXd::Zero(m, m);
  for (int p = 0; p < m; ++p) {
    const Eigen::VectorXd u = Eigen::VectorXd::Unit(m, p);
    k1u(p) = sectional_closed_base(ad, BaseSectionalCase::E1U, u);
    k2u(p) = sectional_closed_base(ad, BaseSectionalCase::E2U, u);
    for (int q = 0; q < m; ++q) {
      if (q == p) continue;
      kuv(p, q) = sectional_closed_base(ad, BaseSectionalCase::UV, u,
                                        Eigen::VectorXd::Unit(m, q));
    }
  }
  const std::vector<ObstructionTerm> obstruction =
      biinvariance_obstruction(ad, tol);
  double complement_defect = 0.0;
  for (int p = 0; p < m; ++p) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(sc.n);
    x(2 + p) = 1.0;
    complement_defect =
        std::max(complement_defect, geodesic_check(conn, x, tol).residual);
  }

  if (json) {
    ordered_json payload;
    payload["name"] = sc.name.empty() ? ref : sc.name;
    payload["dimension"] = sc.n;
    payload["connection"] = tensor3_json(conn.g);
    ordered_json sect;
    sect["e1e2"] = k12;
    sect["e1u"] = vec_json(k1u);
    sect["e2u"] = vec_json(k2u);
    sect["uv"] = mat_json(kuv);
    payload["sectional"] = std::move(sect);
    payload["ricci"] = mat_json(ric);
    payload["scalar_curvature"] = scalar_curvature(curv);
    payload["unimodular"] = is_unimodular(ad, tol);
    payload["unimodularity_defect"] = unimodularity_defect(ad);
    auto obs = ordered_json::array();
    for (const ObstructionTerm& t : obstruction) {
      ordered_json jt;
      jt["condition"] = t.condition;
      jt["magnitude"] = t.magnitude;
      obs.push_back(std::move(jt));
    }
    payload["biinvariance_obstruction"] = std::move(obs);
    ordered_json geo;
    geo["complement_defect"] = complement_defect;
    geo["e1_defect"] = derived_geodesic_defect(ad, 1.0, 0.0);
    geo["e2_defect"] = derived_geodesic_defect(ad, 0.0, 1.0);
    geo["e1_plus_e2_defect"] = derived_geodesic_defect(ad, 1.0, 1.0);
    payload["geodesics"] = std::move(geo);
    out << make_report("base", std::move(payload), tol).dump(2) << "\n";
    return 0;
  }

  out << "algebra: " << (sc.name.empty() ? ref : sc.name) << " (dimension "
      << sc.n << ")\n";
  out << "sectional curvature:\n";
  out << "  K(e1,e2) = " << format_real(k12) << "\n";
  for (int p = 0; p < m; ++p)
    out << "  K(e1," << sc.label(2 + p) << ") = " << format_real(k1u(p))
        << "   K(e2," << sc.label(2 + p) << ") = " << format_real(k2u(p))
        << "\n";
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q)
      out << "  K(" << sc.label(2 + p) << "," << sc.label(2 + q)
          << ") = " << format_real(kuv(p, q)) << "\n";
  out << "ricci diagonal:";
  for (int i = 0; i < sc.n; ++i) out << " " << format_real(ric(i, i));
  out << "\nscalar curvature = " << format_real(scalar_curvature(curv))
      << "\n";
  out << "unimodular: " << (is_unimodular(ad, tol) ? "yes" : "no")
      << " (defect " << format_real(unimodularity_defect(ad)) << ")\n";
  out << "bi-invariance obstruction (violated conditions):\n";
  for (const ObstructionTerm& t : obstruction)
    out << "  " << t.condition << "  (magnitude " << format_real(t.magnitude)
        << ")\n";
  out << "geodesics: complement directions residual "
      << format_real(complement_defect) << "; e1 defect "
      << format_real(derived_geodesic_defect(ad, 1.0, 0.0)) << "; e2 defect "
      << format_real(derived_geodesic_defect(ad, 0.0, 1.0)) << "\n";
  return 0;
}

int cmd_tangent(const std::string& ref, bool json, double tol,
                std::ostream& out) {
  const StructureConstants sc = load_algebra(ref);
  int rc = 0;
  if (!require_valid(sc, tol, json, out, rc)) return rc;
  const AdaptedData ad = extract_adapted(sc);
  const int m = ad.m;
  const int n = sc.n;

  static constexpr TangentPlane kPlanes[] = {
      TangentPlane::E1C_E2C, TangentPlane::E1V_E2V, TangentPlane::E1C_E2V,
      TangentPlane::E1V_E2C, TangentPlane::E1C_E1V, TangentPlane::E2C_E2V,
      TangentPlane::UC_E1C,  TangentPlane::UC_E1V,  TangentPlane::UC_E2C,
      TangentPlane::UC_E2V,  TangentPlane::UV_E1C,  TangentPlane::UV_E2C,
      TangentPlane::UV_E1V,  TangentPlane::UV_E2V,  TangentPlane::UC_VC,
      TangentPlane::UC_VV,   TangentPlane::UV_VV,   TangentPlane::UC_UV,
  };

  const RelationReport rel = curvature_relations(ad, tol);
  const Eigen::MatrixXd base_ric =
      ricci_base(curvature_from_connection(connection_base(ad),
                                           dense_brackets(sc)));
  const std::vector<CellDifference> diffs =
      tabulated_connection_differences(ad, tol);

  auto ricci_value = [&](int id, int p, int q) {
    Eigen::VectorXd u, v;
    if (tangent_ricci_needs_u(id)) u = Eigen::VectorXd::Unit(m, p);
    if (tangent_ricci_needs_v(id)) v = Eigen::VectorXd::Unit(m, q);
    return tangent_ricci_closed(ad, base_ric, id, u, v);
  };

  if (json) {
    ordered_json payload;
    payload["name"] = sc.name.empty() ? ref : sc.name;
    payload["base_dimension"] = n;
    payload["tangent_dimension"] = 2 * n;
    auto sect = ordered_json::array();
    for (TangentPlane pl : kPlanes) {
      ordered_json jp;
      jp["plane"] = to_string(pl);
      if (!tangent_plane_needs_u(pl)) {
        jp["value"] = tangent_sectional_closed(ad, pl);
      } else if (!tangent_plane_needs_v(pl)) {
        Eigen::VectorXd vals(m);
        for (int p = 0; p < m; ++p)
          vals(p) = tangent_sectional_closed(ad, pl,
                                             Eigen::VectorXd::Unit(m, p));
        jp["per_u"] = vec_json(vals);
      } else {
        Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(m, m);
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q) {
            if (q == p) continue;
            vals(p, q) = tangent_sectional_closed(
                ad, pl, Eigen::VectorXd::Unit(m, p),
                Eigen::VectorXd::Unit(m, q));
          }
        jp["per_uv"] = mat_json(vals);
      }
      sect.push_back(std::move(jp));
    }
    payload["sectional"] = std::move(sect);
    auto entries = ordered_json::array();
    for (int id = 1; id <= kTangentRicciEntries; ++id) {
      ordered_json je;
      je["id"] = id;
      if (!tangent_ricci_needs_u(id)) {
        const auto [i, j] = tangent_ricci_entry_indices(n, id);
        je["frame"] = {i, j};
        je["value"] = ricci_value(id, -1, -1);
      } else if (!tangent_ricci_needs_v(id)) {
        Eigen::VectorXd vals(m);
        for (int p = 0; p < m; ++p) vals(p) = ricci_value(id, p, -1);
        je["per_u"] = vec_json(vals);
      } else {
        Eigen::MatrixXd vals(m, m);
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q) vals(p, q) = ricci_value(id, p, q);
        je["per_uv"] = mat_json(vals);
      }
      entries.push_back(std::move(je));
    }
    payload["ricci_entries"] = std::move(entries);
    ordered_json jr;
    jr["max_deviation"] = rel.max_deviation;
    jr["planes_checked"] = rel.planes_checked;
    jr["has_positive"] = rel.has_positive;
    jr["has_negative"] = rel.has_negative;
    jr["has_zero"] = rel.has_zero;
    payload["base_relations"] = std::move(jr);
    auto jd = ordered_json::array();
    for (const CellDifference& d : diffs) {
      ordered_json c;
      c["row"] = d.row;
      c["col"] = d.col;
      c["max_abs"] = d.max_abs;
      jd.push_back(std::move(c));
    }
    payload["tabulated_connection_differences"] = std::move(jd);
    out << make_report("tangent", std::move(payload), tol).dump(2) << "\n";
    return 0;
  }

  out << "algebra: " << (sc.name.empty() ? ref : sc.name)
      << " (tangent-group dimension " << 2 * n << ")\n";
  out << "sectional curvature on lifted planes:\n";
  for (TangentPlane pl : kPlanes) {
    if (!tangent_plane_needs_u(pl)) {
      out << "  K~(" << to_string(pl)
          << ") = " << format_real(tangent_sectional_closed(ad, pl)) << "\n";
    } else if (!tangent_plane_needs_v(pl)) {
      for (int p = 0; p < m; ++p)
        out << "  K~(" << to_string(pl) << ")[u=" << sc.label(2 + p)
            << "] = "
            << format_real(tangent_sectional_closed(
                   ad, pl, Eigen::VectorXd::Unit(m, p)))
            << "\n";
    } else {
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
          if (q == p) continue;
          out << "  K~(" << to_string(pl) << ")[u=" << sc.label(2 + p)
              << ",v=" << sc.label(2 + q) << "] = "
              << format_real(tangent_sectional_closed(
                     ad, pl, Eigen::VectorXd::Unit(m, p),
                     Eigen::VectorXd::Unit(m, q)))
              << "\n";
        }
    }
  }
  out << "base-plane relations: max deviation "
      << format_real(rel.max_deviation) << " over " << rel.planes_checked
      << " planes; sign spectrum:" << (rel.has_positive ? " positive" : "")
      << (rel.has_negative ? " negative" : "")
      << (rel.has_zero ? " zero" : "") << "\n";
  out << "ricci entries:\n";
  for (int id = 1; id <= kTangentRicciEntries; ++id) {
    if (!tangent_ricci_needs_u(id)) {
      out << "  entry " << id << " = " << format_real(ricci_value(id, -1, -1))
          << "\n";
    } else if (!tangent_ricci_needs_v(id)) {
      for (int p = 0; p < m; ++p)
        out << "  entry " << id << "[u=" << sc.label(2 + p)
            << "] = " << format_real(ricci_value(id, p, -1)) << "\n";
    } else {
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
          out << "  entry " << id << "[u=" << sc.label(2 + p)
              << ",v=" << sc.label(2 + q)
              << "] = " << format_real(ricci_value(id, p, q)) << "\n";
    }
  }
  if (!diffs.empty()) {
    out << "tabulated connection cells that deviate from the derived table:\n";
    for (const CellDifference& d : diffs)
      out << "  (" << d.row << ", " << d.col << ") max |diff| = "
          << format_real(d.max_abs) << "\n";
  }
  return 0;
}

int cmd_randers(const std::string& ref, const std::string& drift_csv,
                const std::string& lift_str, bool json, double tol,
                std::ostream& out) {
  const StructureConstants sc = load_algebra(ref);
  int rc = 0;
  if (!require_valid(sc, tol, json, out, rc)) return rc;
  const Eigen::VectorXd drift = parse_csv_vector(drift_csv, "drift");
  const Lift lift = lift_from_string(lift_str);
  const RandersSpec spec = make_randers_spec(sc, drift, lift);
  const DriftClassification cls = classify_drift(spec, tol);
  const Eigen::MatrixXd space = berwald_drift_space(spec.ad, lift);

  if (json) {
    ordered_json payload;
    payload["name"] = sc.name.empty() ? ref : sc.name;
    payload["drift"] = vec_json(drift);
    payload["lift"] = to_string(lift);
    payload["douglas"] = cls.douglas;
    payload["douglas_witnesses"] = cls.douglas_witnesses;
    payload["berwald"] = cls.berwald;
    payload["berwald_witnesses"] = cls.berwald_witnesses;
    payload["oracle_berwald"] = cls.oracle_berwald;
    payload["oracle_residual"] = cls.oracle_residual;
    payload["agreement"] = cls.agreement;
    ordered_json js;
    js["dimension"] = static_cast<int>(space.cols());
    auto basis = ordered_json::array();
    for (int j = 0; j < space.cols(); ++j)
      basis.push_back(vec_json(space.col(j)));
    js["basis"] = std::move(basis);
    payload["berwald_drift_space"] = std::move(js);
    out << make_report("randers", std::move(payload), tol).dump(2) << "\n";
    return 0;
  }

  out << "drift " << fmt_vec(drift) << ", lift " << to_string(lift) << "\n";
  out << "douglas: " << (cls.douglas ? "yes" : "no") << "\n";
  for (const std::string& w : cls.douglas_witnesses)
    out << "  violated: " << w << "\n";
  out << "berwald (closed-form criteria): " << (cls.berwald ? "yes" : "no")
      << "\n";
  for (const std::string& w : cls.berwald_witnesses)
    out << "  violated: " << w << "\n";
  out << "parallelism oracle: "
      << (cls.oracle_berwald ? "parallel" : "not parallel") << " (residual "
      << format_real(cls.oracle_residual) << "), agreement "
      << (cls.agreement ? "yes" : "no") << "\n";
  out << "berwald drift space dimension: " << space.cols() << "\n";
  for (int j = 0; j < space.cols(); ++j)
    out << "  basis " << fmt_vec(space.col(j)) << "\n";
  return 0;
}

int cmd_flag(const std::string& ref, const std::string& drift_csv,
             const std::string& lift_str, const std::string& plane_str,
             const std::string& pole_str, bool json, double tol,
             std::ostream& out) {
  const StructureConstants sc = load_algebra(ref);
  int rc = 0;
  if (!require_valid(sc, tol, json, out, rc)) return rc;
  const AdaptedData ad = extract_adapted(sc);
  const Eigen::VectorXd drift = parse_csv_vector(drift_csv, "drift");
  const Lift lift = lift_from_string(lift_str);

  const std::size_t comma = plane_str.find(',');
  if (comma == std::string::npos || comma == 0 ||
      comma + 1 == plane_str.size())
    fail(ErrorCode::MALFORMED_INPUT,
         "--plane expects two comma-separated tokens, got '" + plane_str +
             "'");
  const std::string tok1 = plane_str.substr(0, comma);
  const std::string tok2 = plane_str.substr(comma + 1);
  const PlaneToken t1 = parse_plane_token(tok1, ad.m);
  const PlaneToken t2 = parse_plane_token(tok2, ad.m);
  int pole = -1;
  if (pole_str == tok1)
    pole = 0;
  else if (pole_str == tok2)
    pole = 1;
  else
    fail(ErrorCode::BAD_CASE_ARGS,
         "--flagpole must repeat one of the plane tokens, got '" + pole_str +
             "'");

  const RandersSpec spec = make_randers_spec(sc, drift, lift);
  const FlagResult res = flag_curvature(spec, t1, t2, pole);

  if (json) {
    ordered_json payload;
    payload["name"] = sc.name.empty() ? ref : sc.name;
    payload["drift"] = vec_json(drift);
    payload["lift"] = to_string(lift);
    payload["plane"] = {tok1, tok2};
    payload["flagpole"] = pole_str;
    payload["case_id"] = res.case_id;
    payload["value"] = res.value;
    out << make_report("flag", std::move(payload), tol).dump(2) << "\n";
    return 0;
  }
  out << "flag curvature = " << format_real(res.value) << "  (case "
      << res.case_id << ", " << to_string(lift) << " lift)\n";
  return 0;
}

int cmd_verify(const std::string& ref, bool json, double tol,
               std::ostream& out) {
  const StructureConstants sc = load_algebra(ref);
  const DeviationReport rep = full_verify(sc, tol);
  if (json) {
    out << make_report("verify", verify_to_json(rep), tol).dump(2) << "\n";
  } else {
    out << "validation: " << (rep.validation.passed ? "PASS" : "FAIL")
        << "\n";
    print_messages(rep.validation.messages, out);
    if (rep.validation.passed) {
      out << "checks (closed forms vs independent oracle):\n";
      for (const CheckResult& c : rep.checks) {
        out << "  " << c.name << ": max deviation "
            << format_real(c.deviation);
        if (c.deviation > rep.tolerance && !c.worst_location.empty())
          out << " at " << c.worst_location;
        out << "\n";
      }
      out << "known discrepancies (tabulated values that deviate by "
             "construction):\n";
      if (rep.known_discrepancies.empty()) out << "  none\n";
      for (const CheckResult& c : rep.known_discrepancies)
        out << "  " << c.name << ": " << format_real(c.deviation) << "\n";
      out << "max deviation " << format_real(rep.max_abs_deviation)
          << (rep.passed ? " <= " : " > ") << "tolerance "
          << format_real(rep.tolerance) << ": "
          << (rep.passed ? "PASS" : "FAIL") << "\n";
    }
  }
  return rep.passed ? 0 : 1;
}

int cmd_catalog(bool list, const std::string& emit, const std::string& out_path,
                std::ostream& out) {
  if (list) {
    for (const std::string& name : catalog_names()) out << name << "\n";
    return 0;
  }
  if (emit.empty())
    fail(ErrorCode::MALFORMED_INPUT, "catalog needs --list or --emit <name>");
  const std::string text = serialize_structure(catalog_entry(emit));
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) fail(ErrorCode::MALFORMED_INPUT, "cannot write '" + out_path + "'");
    f << text << "\n";
  } else {
    out << text << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "left-invariant Riemannian and Randers geometry of Lie groups whose "
      "derived algebra is a two-dimensional abelian ideal, on the group and "
      "on its tangent group"};
  app.require_subcommand(1);
  const double default_tol = active_tolerance();

  std::string ref, drift_csv, lift_str = "none", plane_str, pole_str;
  std::string emit_name, out_path;
  bool json = false, list = false;
  double verify_tol = default_tol;

  CLI::App* validate = app.add_subcommand(
      "validate", "check that an algebra belongs to the supported class");
  validate->add_option("algebra", ref, "catalog name or JSON file")
      ->required();
  validate->add_flag("--json", json, "emit the report as JSON");

  CLI::App* base = app.add_subcommand(
      "base", "Riemannian report on the group: connection, sectional and "
              "Ricci curvature, unimodularity, bi-invariance, geodesics");
  base->add_option("algebra", ref, "catalog name or JSON file")->required();
  base->add_flag("--json", json, "emit the report as JSON");

  CLI::App* tangent = app.add_subcommand(
      "tangent", "Riemannian report on the tangent group: lifted-plane "
                 "sectional values, Ricci entries, base relations");
  tangent->add_option("algebra", ref, "catalog name or JSON file")
      ->required();
  tangent->add_flag("--json", json, "emit the report as JSON");

  CLI::App* randers = app.add_subcommand(
      "randers", "Douglas/Berwald classification of a Randers drift");
  randers->add_option("algebra", ref, "catalog name or JSON file")
      ->required();
  randers->add_option("--drift", drift_csv,
                      "drift coordinates in the base algebra, e.g. 0,0,0,0,0.5")
      ->required();
  randers->add_option("--lift", lift_str, "none (default), c, or v");
  randers->add_flag("--json", json, "emit the report as JSON");

  CLI::App* flag = app.add_subcommand(
      "flag", "flag curvature of a tabulated plane/flagpole case");
  flag->add_option("algebra", ref, "catalog name or JSON file")->required();
  flag->add_option("--drift", drift_csv, "drift coordinates in the base algebra")
      ->required();
  flag->add_option("--lift", lift_str, "c or v")->required();
  flag->add_option("--plane", plane_str,
                   "two tokens, e.g. e1c,Y1v or e2c,(0.6;0;0.8)c")
      ->required();
  flag->add_option("--flagpole", pole_str, "one of the two plane tokens")
      ->required();
  flag->add_flag("--json", json, "emit the report as JSON");

  CLI::App* verify = app.add_subcommand(
      "verify", "run every closed form against the brute-force oracle");
  verify->add_option("algebra", ref, "catalog name or JSON file")->required();
  verify->add_option("--tolerance", verify_tol, "pass/fail threshold");
  verify->add_flag("--json", json, "emit the report as JSON");

  CLI::App* catalog = app.add_subcommand(
      "catalog", "list or emit the built-in example algebras");
  catalog->add_flag("--list", list, "print the catalog names");
  catalog->add_option("--emit", emit_name, "print one entry as JSON");
  catalog->add_option("--out", out_path, "write --emit output to a file");

  try {
    app.parse(argc, argv);
    if (validate->parsed())
      return cmd_validate(ref, json, default_tol, out);
    if (base->parsed()) return cmd_base(ref, json, default_tol, out);
    if (tangent->parsed()) return cmd_tangent(ref, json, default_tol, out);
    if (randers->parsed())
      return cmd_randers(ref, drift_csv, lift_str, json, default_tol, out);
    if (flag->parsed())
      return cmd_flag(ref, drift_csv, lift_str, plane_str, pole_str, json,
                      default_tol, out);
    if (verify->parsed()) return cmd_verify(ref, json, verify_tol, out);
    if (catalog->parsed()) return cmd_catalog(list, emit_name, out_path, out);
    err << "error: no subcommand\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace liegeo
