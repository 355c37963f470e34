#include "liegeo/verify.hpp"

#include <cmath>

#include "liegeo/base_geometry.hpp"
#include "liegeo/oracle.hpp"
#include "liegeo/randers.hpp"
#include "liegeo/tangent.hpp"

namespace liegeo {

namespace {

struct Acc {
  double dev = 0.0;
  std::string loc;
  void see(double d, const std::string& l) {
    if (d > dev) {
      dev = d;
      loc = l;
    }
  }
};

std::string idx3(int i, int j, int k) {
  return "[" + std::to_string(i) + "," + std::to_string(j) + "," +
         std::to_string(k) + "]";
}

double tensor3_acc(const Tensor3& a, const Tensor3& b, Acc& acc,
                   const std::string& tag) {
  const int n = a.dim0();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        acc.see(std::abs(a(i, j, k) - b(i, j, k)), tag + idx3(i, j, k));
  return acc.dev;
}

double tensor4_max(const Tensor4& a, const Tensor4& b, Acc& acc,
                   const std::string& tag) {
  const int n = a.dim0();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          acc.see(std::abs(a(i, j, k, l) - b(i, j, k, l)),
                  tag + idx3(i, j, k) + "[" + std::to_string(l) + "]");
  return acc.dev;
}

// Largest residual of either basis outside the span of the other; 0 when
// the column spans agree, and the dimension gap when the ranks differ.
double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols())
    return static_cast<double>(std::abs(a.cols() - b.cols()));
  if (a.cols() == 0) return 0.0;
  const Eigen::MatrixXd pa = a * a.transpose();
  const Eigen::MatrixXd pb = b * b.transpose();
  const double ra = (b - pa * b).cwiseAbs().maxCoeff();
  const double rb = (a - pb * a).cwiseAbs().maxCoeff();
  return std::max(ra, rb);
}

int slot_index(LiftedSlot s, int n, int p, int q) {
  switch (s) {
    case LiftedSlot::E1C: return 0;
    case LiftedSlot::E2C: return 1;
    case LiftedSlot::E1V: return n;
    case LiftedSlot::E2V: return n + 1;
    case LiftedSlot::UC: return 2 + p;
    case LiftedSlot::UV: return n + 2 + p;
    case LiftedSlot::VC: return 2 + q;
    case LiftedSlot::VV: return n + 2 + q;
  }
  return 0;
}

bool matches_catalog(const StructureConstants& sc, const char* name) {
  const StructureConstants ref = catalog_entry(name);
  if (sc.n != ref.n) return false;
  const Tensor3 a = oracle::bracket_tensor(sc);
  const Tensor3 b = oracle::bracket_tensor(ref);
  for (int i = 0; i < sc.n; ++i)
    for (int j = 0; j < sc.n; ++j)
      for (int k = 0; k < sc.n; ++k)
        if (std::abs(a(i, j, k) - b(i, j, k)) > 1e-12) return false;
  return true;
}

}  // namespace

DeviationReport full_verify(const StructureConstants& sc, double tol) {
  DeviationReport rep;
  rep.tolerance = tol;
  rep.validation = validate_structure(sc, tol);
  if (!rep.validation.passed) {
    rep.passed = false;
    rep.worst_location = "validation";
    return rep;
  }

  const int n = sc.n;
  const int m = n - 2;
  const AdaptedData ad = extract_adapted(sc);

  // Oracle quantities: everything below is compared against these.
  const Tensor3 c_o = oracle::bracket_tensor(sc);
  const Tensor3 g_o = oracle::koszul_connection(c_o);
  const Tensor4 r_o = oracle::curvature_tensor(g_o, c_o);
  const Eigen::MatrixXd ric_o = oracle::ricci_matrix(r_o);
  const Tensor3 ct_o = oracle::doubled_bracket_tensor(c_o);
  const Tensor3 gt_o = oracle::koszul_connection(ct_o);
  const Tensor4 rt_o = oracle::curvature_tensor(gt_o, ct_o);
  const Eigen::MatrixXd rict_o = oracle::ricci_matrix(rt_o);

  auto push = [&rep](const char* name, const Acc& acc) {
    rep.checks.push_back({name, acc.dev, acc.loc});
  };

  {  // closed-form base connection vs Koszul
    Acc acc;
    tensor3_acc(connection_base(ad).g, g_o, acc, "connection_base");
    push("connection_base vs koszul", acc);
  }
  {  // library curvature kernel vs oracle assembly
    const ConnectionTable conn = connection_base(ad);
    const CurvatureTensor r = curvature_from_connection(conn, dense_brackets(sc));
    Acc acc;
    tensor4_max(r.r, r_o, acc, "curvature_base");
    push("curvature_base vs oracle", acc);
  }
  {  // closed-form base sectional curvature
    Acc acc;
    const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(n, 0);
    const Eigen::VectorXd e2 = Eigen::VectorXd::Unit(n, 1);
    acc.see(std::abs(sectional_closed_base(ad, BaseSectionalCase::E1E2) -
                     oracle::sectional_value(r_o, e1, e2)),
            "sectional[e1e2]");
    for (int p = 0; p < m; ++p) {
      const Eigen::VectorXd up = Eigen::VectorXd::Unit(m, p);
      const Eigen::VectorXd upn = Eigen::VectorXd::Unit(n, 2 + p);
      acc.see(std::abs(sectional_closed_base(ad, BaseSectionalCase::E1U, up) -
                       oracle::sectional_value(r_o, e1, upn)),
              "sectional[e1u][" + std::to_string(p) + "]");
      acc.see(std::abs(sectional_closed_base(ad, BaseSectionalCase::E2U, up) -
                       oracle::sectional_value(r_o, e2, upn)),
              "sectional[e2u][" + std::to_string(p) + "]");
      for (int q = 0; q < m; ++q) {
        if (q == p) continue;
        const Eigen::VectorXd vq = Eigen::VectorXd::Unit(m, q);
        const Eigen::VectorXd vqn = Eigen::VectorXd::Unit(n, 2 + q);
        acc.see(
            std::abs(sectional_closed_base(ad, BaseSectionalCase::UV, up, vq) -
                     oracle::sectional_value(r_o, upn, vqn)),
            "sectional[uv][" + std::to_string(p) + "," + std::to_string(q) +
                "]");
      }
    }
    push("sectional_closed_base vs oracle", acc);
  }
  {  // closed-form ad* table vs the defining identity
    Acc acc;
    const Tensor3 a = ad_star_table(ad);
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd bi = Eigen::VectorXd::Unit(n, i);
      for (int j = 0; j < n; ++j) {
        const Eigen::VectorXd bj = Eigen::VectorXd::Unit(n, j);
        const Eigen::VectorXd brute = oracle::brute_ad_star(c_o, bi, bj);
        for (int k = 0; k < n; ++k)
          acc.see(std::abs(a(i, j, k) - brute(k)), "ad_star" + idx3(i, j, k));
      }
    }
    push("ad_star_table vs brute", acc);
  }
  {  // closed-form tangent connection vs Koszul on the double
    Acc acc;
    tensor3_acc(connection_tangent(ad).g, gt_o, acc, "connection_tangent");
    push("connection_tangent vs koszul", acc);
  }
  {  // tangent curvature kernel vs oracle
    const TangentGeometry tg = tangent_geometry(ad);
    Acc acc;
    tensor4_max(tg.curv.r, rt_o, acc, "curvature_tangent");
    push("curvature_tangent vs oracle", acc);
  }
  {  // thirty tabulated curvature cases vs the generic tensor
    Acc acc;
    auto run = [&](int id, int p, int q) {
      Eigen::VectorXd u, v;
      if (tangent_case_needs_u(id)) u = Eigen::VectorXd::Unit(m, p);
      if (tangent_case_needs_v(id) || (id == 16 && q >= 0))
        v = Eigen::VectorXd::Unit(m, q);
      const TangentCurvatureCase cs = tangent_curvature_case(ad, id, u, v);
      const int i = slot_index(cs.x, n, p, q);
      const int j = slot_index(cs.y, n, p, q);
      const int k = slot_index(cs.z, n, p, q);
      for (int l = 0; l < 2 * n; ++l)
        acc.see(std::abs(cs.value(l) - rt_o(i, j, k, l)),
                "curvature_case[" + std::to_string(id) + "]" + idx3(i, j, k));
    };
    for (int id = 1; id <= 12; ++id) run(id, -1, -1);
    for (int p = 0; p < m; ++p) {
      run(16, p, -1);
      for (int id = 17; id <= 30; ++id) run(id, p, -1);
      for (int q = 0; q < m; ++q) {
        if (q == p) continue;
        for (int id = 13; id <= 16; ++id) run(id, p, q);
      }
    }
    push("tangent_curvature_case vs tensor", acc);
  }
  {  // tangent sectional patterns vs oracle
    Acc acc;
    auto lift_c = [&](const Eigen::VectorXd& x) {
      Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n);
      out.head(n) = x;
      return out;
    };
    auto lift_v = [&](const Eigen::VectorXd& x) {
      Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n);
      out.tail(n) = x;
      return out;
    };
    const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(n, 0);
    const Eigen::VectorXd e2 = Eigen::VectorXd::Unit(n, 1);
    auto see = [&](TangentPlane pl, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& v) {
      acc.see(std::abs(tangent_sectional_closed(ad, pl, u, v) -
                       oracle::sectional_value(rt_o, x, y)),
              std::string("tangent_sectional[") + to_string(pl) + "]");
    };
    const Eigen::VectorXd none;
    see(TangentPlane::E1C_E2C, lift_c(e1), lift_c(e2), none, none);
    see(TangentPlane::E1V_E2V, lift_v(e1), lift_v(e2), none, none);
    see(TangentPlane::E1C_E2V, lift_c(e1), lift_v(e2), none, none);
    see(TangentPlane::E1V_E2C, lift_v(e1), lift_c(e2), none, none);
    see(TangentPlane::E1C_E1V, lift_c(e1), lift_v(e1), none, none);
    see(TangentPlane::E2C_E2V, lift_c(e2), lift_v(e2), none, none);
    for (int p = 0; p < m; ++p) {
      const Eigen::VectorXd u = Eigen::VectorXd::Unit(m, p);
      const Eigen::VectorXd un = Eigen::VectorXd::Unit(n, 2 + p);
      see(TangentPlane::UC_E1C, lift_c(un), lift_c(e1), u, none);
      see(TangentPlane::UC_E1V, lift_c(un), lift_v(e1), u, none);
      see(TangentPlane::UC_E2C, lift_c(un), lift_c(e2), u, none);
      see(TangentPlane::UC_E2V, lift_c(un), lift_v(e2), u, none);
      see(TangentPlane::UV_E1C, lift_v(un), lift_c(e1), u, none);
      see(TangentPlane::UV_E2C, lift_v(un), lift_c(e2), u, none);
      see(TangentPlane::UV_E1V, lift_v(un), lift_v(e1), u, none);
      see(TangentPlane::UV_E2V, lift_v(un), lift_v(e2), u, none);
      see(TangentPlane::UC_UV, lift_c(un), lift_v(un), u, none);
      for (int q = 0; q < m; ++q) {
        if (q == p) continue;
        const Eigen::VectorXd v = Eigen::VectorXd::Unit(m, q);
        const Eigen::VectorXd vn = Eigen::VectorXd::Unit(n, 2 + q);
        see(TangentPlane::UC_VC, lift_c(un), lift_c(vn), u, v);
        see(TangentPlane::UC_VV, lift_c(un), lift_v(vn), u, v);
        see(TangentPlane::UV_VV, lift_v(un), lift_v(vn), u, v);
      }
    }
    push("tangent_sectional_closed vs oracle", acc);
  }
  {  // fifteen tabulated Ricci entries vs oracle (base Ricci from oracle)
    Acc acc;
    auto run = [&](int id, int p, int q) {
      Eigen::VectorXd u, v;
      if (tangent_ricci_needs_u(id)) u = Eigen::VectorXd::Unit(m, p);
      if (tangent_ricci_needs_v(id)) v = Eigen::VectorXd::Unit(m, q);
      const auto [i, j] = tangent_ricci_entry_indices(n, id, p, q);
      acc.see(std::abs(tangent_ricci_closed(ad, ric_o, id, u, v) - rict_o(i, j)),
              "tangent_ricci[" + std::to_string(id) + "]");
    };
    for (int id : {1, 2, 3, 4, 7, 8}) run(id, -1, -1);
    for (int p = 0; p < m; ++p) {
      for (int id : {5, 6, 11, 12, 13, 14}) run(id, p, -1);
      for (int q = 0; q < m; ++q)
        for (int id : {9, 10}) run(id, p, q);
    }
    // entry 15: the whole mixed block vanishes
    for (int i = 0; i < n; ++i)
      for (int j = n; j < 2 * n; ++j)
        acc.see(std::abs(rict_o(i, j)),
                "tangent_ricci[15][" + std::to_string(i) + "," +
                    std::to_string(j) + "]");
    push("tangent_ricci_closed vs oracle", acc);
  }
  {  // base-vs-tangent sectional relations
    const RelationReport rel = curvature_relations(ad, tol);
    Acc acc;
    acc.see(rel.max_deviation, "curvature_relations");
    push("curvature_relations planes", acc);
  }
  {  // Berwald drift spaces (base and complete) vs brute parallel spaces
    Acc acc;
    const Eigen::MatrixXd lit = berwald_drift_space_literal(ad, Lift::None);
    acc.see(subspace_distance(lit, oracle::parallel_space(g_o)),
            "berwald_space[none]");
    // complete lift: kernel of X -> nabla~(Xc) over all 2n directions
    Eigen::MatrixXd mc(2 * n * 2 * n, n);
    for (int i = 0; i < 2 * n; ++i)
      for (int k = 0; k < 2 * n; ++k)
        for (int j = 0; j < n; ++j) mc(i * 2 * n + k, j) = gt_o(i, j, k);
    acc.see(subspace_distance(berwald_drift_space_literal(ad, Lift::Complete),
                              oracle::null_space(mc)),
            "berwald_space[complete]");
    push("berwald_drift_space vs brute parallel", acc);
  }

  // Known tabulated deviations: reported, not scored.
  for (const CellDifference& cd : tabulated_connection_differences(ad, tol))
    rep.known_discrepancies.push_back(
        {"tabulated_connection[" + cd.row + "," + cd.col + "]", cd.max_abs, ""});
  if (matches_catalog(sc, "paper5d")) {
    rep.known_discrepancies.push_back(
        {"tabulated_ricci[e1c]", std::abs(-0.75 - rict_o(0, 0)), ""});
    rep.known_discrepancies.push_back(
        {"tabulated_ricci[e1v]", std::abs(0.0 - rict_o(n, n)), ""});
  }
  {  // vertical drift space: literal criteria vs brute parallelism
    Eigen::MatrixXd mv(2 * n * 2 * n, n);
    for (int i = 0; i < 2 * n; ++i)
      for (int k = 0; k < 2 * n; ++k)
        for (int j = 0; j < n; ++j) mv(i * 2 * n + k, j) = gt_o(i, n + j, k);
    const double d =
        subspace_distance(berwald_drift_space_literal(ad, Lift::Vertical),
                          oracle::null_space(mv));
    if (d > tol)
      rep.known_discrepancies.push_back(
          {"berwald_space[vertical] vs brute parallel", d, ""});
  }

  for (const CheckResult& cr : rep.checks)
    if (cr.deviation > rep.max_abs_deviation) {
      rep.max_abs_deviation = cr.deviation;
      rep.worst_location = cr.worst_location.empty() ? cr.name : cr.worst_location;
    }
  rep.passed = rep.max_abs_deviation <= tol;
  return rep;
}

}  // namespace liegeo
