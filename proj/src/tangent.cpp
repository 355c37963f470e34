#include "liegeo/tangent.hpp"

#include <cmath>

#include "liegeo/base_geometry.hpp"
#include "liegeo/errors.hpp"
#include "liegeo/kernels.hpp"

namespace liegeo {

namespace {

void require_unit_complement(const Eigen::VectorXd& u, int m, const char* what) {
  if (u.size() != m)
    fail(ErrorCode::BAD_CASE_ARGS,
         std::string(what) + " must be a complement vector of length " +
             std::to_string(m));
  if (std::abs(u.norm() - 1.0) > 1e-9)
    fail(ErrorCode::BAD_CASE_ARGS, std::string(what) + " must be a unit vector");
}

void require_orthogonal(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (std::abs(u.dot(v)) > 1e-9)
    fail(ErrorCode::BAD_CASE_ARGS, "u and v must be orthogonal");
}

Eigen::VectorXd embed_complement(const Eigen::VectorXd& u, int n) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  out.segment(2, u.size()) = u;
  return out;
}

}  // namespace

Tensor3 tangent_brackets(const Tensor3& c) {
  const int n = c.dim0();
  Tensor3 ct(2 * n, 2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = c(i, j, k);
        if (v == 0.0) continue;
        ct(i, j, k) = v;
        ct(i, n + j, n + k) = v;
        ct(n + i, j, n + k) = v;
      }
  return ct;
}

StructureConstants tangent_algebra(const StructureConstants& sc) {
  StructureConstants out;
  out.name = sc.name.empty() ? "tangent" : sc.name + "_tangent";
  out.n = 2 * sc.n;
  for (int i = 0; i < sc.n; ++i) out.basis_labels.push_back(sc.label(i) + "c");
  for (int i = 0; i < sc.n; ++i) out.basis_labels.push_back(sc.label(i) + "v");
  const int n = sc.n;
  for (const auto& [key, terms] : sc.brackets) {
    const auto [i, j] = key;
    for (const auto& t : terms) {
      out.brackets[{i, j}].push_back({t.k, t.c});           // [c, c] -> c
      out.brackets[{i, n + j}].push_back({n + t.k, t.c});   // [c, v] -> v
      out.brackets[{j, n + i}].push_back({n + t.k, -t.c});  // [v, c] -> v
    }
  }
  return out;
}

Tensor3 ad_star_table(const AdaptedData& ad) {
  const int m = ad.m;
  const int n = ad.n();
  Tensor3 a(n, n, n);
  auto setP = [&](int i, int j, const Eigen::VectorXd& vec) {
    for (int p = 0; p < m; ++p) a(i, j, 2 + p) += vec(p);
  };
  // The defining identity <ad*_X Y, Z> = <Y, [X, Z]> forces the minus signs
  // on the derived-plane rows.
  setP(0, 0, -ad.a1);
  setP(0, 1, -ad.a2);
  setP(1, 0, -ad.b1);
  setP(1, 1, -ad.b2);
  for (int p = 0; p < m; ++p) {
    a(2 + p, 0, 0) = ad.a1(p);
    a(2 + p, 0, 1) = ad.b1(p);
    setP(2 + p, 0, ad.f1.col(p));
    a(2 + p, 1, 0) = ad.a2(p);
    a(2 + p, 1, 1) = ad.b2(p);
    setP(2 + p, 1, ad.f2.col(p));
  }
  return a;
}

Eigen::VectorXd ad_star(const AdaptedData& ad, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y) {
  const int n = ad.n();
  if (x.size() != n || y.size() != n)
    fail(ErrorCode::DIMENSION_MISMATCH,
         "ad* arguments must have length " + std::to_string(n));
  Tensor3 a = ad_star_table(ad);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (y(j) == 0.0) continue;
      for (int k = 0; k < n; ++k) out(k) += x(i) * y(j) * a(i, j, k);
    }
  }
  return out;
}

ConnectionTable connection_tangent(const AdaptedData& ad) {
  const int n = ad.n();
  const ConnectionTable base = connection_base(ad);
  const Tensor3 c = dense_brackets(reconstruct_structure(ad));
  const Tensor3 a = ad_star_table(ad);

  ConnectionTable ct{2 * n, Tensor3(2 * n, 2 * n, 2 * n)};
  Tensor3& g = ct.g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double gij = base.g(i, j, k);
        g(i, j, k) = gij;                                  // nabla_{Xc} Yc
        g(n + i, n + j, k) = gij - 0.5 * c(i, j, k);       // nabla_{Xv} Yv
        g(i, n + j, n + k) = gij + 0.5 * a(j, i, k);       // nabla_{Xc} Yv
        g(n + i, j, n + k) = gij + 0.5 * a(i, j, k);       // nabla_{Xv} Yc
      }
  return ct;
}

ConnectionTable connection_tangent_tabulated(const AdaptedData& ad) {
  const int m = ad.m;
  const int n = ad.n();
  const int nn = 2 * n;
  ConnectionTable ct{nn, Tensor3(nn, nn, nn)};
  Tensor3& t = ct.g;

  const int E1C = 0, E2C = 1, E1V = n, E2V = n + 1;
  auto setPc = [&](int i, int j, const Eigen::VectorXd& vec) {
    for (int p = 0; p < m; ++p) t(i, j, 2 + p) += vec(p);
  };
  auto setPv = [&](int i, int j, const Eigen::VectorXd& vec) {
    for (int p = 0; p < m; ++p) t(i, j, n + 2 + p) += vec(p);
  };
  const auto& a1 = ad.a1;
  const auto& a2 = ad.a2;
  const auto& b1 = ad.b1;
  const auto& b2 = ad.b2;

  // Derived-plane rows and columns.
  setPc(E1C, E1C, a1);
  setPv(E1C, E1V, 0.5 * a1);
  setPc(E1C, E2C, 0.5 * (a2 + b1));
  setPv(E1C, E2V, 0.5 * a2);
  setPv(E1V, E1C, 0.5 * a1);
  setPc(E1V, E1V, a1);
  setPv(E1V, E2C, 0.5 * b1);
  setPc(E1V, E2V, 0.5 * (a2 + b1));
  setPc(E2C, E1C, 0.5 * (a2 + b1));
  setPv(E2C, E1V, 0.5 * b1);
  setPc(E2C, E2C, b2);
  setPv(E2C, E2V, 0.5 * b2);
  setPv(E2V, E1C, 0.5 * a2);
  setPc(E2V, E1V, 0.5 * (a2 + b1));
  setPv(E2V, E2C, 0.5 * b2);
  setPc(E2V, E2V, b2);

  for (int p = 0; p < m; ++p) {
    const int UC = 2 + p, UV = n + 2 + p;
    const Eigen::VectorXd f1u = ad.f1.col(p);
    const Eigen::VectorXd f2u = ad.f2.col(p);
    // Derived rows, complement columns.
    t(E1C, UC, E1C) = -a1(p);
    t(E1C, UC, E2C) = -0.5 * (b1(p) + a2(p));
    setPc(E1C, UC, -0.5 * f1u);
    t(E1C, UV, E1V) = -0.5 * a1(p);
    t(E1C, UV, E2V) = -0.5 * a2(p);
    t(E1V, UC, E1V) = -a1(p);
    t(E1V, UC, E2V) = -0.5 * (b1(p) + a2(p));
    setPv(E1V, UC, -0.5 * f1u);
    t(E1V, UV, E1C) = -0.5 * a1(p);
    t(E1V, UV, E2C) = -0.5 * b1(p);
    setPc(E1V, UV, -0.5 * f1u);
    t(E2C, UC, E1C) = -0.5 * (b1(p) + a2(p));
    t(E2C, UC, E2C) = -b2(p);
    setPc(E2C, UC, -0.5 * f2u);
    t(E2C, UV, E1V) = -0.5 * b1(p);
    t(E2C, UV, E2V) = -0.5 * b2(p);
    t(E2V, UC, E1V) = -0.5 * (b1(p) + a2(p));
    t(E2V, UC, E2V) = -b2(p);
    setPv(E2V, UC, -0.5 * f2u);
    t(E2V, UV, E1C) = -0.5 * a2(p);
    t(E2V, UV, E2C) = -0.5 * b2(p);
    setPc(E2V, UV, -0.5 * f2u);
    // Complement rows, derived columns.
    t(UC, E1C, E2C) = 0.5 * (a2(p) - b1(p));
    setPc(UC, E1C, -0.5 * f1u);
    t(UC, E1V, E2V) = 0.5 * (a2(p) - b1(p));
    setPv(UC, E1V, -0.5 * f1u);
    t(UC, E2C, E1C) = 0.5 * (b1(p) - a2(p));
    setPc(UC, E2C, -0.5 * f2u);
    t(UC, E2V, E1V) = 0.5 * (b1(p) - a2(p));
    setPv(UC, E2V, -0.5 * f2u);
    t(UV, E1C, E1V) = 0.5 * a1(p);
    t(UV, E1C, E2V) = 0.5 * a2(p);
    t(UV, E1V, E1C) = -0.5 * a1(p);
    t(UV, E1V, E2C) = -0.5 * b1(p);
    setPc(UV, E1V, -0.5 * f1u);
    t(UV, E2C, E1V) = 0.5 * b1(p);
    t(UV, E2C, E2V) = 0.5 * b2(p);
    t(UV, E2V, E1C) = -0.5 * a2(p);
    t(UV, E2V, E2C) = -0.5 * b2(p);
    setPc(UV, E2V, -0.5 * f2u);
    // Complement rows, complement columns.  The (Vc, Uc) cell is the one
    // tabulated with a row-only dependence; it disagrees with the derived
    // connection whenever the bracket maps actually depend on the column.
    for (int q = 0; q < m; ++q) {
      const int VC = 2 + q, VV = n + 2 + q;
      const Eigen::VectorXd f1v = ad.f1.col(q);
      const Eigen::VectorXd f2v = ad.f2.col(q);
      t(VC, UC, E1C) = 0.5 * a2(q);
      t(VC, UC, E2C) = 0.5 * b2(q);
      for (int r = 0; r < m; ++r) t(VC, UC, 2 + r) = 0.5 * f2v(r);
      t(VC, UV, E1V) = 0.5 * f1v(p);
      t(VC, UV, E2V) = 0.5 * f2v(p);
      t(VV, UC, E1V) = 0.5 * f1v(p);
      t(VV, UC, E2V) = 0.5 * f2v(p);
      // (Vv, Uv) vanishes.
    }
  }
  return ct;
}

std::vector<CellDifference> tabulated_connection_differences(
    const AdaptedData& ad, double tol) {
  const int n = ad.n();
  const ConnectionTable tab = connection_tangent_tabulated(ad);
  const ConnectionTable der = connection_tangent(ad);
  auto category = [&](int i) -> std::string {
    if (i < n) return i == 0 ? "e1c" : i == 1 ? "e2c" : "uc";
    i -= n;
    return i == 0 ? "e1v" : i == 1 ? "e2v" : "uv";
  };
  std::map<std::pair<std::string, std::string>, double> worst;
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) {
      double d = 0.0;
      for (int k = 0; k < 2 * n; ++k)
        d = std::max(d, std::abs(tab.g(i, j, k) - der.g(i, j, k)));
      if (d > tol) {
        auto key = std::make_pair(category(i), category(j));
        worst[key] = std::max(worst[key], d);
      }
    }
  std::vector<CellDifference> out;
  for (const auto& [key, d] : worst) out.push_back({key.first, key.second, d});
  return out;
}

TangentGeometry tangent_geometry(const AdaptedData& ad) {
  TangentGeometry tg;
  tg.n = ad.n();
  tg.brackets = tangent_brackets(dense_brackets(reconstruct_structure(ad)));
  tg.conn = connection_tangent(ad);
  tg.curv = curvature_from_connection(tg.conn, tg.brackets);
  return tg;
}

const char* to_string(LiftedSlot s) {
  switch (s) {
    case LiftedSlot::E1C: return "e1c";
    case LiftedSlot::E2C: return "e2c";
    case LiftedSlot::E1V: return "e1v";
    case LiftedSlot::E2V: return "e2v";
    case LiftedSlot::UC: return "uc";
    case LiftedSlot::UV: return "uv";
    case LiftedSlot::VC: return "vc";
    case LiftedSlot::VV: return "vv";
  }
  return "?";
}

bool tangent_case_needs_u(int id) { return id >= 13; }
bool tangent_case_needs_v(int id) { return id >= 13 && id <= 15; }

TangentCurvatureCase tangent_curvature_case(const AdaptedData& ad, int id,
                                            const Eigen::VectorXd& u,
                                            const Eigen::VectorXd& v) {
  if (id < 1 || id > kTangentCurvatureCases)
    fail(ErrorCode::BAD_CASE_ARGS,
         "curvature case id must be in 1.." +
             std::to_string(kTangentCurvatureCases));
  const int m = ad.m;
  const int n = ad.n();
  const int nn = 2 * n;

  const bool wants_v = tangent_case_needs_v(id) || (id == 16 && v.size() > 0);
  if (tangent_case_needs_u(id)) {
    require_unit_complement(u, m, "u");
    if (wants_v && id != 16) {
      require_unit_complement(v, m, "v");
      require_orthogonal(u, v);
    } else if (id == 16 && v.size() > 0) {
      require_unit_complement(v, m, "v");
      require_orthogonal(u, v);
    }
  }

  const auto& a1 = ad.a1;
  const auto& a2 = ad.a2;
  const auto& b1 = ad.b1;
  const auto& b2 = ad.b2;
  const auto& f1 = ad.f1;
  const auto& f2 = ad.f2;
  const double A = 0.25 * (a2 + b1).squaredNorm() - a1.dot(b2);

  Eigen::VectorXd val = Eigen::VectorXd::Zero(nn);
  auto e1c = [&](double s) { val(0) += s; };
  auto e2c = [&](double s) { val(1) += s; };
  auto e1v = [&](double s) { val(n) += s; };
  auto e2v = [&](double s) { val(n + 1) += s; };
  auto pc = [&](const Eigen::VectorXd& w) { val.segment(2, m) += w; };
  auto pv = [&](const Eigen::VectorXd& w) { val.segment(n + 2, m) += w; };

  auto make = [&](LiftedSlot x, LiftedSlot y, LiftedSlot z) {
    return TangentCurvatureCase{x, y, z, val};
  };
  using S = LiftedSlot;

  switch (id) {
    case 1:
      e1c(A);
      pc(-0.25 * (2.0 * f1 * b2 - f2 * a2 - f2 * b1));
      return make(S::E1C, S::E2C, S::E2C);
    case 2:
      e1c(-a1.dot(b2) + 0.25 * a2.squaredNorm());
      e2c(-0.25 * (2.0 * b1 + a2).dot(b2));
      pc(-0.25 * (2.0 * f1 * b2 - f2 * a2));
      return make(S::E1C, S::E2V, S::E2V);
    case 3:
      e1c(-0.75 * a1.squaredNorm());
      e2c(-0.25 * (b1 + 2.0 * a2).dot(a1));
      pc(-0.25 * (f1 * a1));
      return make(S::E1C, S::E1V, S::E1V);
    case 4:
      e1v(A);
      pv(-0.25 * (2.0 * f1 * b2 - f2 * a2 - f2 * b1));
      return make(S::E1V, S::E2V, S::E2V);
    case 5:
      e1v(-a1.dot(b2) + 0.25 * b1.squaredNorm());
      e2v(-0.25 * (b1 + 2.0 * a2).dot(b2));
      pv(-0.5 * (f1 * b2));
      return make(S::E1V, S::E2C, S::E2C);
    case 6:
      e1c(-0.25 * (2.0 * b1 + a2).dot(b2));
      e2c(-0.75 * b2.squaredNorm());
      pc(-0.25 * (f2 * b2));
      return make(S::E2C, S::E2V, S::E2V);
    case 7:
      e1c(-0.25 * a1.dot(b1 + 2.0 * a2));
      e2c(0.25 * b1.squaredNorm() - a1.dot(b2));
      pc(0.25 * (f1 * b1) - 0.5 * (f2 * a1));
      return make(S::E2C, S::E1V, S::E1V);
    case 8:
      e1c(-0.25 * b2.dot(a2 + 2.0 * b1));
      e2c(-0.75 * b2.squaredNorm());
      pc(-0.25 * (f2 * b2));
      return make(S::E2C, S::E2V, S::E2V);
    case 9:
      e1v(-0.25 * (2.0 * a2 + b1).dot(b2));
      e2v(-0.75 * b2.squaredNorm());
      pv(-0.5 * (f2 * b2));
      return make(S::E2V, S::E2C, S::E2C);
    case 10:
      e2v(A);
      pv(0.25 * (f1 * a2) + 0.25 * (f1 * b1) - 0.5 * (f2 * a1));
      return make(S::E2V, S::E1V, S::E1V);
    case 11:
      e1v(-0.25 * a1.dot(a2 + 2.0 * b1));
      e2v(0.25 * a2.squaredNorm() - a1.dot(b2));
      pv(-0.5 * (f2 * a1));
      return make(S::E2V, S::E1C, S::E1C);
    case 12:
      e2c(A);
      pc(-0.25 * (2.0 * f2 * a1 - f1 * a2 - f1 * b1));
      return make(S::E2C, S::E1C, S::E1C);
    default:
      break;
  }

  const double a1u = a1.dot(u), a2u = a2.dot(u), b1u = b1.dot(u),
               b2u = b2.dot(u);
  const Eigen::VectorXd f1u = f1 * u;
  const Eigen::VectorXd f2u = f2 * u;

  if (id >= 13 && id <= 16) {
    if (id == 16) {
      return v.size() > 0 ? make(S::UV, S::VV, S::VV) : make(S::UC, S::UV, S::UV);
    }
    const double f1uv = f1u.dot(v);
    const double f2uv = f2u.dot(v);
    const double a1v = a1.dot(v), a2v = a2.dot(v), b1v = b1.dot(v),
                 b2v = b2.dot(v);
    const Eigen::VectorXd f1v = f1 * v;
    const Eigen::VectorXd f2v = f2 * v;
    switch (id) {
      case 13:
        e1c(0.25 * f2uv * (b1 + 3.0 * a2).dot(v) + f1uv * a1v);
        e2c(0.25 * f1uv * (a2 + 3.0 * b1).dot(v) + f2uv * b2v);
        pc(0.75 * (f1uv * f1v + f2uv * f2v));
        return make(S::UC, S::VC, S::VC);
      case 14:
        e1c(0.75 * (f1uv * a1v + f2uv * a2v));
        e2c(0.75 * (f1uv * b1v + f2uv * b2v));
        pc(0.75 * (f1uv * f1v + f2uv * f2v));
        return make(S::UC, S::VV, S::VV);
      case 15:
        e1v(-0.25 * f2uv * (b1 - a2).dot(v) + f1uv * a1v +
            0.5 * f2uv * (b1 + a2).dot(v));
        e2v(-0.25 * f1uv * (a2 - b1).dot(v) + f2uv * b2v +
            0.5 * f1uv * (b1 + a2).dot(v));
        pv(0.75 * (f1uv * f1v + f2uv * f2v));
        return make(S::UV, S::VC, S::VC);
      default:
        break;
    }
  }

  switch (id) {
    case 17: {
      pc(-0.25 * (f1 * f1u) - a1u * a1 + 0.25 * (b1 - 3.0 * a2).dot(u) * (a2 + b1));
      e2c(0.25 * u.dot(f1 * (a2 + b1) - 2.0 * (f2 * a1)));
      return make(S::UC, S::E1C, S::E1C);
    }
    case 18: {
      pc(0.25 * (b1 - 3.0 * a2).dot(u) * (a2 + b1) - a1u * a1 - 0.25 * (f1 * f1u));
      e1c(-0.25 * u.dot(f1 * a1));
      e2c(0.25 * u.dot(f1 * b1 - 2.0 * (f2 * a1)));
      return make(S::UC, S::E1V, S::E1V);
    }
    case 19: {
      pc(-0.25 * (f2 * f2u) - b2u * b2 + 0.25 * (a2 - 3.0 * b1).dot(u) * (a2 + b1));
      e1c(0.25 * u.dot(f2 * (b1 + a2) - 2.0 * (f1 * b2)));
      return make(S::UC, S::E2C, S::E2C);
    }
    case 20: {
      pc(-0.25 * (f2 * f2u) - b2u * b2 + 0.25 * (a2 - 3.0 * b1).dot(u) * (a2 + b1));
      e1c(0.25 * u.dot(f2 * a2 - 2.0 * (f1 * b2)));
      e2c(-0.25 * u.dot(f2 * b2));
      return make(S::UC, S::E2V, S::E2V);
    }
    case 21:
      e1v(-0.5 * u.dot(f1 * a1));
      e2v(-0.5 * u.dot(f2 * a1));
      pv(-0.75 * (a1u * a1 + a2u * a2));
      return make(S::UV, S::E1C, S::E1C);
    case 22:
      e2v(0.25 * u.dot(f1 * (a2 + b1) - 2.0 * (f2 * a1)));
      pv(0.25 * (b1u * b1 + a1u * a1 - f1 * f1u));
      return make(S::UV, S::E1V, S::E1V);
    case 23:
      e1v(-0.5 * u.dot(f1 * b2));
      e2v(-0.5 * u.dot(f2 * b2));
      pv(-0.75 * (b1u * b1 + b2u * b2));
      return make(S::UV, S::E2C, S::E2C);
    case 24:
      e1v(0.25 * u.dot(f2 * (a2 + b1) - 2.0 * (f1 * b2)));
      pv(0.25 * (a2u * a2 + b2u * b2 - f2 * f2u));
      return make(S::UV, S::E2V, S::E2V);
    case 25:
      e1c(-0.75 * (a1u * b1u + a2u * b2u));
      e2c(-0.75 * (b1u * b1u + b2u * b2u));
      pc(-0.75 * (b1u * f1u + b2u * f2u));
      return make(S::E2C, S::UV, S::UV);
    default:
      break;
  }

  const double s1 = 0.5 * b2u * (b1 - a2).dot(u) + 0.25 * f1u.dot(f2u) -
                    a1u * b1u - 0.5 * b2u * (b1 + a2).dot(u);
  const double s2 = -0.5 * b1u * (b1 + a2).dot(u) - b2u * b2u +
                    0.25 * (b1 + a2).dot(u) * (a2 - b1).dot(u) +
                    0.25 * f2u.squaredNorm();
  switch (id) {
    case 26:
      e1c(s1);
      e2c(s2);
      pc(-0.25 * (a2 + 3.0 * b1).dot(u) * f1u - b2u * f2u);
      return make(S::E2C, S::UC, S::UC);
    case 27:
      e1v(0.25 * (a1u * a2u + b1u * b2u + f1u.dot(f2u)));
      e2v(0.25 * (a2u * a2u + b2u * b2u + f2u.squaredNorm()));
      return make(S::E2V, S::UV, S::UV);
    case 28:
      e1v(s1);
      e2v(s2);
      pv(-0.25 * (a2 + 3.0 * b1).dot(u) * f1u - b2u * f2u);
      return make(S::E2V, S::UC, S::UC);
    case 29:
      e1v(0.25 * (a1u * a1u + b1u * b1u + f1u.squaredNorm()));
      e2v(0.25 * (a1u * a2u + b1u * b2u + f1u.dot(f2u)));
      return make(S::E1V, S::UV, S::UV);
    case 30: {
      const double t1 = -0.5 * a2u * (b1 + a2).dot(u) - a1u * a1u +
                        0.25 * (b1 + a2).dot(u) * (b1 - a2).dot(u) +
                        0.25 * f1u.squaredNorm();
      const double t2 = 0.5 * a1u * (a2 - b1).dot(u) + 0.25 * f1u.dot(f2u) -
                        a2u * b2u - 0.5 * a1u * (b1 + a2).dot(u);
      e1v(t1);
      e2v(t2);
      pv(-0.25 * (b1 + 3.0 * a2).dot(u) * f2u - a1u * f1u);
      return make(S::E1V, S::UC, S::UC);
    }
    default:
      break;
  }
  fail(ErrorCode::BAD_CASE_ARGS, "unhandled curvature case");
}

TangentPlane tangent_plane_from_string(const std::string& s) {
  static const std::pair<const char*, TangentPlane> table[] = {
      {"e1c,e2c", TangentPlane::E1C_E2C}, {"e1v,e2v", TangentPlane::E1V_E2V},
      {"e1c,e2v", TangentPlane::E1C_E2V}, {"e1v,e2c", TangentPlane::E1V_E2C},
      {"e1c,e1v", TangentPlane::E1C_E1V}, {"e2c,e2v", TangentPlane::E2C_E2V},
      {"uc,e1c", TangentPlane::UC_E1C},   {"uc,e1v", TangentPlane::UC_E1V},
      {"uc,e2c", TangentPlane::UC_E2C},   {"uc,e2v", TangentPlane::UC_E2V},
      {"uv,e1c", TangentPlane::UV_E1C},   {"uv,e2c", TangentPlane::UV_E2C},
      {"uv,e1v", TangentPlane::UV_E1V},   {"uv,e2v", TangentPlane::UV_E2V},
      {"uc,vc", TangentPlane::UC_VC},     {"uc,vv", TangentPlane::UC_VV},
      {"uv,vv", TangentPlane::UV_VV},     {"uc,uv", TangentPlane::UC_UV},
  };
  for (const auto& [name, p] : table)
    if (s == name) return p;
  fail(ErrorCode::BAD_CASE_ARGS, "unknown tangent plane pattern '" + s + "'");
}

const char* to_string(TangentPlane p) {
  switch (p) {
    case TangentPlane::E1C_E2C: return "e1c,e2c";
    case TangentPlane::E1V_E2V: return "e1v,e2v";
    case TangentPlane::E1C_E2V: return "e1c,e2v";
    case TangentPlane::E1V_E2C: return "e1v,e2c";
    case TangentPlane::E1C_E1V: return "e1c,e1v";
    case TangentPlane::E2C_E2V: return "e2c,e2v";
    case TangentPlane::UC_E1C: return "uc,e1c";
    case TangentPlane::UC_E1V: return "uc,e1v";
    case TangentPlane::UC_E2C: return "uc,e2c";
    case TangentPlane::UC_E2V: return "uc,e2v";
    case TangentPlane::UV_E1C: return "uv,e1c";
    case TangentPlane::UV_E2C: return "uv,e2c";
    case TangentPlane::UV_E1V: return "uv,e1v";
    case TangentPlane::UV_E2V: return "uv,e2v";
    case TangentPlane::UC_VC: return "uc,vc";
    case TangentPlane::UC_VV: return "uc,vv";
    case TangentPlane::UV_VV: return "uv,vv";
    case TangentPlane::UC_UV: return "uc,uv";
  }
  return "?";
}

bool tangent_plane_needs_u(TangentPlane p) {
  switch (p) {
    case TangentPlane::E1C_E2C:
    case TangentPlane::E1V_E2V:
    case TangentPlane::E1C_E2V:
    case TangentPlane::E1V_E2C:
    case TangentPlane::E1C_E1V:
    case TangentPlane::E2C_E2V:
      return false;
    default:
      return true;
  }
}

bool tangent_plane_needs_v(TangentPlane p) {
  return p == TangentPlane::UC_VC || p == TangentPlane::UC_VV ||
         p == TangentPlane::UV_VV;
}

double tangent_sectional_closed(const AdaptedData& ad, TangentPlane p,
                                const Eigen::VectorXd& u,
                                const Eigen::VectorXd& v) {
  const auto& a1 = ad.a1;
  const auto& a2 = ad.a2;
  const auto& b1 = ad.b1;
  const auto& b2 = ad.b2;
  const double A = 0.25 * (a2 + b1).squaredNorm() - a1.dot(b2);

  if (tangent_plane_needs_u(p)) require_unit_complement(u, ad.m, "u");
  if (tangent_plane_needs_v(p)) {
    require_unit_complement(v, ad.m, "v");
    require_orthogonal(u, v);
  }

  switch (p) {
    case TangentPlane::E1C_E2C:
    case TangentPlane::E1V_E2V:
      return A;
    case TangentPlane::E1C_E2V:
      return 0.25 * a2.squaredNorm() - a1.dot(b2);
    case TangentPlane::E1V_E2C:
      return 0.25 * b1.squaredNorm() - a1.dot(b2);
    case TangentPlane::E1C_E1V:
      return -0.75 * a1.squaredNorm();
    case TangentPlane::E2C_E2V:
      return -0.75 * b2.squaredNorm();
    case TangentPlane::UC_E1C:
    case TangentPlane::UC_E1V: {
      const double a1u = a1.dot(u);
      return 0.25 * (ad.f1 * u).squaredNorm() - a1u * a1u +
             0.25 * (a2 + b1).dot(u) * (b1 - 3.0 * a2).dot(u);
    }
    case TangentPlane::UC_E2C:
    case TangentPlane::UC_E2V: {
      const double b2u = b2.dot(u);
      return 0.25 * (ad.f2 * u).squaredNorm() - b2u * b2u +
             0.25 * (a2 + b1).dot(u) * (a2 - 3.0 * b1).dot(u);
    }
    case TangentPlane::UV_E1C: {
      const double a1u = a1.dot(u), a2u = a2.dot(u);
      return -0.75 * (a1u * a1u + a2u * a2u);
    }
    case TangentPlane::UV_E2C: {
      const double b1u = b1.dot(u), b2u = b2.dot(u);
      return -0.75 * (b1u * b1u + b2u * b2u);
    }
    case TangentPlane::UV_E1V: {
      const double a1u = a1.dot(u), b1u = b1.dot(u);
      return 0.25 * ((ad.f1 * u).squaredNorm() + a1u * a1u + b1u * b1u);
    }
    case TangentPlane::UV_E2V: {
      const double a2u = a2.dot(u), b2u = b2.dot(u);
      return 0.25 * ((ad.f2 * u).squaredNorm() + a2u * a2u + b2u * b2u);
    }
    case TangentPlane::UC_VC:
    case TangentPlane::UC_VV: {
      const double f1uv = (ad.f1 * u).dot(v);
      const double f2uv = (ad.f2 * u).dot(v);
      return -0.75 * (f1uv * f1uv + f2uv * f2uv);
    }
    case TangentPlane::UV_VV:
    case TangentPlane::UC_UV:
      return 0.0;
  }
  fail(ErrorCode::BAD_CASE_ARGS, "unhandled tangent plane pattern");
}

RelationReport curvature_relations(const AdaptedData& ad, double tol) {
  const int m = ad.m;
  const int n = ad.n();
  const Tensor3 c = dense_brackets(reconstruct_structure(ad));
  const ConnectionTable conn = connection_base(ad);
  const CurvatureTensor r = curvature_from_connection(conn, c);
  const TangentGeometry tg = tangent_geometry(ad);

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

  RelationReport rep;
  auto take = [&](double base_k, double lifted_k) {
    rep.max_deviation = std::max(rep.max_deviation, std::abs(lifted_k - base_k));
    ++rep.planes_checked;
    if (base_k > tol)
      rep.has_positive = true;
    else if (base_k < -tol)
      rep.has_negative = true;
    else
      rep.has_zero = true;
  };

  const double k12 = sectional(r, e1, e2);
  take(k12, sectional(tg.curv, lift_c(e1), lift_c(e2)));
  take(k12, sectional(tg.curv, lift_v(e1), lift_v(e2)));
  for (int p = 0; p < m; ++p) {
    const Eigen::VectorXd up = Eigen::VectorXd::Unit(n, 2 + p);
    for (const Eigen::VectorXd& e : {e1, e2}) {
      const double kb = sectional(r, up, e);
      take(kb, sectional(tg.curv, lift_c(up), lift_c(e)));
      take(kb, sectional(tg.curv, lift_c(up), lift_v(e)));
    }
    for (int q = 0; q < m; ++q) {
      if (q == p) continue;
      const Eigen::VectorXd vq = Eigen::VectorXd::Unit(n, 2 + q);
      const double kb = sectional(r, up, vq);
      take(kb, sectional(tg.curv, lift_c(up), lift_c(vq)));
      take(kb, sectional(tg.curv, lift_c(up), lift_v(vq)));
    }
  }
  return rep;
}

bool tangent_ricci_needs_u(int id) {
  return id == 5 || id == 6 || (id >= 9 && id <= 14);
}
bool tangent_ricci_needs_v(int id) { return id == 9 || id == 10; }

double tangent_ricci_closed(const AdaptedData& ad,
                            const Eigen::MatrixXd& base_ricci, int id,
                            const Eigen::VectorXd& u,
                            const Eigen::VectorXd& v) {
  if (id < 1 || id > kTangentRicciEntries)
    fail(ErrorCode::BAD_CASE_ARGS,
         "Ricci entry id must be in 1.." + std::to_string(kTangentRicciEntries));
  const int n = ad.n();
  if (base_ricci.rows() != n || base_ricci.cols() != n)
    fail(ErrorCode::DIMENSION_MISMATCH, "base Ricci matrix must be n x n");
  if (tangent_ricci_needs_u(id) && u.size() != ad.m)
    fail(ErrorCode::BAD_CASE_ARGS,
         "u must be a complement vector of length " + std::to_string(ad.m));
  if (tangent_ricci_needs_v(id) && v.size() != ad.m)
    fail(ErrorCode::BAD_CASE_ARGS,
         "v must be a complement vector of length " + std::to_string(ad.m));

  const auto& a1 = ad.a1;
  const auto& a2 = ad.a2;
  const auto& b1 = ad.b1;
  const auto& b2 = ad.b2;
  const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(n, 0);
  const Eigen::VectorXd e2 = Eigen::VectorXd::Unit(n, 1);

  switch (id) {
    case 1:
      return base_ricci(0, 0) -
             0.5 * (3.0 * a1.squaredNorm() + a2.squaredNorm()) - a1.dot(b2);
    case 2:
      return base_ricci(1, 1) -
             0.5 * (3.0 * b2.squaredNorm() + b1.squaredNorm()) - a1.dot(b2);
    case 3:
      return 2.0 * base_ricci(0, 0) +
             0.5 * (a1.squaredNorm() + a2.squaredNorm());
    case 4:
      return 2.0 * base_ricci(1, 1) +
             0.5 * (b1.squaredNorm() + b2.squaredNorm());
    case 5: {
      const Eigen::VectorXd uu = embed_complement(u, n);
      return 2.0 * uu.dot(base_ricci * uu);
    }
    case 6: {
      const Eigen::VectorXd uu = embed_complement(u, n);
      const double a1u = a1.dot(u), b2u = b2.dot(u), a2u = a2.dot(u),
                   b1u = b1.dot(u);
      return uu.dot(base_ricci * uu) +
             0.5 * (a1u * a1u + b2u * b2u + 2.0 * a2u * b1u);
    }
    case 7:
      return base_ricci(0, 1) -
             0.5 * (a1.dot(a2 + 2.0 * b1) + b2.dot(b1 + 2.0 * a2));
    case 8:
      return 2.0 * base_ricci(0, 1) + 0.5 * (a1.dot(b1) + a2.dot(b2));
    case 9: {
      const Eigen::VectorXd uu = embed_complement(u, n);
      const Eigen::VectorXd vv = embed_complement(v, n);
      return 2.0 * uu.dot(base_ricci * vv);
    }
    case 10: {
      const Eigen::VectorXd uu = embed_complement(u, n);
      const Eigen::VectorXd vv = embed_complement(v, n);
      return uu.dot(base_ricci * vv) +
             0.5 * (a1.dot(u) * a1.dot(v) + b2.dot(u) * b2.dot(v) +
                    b1.dot(u) * a2.dot(v) + a2.dot(u) * b1.dot(v));
    }
    case 11:
      return 2.0 * e1.dot(base_ricci * embed_complement(u, n));
    case 12:
      return 2.0 * e2.dot(base_ricci * embed_complement(u, n));
    case 13:
      return e1.dot(base_ricci * embed_complement(u, n)) -
             0.5 * u.dot(ad.f1 * (a1 + b2));
    case 14:
      return e2.dot(base_ricci * embed_complement(u, n)) -
             0.5 * u.dot(ad.f2 * (a1 + b2));
    case 15:
      return 0.0;
  }
  fail(ErrorCode::BAD_CASE_ARGS, "unhandled Ricci entry");
}

std::pair<int, int> tangent_ricci_entry_indices(int n, int id, int p, int q) {
  switch (id) {
    case 1: return {0, 0};
    case 2: return {1, 1};
    case 3: return {n, n};
    case 4: return {n + 1, n + 1};
    case 5: return {2 + p, 2 + p};
    case 6: return {n + 2 + p, n + 2 + p};
    case 7: return {0, 1};
    case 8: return {n, n + 1};
    case 9: return {2 + p, 2 + q};
    case 10: return {n + 2 + p, n + 2 + q};
    case 11: return {0, 2 + p};
    case 12: return {1, 2 + p};
    case 13: return {n, n + 2 + p};
    case 14: return {n + 1, n + 2 + p};
    case 15: return {0, n};
  }
  fail(ErrorCode::BAD_CASE_ARGS, "unhandled Ricci entry");
}

}  // namespace liegeo
