#include "liegeo/base_geometry.hpp"

#include <cmath>

#include "liegeo/errors.hpp"
#include "liegeo/kernels.hpp"

namespace liegeo {

namespace {

void require_unit(const Eigen::VectorXd& u, int m, const char* what) {
  if (u.size() != m)
    fail(ErrorCode::BAD_CASE_ARGS,
         std::string(what) + " must be a complement vector of length " +
             std::to_string(m));
  if (std::abs(u.norm() - 1.0) > 1e-9)
    fail(ErrorCode::BAD_CASE_ARGS, std::string(what) + " must be a unit vector");
}

}  // namespace

ConnectionTable connection_base(const AdaptedData& ad) {
  const int m = ad.m;
  const int n = ad.n();
  ConnectionTable ct{n, Tensor3(n, n, n)};
  Tensor3& g = ct.g;

  auto setP = [&](int i, int j, const Eigen::VectorXd& vec) {
    for (int p = 0; p < m; ++p) g(i, j, 2 + p) += vec(p);
  };

  // nabla within the derived plane.
  setP(0, 0, ad.a1);
  setP(0, 1, 0.5 * (ad.a2 + ad.b1));
  setP(1, 0, 0.5 * (ad.a2 + ad.b1));
  setP(1, 1, ad.b2);

  for (int p = 0; p < m; ++p) {
    const int up = 2 + p;
    const Eigen::VectorXd f1u = ad.f1.col(p);
    const Eigen::VectorXd f2u = ad.f2.col(p);
    // nabla_{e_1} u_p = -(a1_p e1 + (b1_p + a2_p)/2 e2 + f1(u_p)/2)
    g(0, up, 0) = -ad.a1(p);
    g(0, up, 1) = -0.5 * (ad.b1(p) + ad.a2(p));
    setP(0, up, -0.5 * f1u);
    // nabla_{e_2} u_p
    g(1, up, 1) = -ad.b2(p);
    g(1, up, 0) = -0.5 * (ad.b1(p) + ad.a2(p));
    setP(1, up, -0.5 * f2u);
    // nabla_{u_p} e_1 and e_2
    g(up, 0, 1) = 0.5 * (ad.a2(p) - ad.b1(p));
    setP(up, 0, -0.5 * f1u);
    g(up, 1, 0) = 0.5 * (ad.b1(p) - ad.a2(p));
    setP(up, 1, -0.5 * f2u);
    // nabla_{u_p} u_q = ((f1 u_p)_q e1 + (f2 u_p)_q e2)/2
    for (int q = 0; q < m; ++q) {
      g(up, 2 + q, 0) = 0.5 * f1u(q);
      g(up, 2 + q, 1) = 0.5 * f2u(q);
    }
  }
  return ct;
}

CurvatureTensor curvature_from_connection(const ConnectionTable& conn,
                                          const Tensor3& brackets) {
  return CurvatureTensor{conn.n,
                         kernels::assemble_curvature(conn.g, brackets)};
}

double sectional(const CurvatureTensor& r, const Eigen::VectorXd& u,
                 const Eigen::VectorXd& v) {
  const int n = r.n;
  if (u.size() != n || v.size() != n)
    fail(ErrorCode::DIMENSION_MISMATCH,
         "sectional arguments must have length " + std::to_string(n));
  const double gram = u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
  if (gram <= 1e-12)
    fail(ErrorCode::DEGENERATE_PLANE,
         "plane spanned by the given vectors is degenerate");
  // m(i,l) = sum_{j,k} v_j v_k r(i,j,k,l); numerator = u^T m u.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    if (v(j) == 0.0) continue;
    for (int k = 0; k < n; ++k) {
      if (v(k) == 0.0) continue;
      const double w = v(j) * v(k);
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) m(i, l) += w * r.r(i, j, k, l);
    }
  }
  return u.dot(m * u) / gram;
}

Eigen::MatrixXd ricci_base(const CurvatureTensor& r) {
  const int n = r.n;
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ric(i, j) += r.r(m, i, j, m);
  return ric;
}

double scalar_curvature(const CurvatureTensor& r) {
  return ricci_base(r).trace();
}

BaseSectionalCase base_sectional_case_from_string(const std::string& s) {
  if (s == "e1e2") return BaseSectionalCase::E1E2;
  if (s == "e1u") return BaseSectionalCase::E1U;
  if (s == "e2u") return BaseSectionalCase::E2U;
  if (s == "uv") return BaseSectionalCase::UV;
  fail(ErrorCode::BAD_CASE_ARGS, "unknown sectional case '" + s + "'");
}

const char* to_string(BaseSectionalCase c) {
  switch (c) {
    case BaseSectionalCase::E1E2: return "e1e2";
    case BaseSectionalCase::E1U: return "e1u";
    case BaseSectionalCase::E2U: return "e2u";
    case BaseSectionalCase::UV: return "uv";
  }
  return "?";
}

double sectional_closed_base(const AdaptedData& ad, BaseSectionalCase c,
                             const Eigen::VectorXd& u,
                             const Eigen::VectorXd& v) {
  const auto& a1 = ad.a1;
  const auto& a2 = ad.a2;
  const auto& b1 = ad.b1;
  const auto& b2 = ad.b2;
  switch (c) {
    case BaseSectionalCase::E1E2:
      return 0.25 * (a2 + b1).squaredNorm() - a1.dot(b2);
    case BaseSectionalCase::E1U: {
      require_unit(u, ad.m, "u");
      const double a1u = a1.dot(u), a2u = a2.dot(u), b1u = b1.dot(u);
      return 0.25 * (b1u * b1u - 3.0 * a2u * a2u +
                     (ad.f1 * u).squaredNorm()) -
             a1u * a1u - 0.5 * a2u * b1u;
    }
    case BaseSectionalCase::E2U: {
      require_unit(u, ad.m, "u");
      const double b2u = b2.dot(u), a2u = a2.dot(u), b1u = b1.dot(u);
      return 0.25 * (a2u * a2u - 3.0 * b1u * b1u +
                     (ad.f2 * u).squaredNorm()) -
             b2u * b2u - 0.5 * a2u * b1u;
    }
    case BaseSectionalCase::UV: {
      require_unit(u, ad.m, "u");
      require_unit(v, ad.m, "v");
      if (std::abs(u.dot(v)) > 1e-9)
        fail(ErrorCode::BAD_CASE_ARGS, "u and v must be orthogonal");
      const double f1uv = (ad.f1 * u).dot(v);
      const double f2uv = (ad.f2 * u).dot(v);
      return -0.75 * (f1uv * f1uv + f2uv * f2uv);
    }
  }
  fail(ErrorCode::BAD_CASE_ARGS, "unhandled sectional case");
}

GeodesicResult geodesic_check(const ConnectionTable& conn,
                              const Eigen::VectorXd& x, double tol) {
  const int n = conn.n;
  if (x.size() != n)
    fail(ErrorCode::DIMENSION_MISMATCH,
         "vector must have length " + std::to_string(n));
  if (x.norm() <= 1e-12) fail(ErrorCode::ZERO_VECTOR, "zero vector");
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (x(i) == 0.0) continue;
      for (int j = 0; j < n; ++j) s += x(i) * x(j) * conn.g(i, j, k);
    }
    worst = std::max(worst, std::abs(s));
  }
  return {worst <= tol, worst};
}

double derived_geodesic_defect(const AdaptedData& ad, double lam, double mu) {
  Eigen::VectorXd q =
      lam * lam * ad.a1 + lam * mu * (ad.a2 + ad.b1) + mu * mu * ad.b2;
  return max_abs(q);
}

double unimodularity_defect(const AdaptedData& ad) {
  return max_abs(Eigen::VectorXd(ad.a1 + ad.b2));
}

bool is_unimodular(const AdaptedData& ad, double tol) {
  return unimodularity_defect(ad) <= tol;
}

std::vector<ObstructionTerm> biinvariance_obstruction(const AdaptedData& ad,
                                                      double tol) {
  std::vector<ObstructionTerm> out;
  auto push = [&](const char* cond, double mag) {
    if (mag > tol) out.push_back({cond, mag});
  };
  push("f1 = 0", max_abs(ad.f1));
  push("f2 = 0", max_abs(ad.f2));
  push("a1 = 0", max_abs(ad.a1));
  push("b2 = 0", max_abs(ad.b2));
  push("a2 + b1 = 0", max_abs(Eigen::VectorXd(ad.a2 + ad.b1)));
  push("b1 = 0", max_abs(ad.b1));
  push("a2 = 0", max_abs(ad.a2));
  return out;
}

double metric_compatibility_defect(const ConnectionTable& conn) {
  // <nabla_i j, k> + <nabla_i k, j> = 0 in an orthonormal frame.
  const int n = conn.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(conn.g(i, j, k) + conn.g(i, k, j)));
  return worst;
}

double torsion_defect(const ConnectionTable& conn, const Tensor3& brackets) {
  // nabla_i j - nabla_j i = [b_i, b_j].
  const int n = conn.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(conn.g(i, j, k) - conn.g(j, i, k) -
                                         brackets(i, j, k)));
  return worst;
}

double first_slot_antisymmetry_defect(const CurvatureTensor& r) {
  const int n = r.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          worst = std::max(worst, std::abs(r.r(i, j, k, l) + r.r(j, i, k, l)));
  return worst;
}

double last_slot_antisymmetry_defect(const CurvatureTensor& r) {
  const int n = r.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          worst = std::max(worst, std::abs(r.r(i, j, k, l) + r.r(i, j, l, k)));
  return worst;
}

double pair_symmetry_defect(const CurvatureTensor& r) {
  const int n = r.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          worst = std::max(worst, std::abs(r.r(i, j, k, l) - r.r(k, l, i, j)));
  return worst;
}

double first_bianchi_defect(const CurvatureTensor& r) {
  const int n = r.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          worst = std::max(worst, std::abs(r.r(i, j, k, l) + r.r(j, k, i, l) +
                                           r.r(k, i, j, l)));
  return worst;
}

}  // namespace liegeo
