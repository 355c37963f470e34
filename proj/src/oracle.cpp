#include "liegeo/oracle.hpp"

#include <cmath>

#include "liegeo/errors.hpp"

namespace liegeo::oracle {

Tensor3 bracket_tensor(const StructureConstants& sc) {
  Tensor3 c(sc.n, sc.n, sc.n);
  for (const auto& [key, terms] : sc.brackets)
    for (const auto& t : terms) {
      c(key.first, key.second, t.k) += t.c;
      c(key.second, key.first, t.k) -= t.c;
    }
  return c;
}

Tensor3 doubled_bracket_tensor(const Tensor3& c) {
  const int n = c.dim0();
  Tensor3 ct(2 * n, 2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = c(i, j, k);
        if (v == 0.0) continue;
        ct(i, j, k) = v;              // [Xc, Yc] = [X,Y]c
        ct(i, n + j, n + k) = v;      // [Xc, Yv] = [X,Y]v
        ct(n + i, j, n + k) = v;      // [Xv, Yc] = [X,Y]v
      }
  return ct;
}

double jacobi_defect_dense(const Tensor3& c) {
  const int n = c.dim0();
  double worst = 0.0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int k = 0; k < n; ++k) {
          double s = 0.0;
          for (int l = 0; l < n; ++l)
            s += c(x, y, l) * c(l, z, k) + c(y, z, l) * c(l, x, k) +
                 c(z, x, l) * c(l, y, k);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

Tensor3 koszul_connection(const Tensor3& c) {
  const int n = c.dim0();
  Tensor3 g(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        g(i, j, k) = 0.5 * (c(i, j, k) - c(j, k, i) + c(k, i, j));
  return g;
}

Tensor4 curvature_tensor(const Tensor3& conn, const Tensor3& c) {
  const int n = conn.dim0();
  // a[i](k, j) = <nabla_{b_i} b_j, b_k>, so nabla_{b_i} acts on coordinate
  // vectors as the matrix a[i].
  std::vector<Eigen::MatrixXd> a(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) a[i](k, j) = conn(i, j, k);

  Tensor4 r(n, n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd rij = a[i] * a[j] - a[j] * a[i];
      for (int t = 0; t < n; ++t)
        if (c(i, j, t) != 0.0) rij -= c(i, j, t) * a[t];
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) r(i, j, k, l) = rij(l, k);
    }
  return r;
}

double sectional_value(const Tensor4& r, const Eigen::VectorXd& u,
                       const Eigen::VectorXd& v) {
  const int n = r.dim0();
  if (u.size() != n || v.size() != n)
    fail(ErrorCode::DIMENSION_MISMATCH, "sectional arguments must have length " +
                                            std::to_string(n));
  const double gram =
      u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
  if (gram <= 1e-12)
    fail(ErrorCode::DEGENERATE_PLANE,
         "plane spanned by the given vectors is degenerate");
  double num = 0.0;
  for (int i = 0; i < n; ++i) {
    if (u(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (v(j) == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        if (v(k) == 0.0) continue;
        for (int l = 0; l < n; ++l)
          num += u(i) * v(j) * v(k) * u(l) * r(i, j, k, l);
      }
    }
  }
  return num / gram;
}

Eigen::MatrixXd ricci_matrix(const Tensor4& r) {
  const int n = r.dim0();
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) ric(i, j) += r(m, i, j, m);
  return ric;
}

Eigen::VectorXd brute_ad_star(const Tensor3& c, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y) {
  const int n = c.dim0();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (x(i) == 0.0) continue;
      for (int l = 0; l < n; ++l) s += x(i) * c(i, k, l) * y(l);
    }
    out(k) = s;
  }
  return out;
}

double parallel_residual(const Tensor3& conn, const Eigen::VectorXd& x) {
  const int n = conn.dim0();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += x(j) * conn(i, j, k);
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

Eigen::MatrixXd parallel_space(const Tensor3& conn, double tol) {
  const int n = conn.dim0();
  Eigen::MatrixXd m(n * n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) m(i * n + k, j) = conn(i, j, k);
  return null_space(m, tol);
}

Eigen::MatrixXd center_space(const Tensor3& c, double tol) {
  const int n = c.dim0();
  // [X, b_i] = sum_j X_j [b_j, b_i]; stack the maps X -> [X, b_i].
  Eigen::MatrixXd m(n * n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) m(i * n + k, j) = c(j, i, k);
  return null_space(m, tol);
}

}  // namespace liegeo::oracle
