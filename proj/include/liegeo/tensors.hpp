#pragma once

#include <Eigen/Dense>
#include <cassert>
#include <cstddef>
#include <vector>

namespace liegeo {

// Dense rank-3 tensor with contiguous row-major storage.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int d0, int d1, int d2)
      : d0_(d0), d1_(d1), d2_(d2),
        v_(static_cast<std::size_t>(d0) * d1 * d2, 0.0) {}

  double& operator()(int i, int j, int k) {
    assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_);
    return v_[(static_cast<std::size_t>(i) * d1_ + j) * d2_ + k];
  }
  double operator()(int i, int j, int k) const {
    assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_);
    return v_[(static_cast<std::size_t>(i) * d1_ + j) * d2_ + k];
  }

  int dim0() const { return d0_; }
  int dim1() const { return d1_; }
  int dim2() const { return d2_; }
  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

 private:
  int d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<double> v_;
};

// Dense rank-4 tensor with contiguous row-major storage.
class Tensor4 {
 public:
  Tensor4() = default;
  Tensor4(int d0, int d1, int d2, int d3)
      : d0_(d0), d1_(d1), d2_(d2), d3_(d3),
        v_(static_cast<std::size_t>(d0) * d1 * d2 * d3, 0.0) {}

  double& operator()(int i, int j, int k, int l) {
    assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_ &&
           l >= 0 && l < d3_);
    return v_[((static_cast<std::size_t>(i) * d1_ + j) * d2_ + k) * d3_ + l];
  }
  double operator()(int i, int j, int k, int l) const {
    assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_ &&
           l >= 0 && l < d3_);
    return v_[((static_cast<std::size_t>(i) * d1_ + j) * d2_ + k) * d3_ + l];
  }

  int dim0() const { return d0_; }
  int dim1() const { return d1_; }
  int dim2() const { return d2_; }
  int dim3() const { return d3_; }
  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

 private:
  int d0_ = 0, d1_ = 0, d2_ = 0, d3_ = 0;
  std::vector<double> v_;
};

// Levi-Civita connection in an orthonormal frame b_0..b_{n-1}:
// g(i,j,k) = <nabla_{b_i} b_j, b_k>.
struct ConnectionTable {
  int n = 0;
  Tensor3 g;
};

// Curvature in an orthonormal frame: r(i,j,k,l) = <R(b_i,b_j) b_k, b_l>
// with R(X,Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y].
struct CurvatureTensor {
  int n = 0;
  Tensor4 r;
};

// Element of the doubled algebra attached to the tangent group: a complete
// part and a vertical part, each expressed in base coordinates.
struct TangentVector {
  Eigen::VectorXd c_part;
  Eigen::VectorXd v_part;

  TangentVector() = default;
  explicit TangentVector(int n)
      : c_part(Eigen::VectorXd::Zero(n)), v_part(Eigen::VectorXd::Zero(n)) {}

  Eigen::VectorXd stacked() const {
    Eigen::VectorXd out(c_part.size() + v_part.size());
    out << c_part, v_part;
    return out;
  }
};

inline double max_abs(const Eigen::VectorXd& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}
inline double max_abs(const Eigen::MatrixXd& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace liegeo
