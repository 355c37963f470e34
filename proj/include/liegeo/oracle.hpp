#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "liegeo/structure.hpp"
#include "liegeo/tensors.hpp"

// Brute-force reference computations used to check every closed-form result
// in this library.  Everything here works straight from structure constants
// via the Koszul formula and dense tensor contraction; nothing in this
// namespace calls into the closed-form modules.
namespace liegeo::oracle {

// Dense bracket tensor built independently of liegeo::dense_brackets.
Tensor3 bracket_tensor(const StructureConstants& sc);

// Doubled bracket tensor of the tangent-group algebra: indices 0..n-1 are
// complete lifts, n..2n-1 vertical lifts, with
// [Xc,Yc]=[X,Y]c, [Xc,Yv]=[X,Y]v, [Xv,Yv]=0.
Tensor3 doubled_bracket_tensor(const Tensor3& c);

// Jacobi defect computed over all ordered triples (second, independent
// formulation of the same invariant).
double jacobi_defect_dense(const Tensor3& c);

// Koszul formula in an orthonormal frame:
//   2 <nabla_i j, k> = c(i,j,k) - c(j,k,i) + c(k,i,j).
Tensor3 koszul_connection(const Tensor3& c);

// Curvature assembled through connection matrices (matrix products rather
// than the row kernel used by the main library).
Tensor4 curvature_tensor(const Tensor3& conn, const Tensor3& c);

// <R(u,v)v, u> / (|u|^2 |v|^2 - <u,v>^2); throws DEGENERATE_PLANE.
double sectional_value(const Tensor4& r, const Eigen::VectorXd& u,
                       const Eigen::VectorXd& v);

// ric(i,j) = sum_m r(m,i,j,m).
Eigen::MatrixXd ricci_matrix(const Tensor4& r);

// Metric dual of the adjoint action: coordinate k of ad*_X Y is <Y, [X, b_k]>.
Eigen::VectorXd brute_ad_star(const Tensor3& c, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y);

// max_i | nabla_{b_i} X | for the given connection table.
double parallel_residual(const Tensor3& conn, const Eigen::VectorXd& x);

// Orthonormal basis (columns) of { X : nabla X = 0 }.
Eigen::MatrixXd parallel_space(const Tensor3& conn, double tol = kDefaultTol);

// Orthonormal basis (columns) of the center { X : [X, g] = 0 }.
Eigen::MatrixXd center_space(const Tensor3& c, double tol = kDefaultTol);

// Orthonormal basis of the null space of a stacked constraint matrix.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double tol = kDefaultTol);

}  // namespace liegeo::oracle
