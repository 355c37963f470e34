#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "liegeo/errors.hpp"
#include "liegeo/tensors.hpp"

namespace liegeo {

inline constexpr int kMinDim = 3;
inline constexpr int kMaxDim = 64;
inline constexpr double kDefaultTol = 1e-9;

struct BracketTerm {
  int k;
  double c;
};

// A Lie algebra on an orthonormal basis b_0..b_{n-1}, given by sparse
// structure constants: [b_i, b_j] = sum_k c * b_k for each stored (i,j)
// with i < j.  Pairs not stored bracket to zero.
struct StructureConstants {
  std::string name;
  int n = 0;
  std::vector<std::string> basis_labels;  // empty when defaulted
  std::map<std::pair<int, int>, std::vector<BracketTerm>> brackets;

  std::string label(int i) const;
};

StructureConstants parse_structure(const std::string& json_text);
StructureConstants parse_structure_file(const std::string& path);
std::string serialize_structure(const StructureConstants& sc);

// Dense bracket tensor: C(i,j,k) = coefficient of b_k in [b_i, b_j].
Tensor3 dense_brackets(const StructureConstants& sc);

// Sum over basis triples of |[[x,y],z] + [[y,z],x] + [[z,x],y]| (max norm).
double jacobi_defect(const StructureConstants& sc);

struct ValidationReport {
  bool passed = false;
  double jacobi_defect = 0.0;
  int derived_dim = 0;
  bool derived_is_b01_span = false;  // derived subalgebra == span{b_0, b_1}
  bool derived_abelian = false;      // [b_0, b_1] == 0
  std::vector<std::string> messages;
};

// Checks the Jacobi identity and that the derived subalgebra is exactly
// span{b_0, b_1} with [b_0, b_1] = 0 and all brackets valued there.
ValidationReport validate_structure(const StructureConstants& sc,
                                    double tol = kDefaultTol);

// Bracket data of a valid algebra in the adapted orthonormal basis
// {e_1, e_2, u_1..u_m} (indices 0, 1, 2..n-1):
//   [u, e_1] = <a1,u> e_1 + <a2,u> e_2
//   [u, e_2] = <b1,u> e_1 + <b2,u> e_2
//   [u, v]   = <f1 u, v> e_1 + <f2 u, v> e_2   (f1, f2 skew on the complement)
//   [e_1, e_2] = 0
struct AdaptedData {
  Eigen::VectorXd a1, a2, b1, b2;  // size m
  Eigen::MatrixXd f1, f2;          // m x m, skew
  int m = 0;

  int n() const { return m + 2; }
};

// Reads AdaptedData off the structure constants; throws NOT_ADAPTED when a
// bracket lands outside span{b_0, b_1} or [b_0, b_1] != 0.
AdaptedData extract_adapted(const StructureConstants& sc);

// Rebuilds sparse structure constants from adapted data; throws
// SKEW_VIOLATION if f1 or f2 fails skewness beyond tol.
StructureConstants reconstruct_structure(const AdaptedData& ad,
                                         const std::string& name = "",
                                         double tol = kDefaultTol);

std::vector<std::string> catalog_names();
StructureConstants catalog_entry(const std::string& name);

}  // namespace liegeo
