#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "liegeo/structure.hpp"
#include "liegeo/tensors.hpp"

namespace liegeo {

// Levi-Civita connection table of the left-invariant metric, from the
// adapted bracket data (closed form, no Koszul evaluation).
ConnectionTable connection_base(const AdaptedData& ad);

// Curvature assembled from a connection table and the algebra's brackets.
CurvatureTensor curvature_from_connection(const ConnectionTable& conn,
                                          const Tensor3& brackets);

// <R(u,v)v, u> / (|u|^2 |v|^2 - <u,v>^2); throws DEGENERATE_PLANE and
// DIMENSION_MISMATCH.
double sectional(const CurvatureTensor& r, const Eigen::VectorXd& u,
                 const Eigen::VectorXd& v);

Eigen::MatrixXd ricci_base(const CurvatureTensor& r);
double scalar_curvature(const CurvatureTensor& r);

// The four closed-form sectional curvature cases on the base group.
// E1E2 ignores u and v; E1U/E2U take a unit u in complement coordinates
// (length m); UV additionally takes v with u, v orthonormal.
enum class BaseSectionalCase { E1E2, E1U, E2U, UV };
BaseSectionalCase base_sectional_case_from_string(const std::string& s);
const char* to_string(BaseSectionalCase c);
double sectional_closed_base(const AdaptedData& ad, BaseSectionalCase c,
                             const Eigen::VectorXd& u = Eigen::VectorXd(),
                             const Eigen::VectorXd& v = Eigen::VectorXd());

struct GeodesicResult {
  bool geodesic = false;
  double residual = 0.0;  // |nabla_X X| in the max norm
};
GeodesicResult geodesic_check(const ConnectionTable& conn,
                              const Eigen::VectorXd& x,
                              double tol = kDefaultTol);

// Closed geodesic criterion for X = lam e_1 + mu e_2 + (complement part):
// the complement must be arbitrary, and lam^2 a1 + lam mu (a2+b1) + mu^2 b2
// must vanish.  Returns the max-norm of that quadratic expression.
double derived_geodesic_defect(const AdaptedData& ad, double lam, double mu);

// Unimodularity is equivalent to a1 = -b2.
bool is_unimodular(const AdaptedData& ad, double tol = kDefaultTol);
double unimodularity_defect(const AdaptedData& ad);

// Conditions a bi-invariant metric would force, with their violation
// magnitudes.  On any algebra of this class at least one is nonzero
// (otherwise every bracket would vanish), so the returned list of
// violations is never empty for valid input.
struct ObstructionTerm {
  std::string condition;
  double magnitude = 0.0;
};
std::vector<ObstructionTerm> biinvariance_obstruction(
    const AdaptedData& ad, double tol = kDefaultTol);

// Deviation diagnostics used by tests and the verification pass.
double metric_compatibility_defect(const ConnectionTable& conn);
double torsion_defect(const ConnectionTable& conn, const Tensor3& brackets);
double first_slot_antisymmetry_defect(const CurvatureTensor& r);
double last_slot_antisymmetry_defect(const CurvatureTensor& r);
double pair_symmetry_defect(const CurvatureTensor& r);
double first_bianchi_defect(const CurvatureTensor& r);

}  // namespace liegeo
