#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "liegeo/structure.hpp"
#include "liegeo/tensors.hpp"

namespace liegeo {

enum class Lift { None, Complete, Vertical };
Lift lift_from_string(const std::string& s);
const char* to_string(Lift l);

// A Randers metric F(y) = |y| + <W, y> on the group (lift == None, W is the
// drift in base coordinates) or on the tangent group (W is the complete or
// vertical lift of the drift).  The drift must be nonzero with norm
// strictly below 1.
struct RandersSpec {
  StructureConstants algebra;
  AdaptedData ad;
  Eigen::VectorXd drift;  // base coordinates, length n
  Lift lift = Lift::None;
};

RandersSpec make_randers_spec(const StructureConstants& sc,
                              const Eigen::VectorXd& drift, Lift lift);

// The drift as a vector in the space the metric lives on: length n for
// Lift::None, length 2n otherwise.
Eigen::VectorXd lifted_drift(const RandersSpec& spec);

// F(y); y must match the dimension of lifted_drift(spec).
double randers_norm(const RandersSpec& spec, const Eigen::VectorXd& y);

// Douglas/Berwald classification of the metric.  The closed-form criteria
// are: Douglas iff the drift is orthogonal to the derived plane (all
// lifts); Berwald iff additionally f1 W = f2 W = 0 and W is orthogonal to
// a1, b2, and a2+b1 (base and complete lift), respectively iff W is central
// and orthogonal to a1, b2, a2+b1 (vertical lift).  oracle_berwald is the
// brute-force cross-check: parallelism of the lifted drift under the
// Levi-Civita connection of the (doubled) metric, with the residual
// measured on the unit drift direction.
struct DriftClassification {
  bool douglas = false;
  bool berwald = false;
  std::vector<std::string> douglas_witnesses;
  std::vector<std::string> berwald_witnesses;
  bool oracle_berwald = false;
  double oracle_residual = 0.0;
  bool agreement = false;  // berwald == oracle_berwald
};
DriftClassification classify_drift(const RandersSpec& spec,
                                   double tol = kDefaultTol);

// Orthonormal basis (columns) of the space of Berwald-admissible drifts
// for the given lift.  For n = 3 the returned space is always {0}.
Eigen::MatrixXd berwald_drift_space(const AdaptedData& ad, Lift lift);

// The same space from the closed-form criteria alone, without the n = 3
// rule; used for reporting when the two differ.
Eigen::MatrixXd berwald_drift_space_literal(const AdaptedData& ad, Lift lift);

// Orthonormal basis of the center, via the null space of the stacked
// bracket maps X -> [X, b_i].
Eigen::MatrixXd center(const StructureConstants& sc);

// ---- flag curvature ----
//
// Plane tokens name the span of the flag plane: e1c, e1v, e2c, e2v are the
// lifted derived-plane frame vectors, and complement tokens (Y1c, Y2v, ...)
// carry a unit complement vector.
struct PlaneToken {
  enum class Kind { E1, E2, P } kind = Kind::E1;
  bool vertical = false;
  Eigen::VectorXd u;  // complement coordinates; only for Kind::P
  std::string text;
};
PlaneToken parse_plane_token(const std::string& s, int m);

struct FlagResult {
  double value = 0.0;
  int case_id = 0;
};

// Flag curvature of the plane span{t1, t2} with the given flagpole
// (pole = 0 selects t1, pole = 1 selects t2).  Requires a lifted metric
// (CASE_UNSUPPORTED for Lift::None) whose drift satisfies the Berwald
// criteria (NOT_BERWALD otherwise).  Plane/pole combinations outside the
// tabulated case list raise CASE_UNSUPPORTED.
FlagResult flag_curvature(const RandersSpec& spec, const PlaneToken& t1,
                          const PlaneToken& t2, int pole);

// Raw case evaluators, exposed for tests.  Case ids follow the tabulated
// order per lift: 1..16 for the complete lift, 1..26 for the vertical one.
double flag_case_complete(const AdaptedData& ad, const Eigen::VectorXd& drift,
                          int id, const Eigen::VectorXd& u = Eigen::VectorXd(),
                          const Eigen::VectorXd& v = Eigen::VectorXd());
double flag_case_vertical(const AdaptedData& ad, const Eigen::VectorXd& drift,
                          int id, const Eigen::VectorXd& u = Eigen::VectorXd(),
                          const Eigen::VectorXd& v = Eigen::VectorXd());

}  // namespace liegeo
