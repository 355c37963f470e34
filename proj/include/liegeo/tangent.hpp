#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "liegeo/structure.hpp"
#include "liegeo/tensors.hpp"

namespace liegeo {

// The algebra of the tangent group is the double of the base algebra:
// indices 0..n-1 are complete lifts of the base frame, n..2n-1 vertical
// lifts, with [Xc,Yc] = [X,Y]c, [Xc,Yv] = [X,Y]v, [Xv,Yv] = 0.  The lifted
// metric makes this frame orthonormal.
Tensor3 tangent_brackets(const Tensor3& base_brackets);
StructureConstants tangent_algebra(const StructureConstants& sc);

// Closed-form table of the metric dual of the adjoint action:
// row i, column j holds ad*_{b_i} b_j in base coordinates.
Tensor3 ad_star_table(const AdaptedData& ad);
Eigen::VectorXd ad_star(const AdaptedData& ad, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y);

// Levi-Civita connection of the lifted metric via the four-block closed
// form (base connection, brackets, and the ad* table).
ConnectionTable connection_tangent(const AdaptedData& ad);

// The same connection as a cell-by-cell tabulated fixture.  One family of
// cells (complement column against complement row, both complete lifts)
// deviates from the derived table; tabulated_connection_differences
// reports exactly which cell families differ.
ConnectionTable connection_tangent_tabulated(const AdaptedData& ad);

struct CellDifference {
  std::string row;   // one of e1c, e2c, uc, e1v, e2v, uv
  std::string col;
  double max_abs = 0.0;
};
std::vector<CellDifference> tabulated_connection_differences(
    const AdaptedData& ad, double tol = kDefaultTol);

// Full tangent-geometry pipeline in one call.
struct TangentGeometry {
  int n = 0;  // base dimension; tensors live in dimension 2n
  Tensor3 brackets;
  ConnectionTable conn;
  CurvatureTensor curv;
};
TangentGeometry tangent_geometry(const AdaptedData& ad);

// ---- closed-form curvature: thirty tabulated cases ----
//
// Each case fixes a triple (x, y, z) of lifted-frame slots and returns the
// value R~(x, y) z as a 2n-coordinate vector.  Slots U/V stand for unit
// complement vectors supplied by the caller (orthonormal when both occur).
enum class LiftedSlot { E1C, E2C, E1V, E2V, UC, UV, VC, VV };
const char* to_string(LiftedSlot s);

struct TangentCurvatureCase {
  LiftedSlot x, y, z;
  Eigen::VectorXd value;  // 2n coordinates
};

inline constexpr int kTangentCurvatureCases = 30;
bool tangent_case_needs_u(int id);
bool tangent_case_needs_v(int id);

// id in 1..30; cases needing U take u (length m, unit), cases needing V
// take v as well (unit, orthogonal to u).  Case 16 is the zero case: with
// v it is R~(Uv,Vv)Vv, without v it is R~(Uc,Uv)Uv.
TangentCurvatureCase tangent_curvature_case(
    const AdaptedData& ad, int id, const Eigen::VectorXd& u = Eigen::VectorXd(),
    const Eigen::VectorXd& v = Eigen::VectorXd());

// ---- closed-form sectional curvature on the tangent group ----
enum class TangentPlane {
  E1C_E2C, E1V_E2V, E1C_E2V, E1V_E2C, E1C_E1V, E2C_E2V,
  UC_E1C, UC_E1V, UC_E2C, UC_E2V,
  UV_E1C, UV_E2C, UV_E1V, UV_E2V,
  UC_VC, UC_VV, UV_VV, UC_UV,
};
TangentPlane tangent_plane_from_string(const std::string& s);
const char* to_string(TangentPlane p);
bool tangent_plane_needs_u(TangentPlane p);
bool tangent_plane_needs_v(TangentPlane p);

double tangent_sectional_closed(const AdaptedData& ad, TangentPlane p,
                                const Eigen::VectorXd& u = Eigen::VectorXd(),
                                const Eigen::VectorXd& v = Eigen::VectorXd());

// Planes on which the tangent-group sectional curvature reproduces the
// base sectional curvature: (Uc, e_i^c), (Uc, e_i^v), (e1c, e2c),
// (e1v, e2v), (Uc, Vc), (Uc, Vv) over the lifted frame.  The report gives
// the worst deviation across those planes plus the sign spectrum of the
// shared values.
struct RelationReport {
  double max_deviation = 0.0;
  int planes_checked = 0;
  bool has_positive = false;
  bool has_negative = false;
  bool has_zero = false;
};
RelationReport curvature_relations(const AdaptedData& ad,
                                   double tol = kDefaultTol);

// ---- closed-form Ricci on the tangent group: fifteen entries ----
//
// Entries are bilinear identities, so U/V arguments may be arbitrary
// complement vectors (no normalization required).  base_ricci is the
// Ricci matrix of the base metric.  Entry 15 states that the whole
// mixed block Ric~(c-lift, v-lift) vanishes and evaluates to 0.
inline constexpr int kTangentRicciEntries = 15;
bool tangent_ricci_needs_u(int id);
bool tangent_ricci_needs_v(int id);

double tangent_ricci_closed(const AdaptedData& ad,
                            const Eigen::MatrixXd& base_ricci, int id,
                            const Eigen::VectorXd& u = Eigen::VectorXd(),
                            const Eigen::VectorXd& v = Eigen::VectorXd());

// Frame index pair (i, j) of Ric~ probed by entry id when U/V are the
// basis vectors u_p, u_q; entry 15 reports the representative (0, n).
std::pair<int, int> tangent_ricci_entry_indices(int n, int id, int p = -1,
                                                int q = -1);

}  // namespace liegeo
