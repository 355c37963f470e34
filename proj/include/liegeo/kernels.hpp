#pragma once

#include "liegeo/tensors.hpp"

namespace liegeo::kernels {

enum class Mode { Serial, Parallel };

// Current kernel mode: LIEGEO_KERNEL=serial selects the reference kernel,
// anything else (including unset) selects the OpenMP kernel.  The two are
// bit-identical because parallelism only splits the outer loop.
Mode mode();
void set_mode(Mode m);
const char* to_string(Mode m);

// Frame curvature from a connection table g and bracket tensor c:
//   r(i,j,k,l) = sum_t g(j,k,t) g(i,t,l) - g(i,k,t) g(j,t,l) - c(i,j,t) g(t,k,l)
// which is <R(b_i,b_j) b_k, b_l> for the Levi-Civita connection of a
// left-invariant metric in an orthonormal frame.
Tensor4 assemble_curvature(const Tensor3& conn, const Tensor3& brackets, Mode m);
Tensor4 assemble_curvature(const Tensor3& conn, const Tensor3& brackets);

}  // namespace liegeo::kernels
