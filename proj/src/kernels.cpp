#include "liegeo/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace liegeo::kernels {

namespace {

Mode initial_mode() {
  const char* env = std::getenv("LIEGEO_KERNEL");
  if (env && std::strcmp(env, "serial") == 0) return Mode::Serial;
  return Mode::Parallel;
}

Mode g_mode = initial_mode();

// One output row r(i,j,k,:) — shared verbatim by both kernels so that the
// parallel kernel reproduces the serial result bit for bit.
inline void curvature_row(const Tensor3& g, const Tensor3& c, int n, int i,
                          int j, int k, double* out) {
  for (int l = 0; l < n; ++l) out[l] = 0.0;
  for (int t = 0; t < n; ++t) {
    const double gjk = g(j, k, t);
    const double gik = g(i, k, t);
    const double cij = c(i, j, t);
    for (int l = 0; l < n; ++l)
      out[l] += gjk * g(i, t, l) - gik * g(j, t, l) - cij * g(t, k, l);
  }
}

}  // namespace

Mode mode() { return g_mode; }
void set_mode(Mode m) { g_mode = m; }

const char* to_string(Mode m) {
  return m == Mode::Serial ? "serial" : "parallel";
}

Tensor4 assemble_curvature(const Tensor3& conn, const Tensor3& brackets,
                           Mode m) {
  const int n = conn.dim0();
  Tensor4 r(n, n, n, n);
  double* base = r.data().data();
  if (m == Mode::Serial) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          curvature_row(conn, brackets, n, i, j, k,
                        base + ((static_cast<std::size_t>(i) * n + j) * n + k) * n);
  } else {
#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          curvature_row(conn, brackets, n, i, j, k,
                        base + ((static_cast<std::size_t>(i) * n + j) * n + k) * n);
  }
  return r;
}

Tensor4 assemble_curvature(const Tensor3& conn, const Tensor3& brackets) {
  return assemble_curvature(conn, brackets, g_mode);
}

}  // namespace liegeo::kernels
