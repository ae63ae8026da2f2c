#include "gist/kernels.hpp"

namespace gist::kernels {

namespace {

bool use_avx2() {
#if defined(GIST_BUILD_AVX2)
  static const bool enabled = avx2::available();
  return enabled;
#else
  return false;
#endif
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
#if defined(GIST_BUILD_AVX2)
  if (use_avx2()) return avx2::dot(a, b, n);
#endif
  return scalar::dot(a, b, n);
}

double norm_sq(const double* a, std::size_t n) {
#if defined(GIST_BUILD_AVX2)
  if (use_avx2()) return avx2::norm_sq(a, n);
#endif
  return scalar::norm_sq(a, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
#if defined(GIST_BUILD_AVX2)
  if (use_avx2()) return avx2::axpy(alpha, x, y, n);
#endif
  scalar::axpy(alpha, x, y, n);
}

void sub(const double* a, const double* b, double* out, std::size_t n) {
#if defined(GIST_BUILD_AVX2)
  if (use_avx2()) return avx2::sub(a, b, out, n);
#endif
  scalar::sub(a, b, out, n);
}

GridScanResult grid_scan_prox(ProxFamily family, double u, double t,
                              double lambda, double theta, double lo,
                              double step, std::size_t count) {
#if defined(GIST_BUILD_AVX2)
  if (use_avx2()) return avx2::grid_scan_prox(family, u, t, lambda, theta, lo, step, count);
#endif
  return scalar::grid_scan_prox(family, u, t, lambda, theta, lo, step, count);
}

std::string_view active_backend() { return use_avx2() ? "avx2" : "scalar"; }

#if !defined(GIST_BUILD_AVX2)
// Stubs so callers can link on targets without the AVX2 translation unit;
// available() gates every call site.
namespace avx2 {
bool available() { return false; }
double dot(const double* a, const double* b, std::size_t n) {
  return scalar::dot(a, b, n);
}
double norm_sq(const double* a, std::size_t n) { return scalar::norm_sq(a, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  scalar::axpy(alpha, x, y, n);
}
void sub(const double* a, const double* b, double* out, std::size_t n) {
  scalar::sub(a, b, out, n);
}
GridScanResult grid_scan_prox(ProxFamily family, double u, double t,
                              double lambda, double theta, double lo,
                              double step, std::size_t count) {
  return scalar::grid_scan_prox(family, u, t, lambda, theta, lo, step, count);
}
}  // namespace avx2
#endif

}  // namespace gist::kernels
