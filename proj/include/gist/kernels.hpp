#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops used by the rest of the library: dense vector
// kernels and the scalar-prox grid scan. Each kernel has a scalar reference
// implementation and (on x86-64 with AVX2+FMA) a vectorized variant; the
// top-level entry points dispatch once at startup based on the host CPU.

namespace gist::kernels {

// Penalty families the grid scan knows how to evaluate. Kept as a plain code
// here so the kernel layer does not depend on the penalties module.
enum class ProxFamily : int { L1 = 0, Lsp, Scad, Mcp, CappedL1 };

struct GridScanResult {
  std::size_t index;  // grid index of the minimizer
  double h;           // minimal value of 0.5*(w-u)^2 + r(w)/t on the grid
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double norm_sq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void sub(const double* a, const double* b, double* out, std::size_t n);
// Scans w = lo + i*step for i in [0, count) and returns the minimizer of
// h(w) = 0.5*(w-u)^2 + r(w)/t. Ties resolve to the smallest index.
GridScanResult grid_scan_prox(ProxFamily family, double u, double t,
                              double lambda, double theta, double lo,
                              double step, std::size_t count);
// Piecewise penalty value r(w) for one coordinate; shared by the scans.
double penalty_point(ProxFamily family, double w, double lambda, double theta);
}  // namespace scalar

namespace avx2 {
bool available();  // compiled in and supported by the host CPU
double dot(const double* a, const double* b, std::size_t n);
double norm_sq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void sub(const double* a, const double* b, double* out, std::size_t n);
GridScanResult grid_scan_prox(ProxFamily family, double u, double t,
                              double lambda, double theta, double lo,
                              double step, std::size_t count);
}  // namespace avx2

// Dispatched entry points.
double dot(const double* a, const double* b, std::size_t n);
double norm_sq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void sub(const double* a, const double* b, double* out, std::size_t n);
GridScanResult grid_scan_prox(ProxFamily family, double u, double t,
                              double lambda, double theta, double lo,
                              double step, std::size_t count);

std::string_view active_backend();  // "avx2" or "scalar"

}  // namespace gist::kernels
