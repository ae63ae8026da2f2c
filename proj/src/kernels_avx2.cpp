#include "gist/kernels.hpp"

#include <cmath>
#include <immintrin.h>

// glibc's libmvec provides a 4-lane double log for AVX2. Accuracy is within
// a few ulp, which is far below the 1e-6 h-value tolerances the grid scan
// is used against.
#if defined(__GLIBC__)
extern "C" __m256d _ZGVdN4v_log(__m256d);
#define GIST_HAVE_VECTOR_LOG 1
#endif

namespace gist::kernels::avx2 {

bool available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

__m256d abs_pd(__m256d v) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(v, mask);
}

template <ProxFamily F>
__m256d penalty_vec(__m256d w, double lambda, double theta) {
  const __m256d a = abs_pd(w);
  const __m256d vlam = _mm256_set1_pd(lambda);
  if constexpr (F == ProxFamily::L1) {
    return _mm256_mul_pd(vlam, a);
  } else if constexpr (F == ProxFamily::Lsp) {
#ifdef GIST_HAVE_VECTOR_LOG
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d q = _mm256_div_pd(a, _mm256_set1_pd(theta));
    return _mm256_mul_pd(vlam, _ZGVdN4v_log(_mm256_add_pd(one, q)));
#else
    alignas(32) double buf[4];
    _mm256_store_pd(buf, a);
    for (double& x : buf) x = lambda * std::log1p(x / theta);
    return _mm256_load_pd(buf);
#endif
  } else if constexpr (F == ProxFamily::Scad) {
    const __m256d vthlam = _mm256_set1_pd(theta * lambda);
    const __m256d low = _mm256_mul_pd(vlam, a);
    // (-w^2 + 2*theta*lambda*a - lambda^2) / (2*(theta-1))
    __m256d mid = _mm256_fmsub_pd(_mm256_set1_pd(2.0 * theta * lambda), a,
                                  _mm256_mul_pd(w, w));
    mid = _mm256_sub_pd(mid, _mm256_set1_pd(lambda * lambda));
    mid = _mm256_mul_pd(mid, _mm256_set1_pd(1.0 / (2.0 * (theta - 1.0))));
    const __m256d top = _mm256_set1_pd((theta + 1.0) * lambda * lambda / 2.0);
    const __m256d in_low = _mm256_cmp_pd(a, vlam, _CMP_LE_OQ);
    const __m256d in_mid = _mm256_cmp_pd(a, vthlam, _CMP_LE_OQ);
    return _mm256_blendv_pd(_mm256_blendv_pd(top, mid, in_mid), low, in_low);
  } else if constexpr (F == ProxFamily::Mcp) {
    const __m256d vthlam = _mm256_set1_pd(theta * lambda);
    __m256d low = _mm256_fmsub_pd(vlam, a,
        _mm256_mul_pd(_mm256_mul_pd(w, w), _mm256_set1_pd(0.5 / theta)));
    const __m256d top = _mm256_set1_pd(theta * lambda * lambda / 2.0);
    const __m256d in_low = _mm256_cmp_pd(a, vthlam, _CMP_LE_OQ);
    return _mm256_blendv_pd(top, low, in_low);
  } else {  // CappedL1
    return _mm256_mul_pd(vlam, _mm256_min_pd(a, _mm256_set1_pd(theta)));
  }
}

template <ProxFamily F>
GridScanResult scan(double u, double t, double lambda, double theta, double lo,
                    double step, std::size_t count) {
  const double inv_t = 1.0 / t;
  const __m256d vu = _mm256_set1_pd(u);
  const __m256d vinv_t = _mm256_set1_pd(inv_t);
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vstep = _mm256_set1_pd(step);
  const __m256d lane = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d four = _mm256_set1_pd(4.0);

  __m256d best = _mm256_set1_pd(1.0 / 0.0);
  __m256d best_idx = _mm256_setzero_pd();
  __m256d idx = lane;

  const std::size_t main = count / 4 * 4;
  for (std::size_t i = 0; i < main; i += 4) {
    const __m256d w = _mm256_fmadd_pd(idx, vstep, vlo);
    const __m256d d = _mm256_sub_pd(w, vu);
    const __m256d h = _mm256_fmadd_pd(
        _mm256_mul_pd(d, d), _mm256_set1_pd(0.5),
        _mm256_mul_pd(vinv_t, penalty_vec<F>(w, lambda, theta)));
    const __m256d lt = _mm256_cmp_pd(h, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, h, lt);
    best_idx = _mm256_blendv_pd(best_idx, idx, lt);
    idx = _mm256_add_pd(idx, four);
  }

  alignas(32) double hs[4], is[4];
  _mm256_store_pd(hs, best);
  _mm256_store_pd(is, best_idx);
  double best_h = 1.0 / 0.0;
  std::size_t best_i = 0;
  for (int l = 0; l < 4; ++l) {
    const auto i = static_cast<std::size_t>(is[l]);
    if (hs[l] < best_h || (hs[l] == best_h && i < best_i)) {
      best_h = hs[l];
      best_i = i;
    }
  }
  for (std::size_t i = main; i < count; ++i) {
    const double w = lo + static_cast<double>(i) * step;
    const double d = w - u;
    const double h =
        0.5 * d * d + inv_t * scalar::penalty_point(F, w, lambda, theta);
    if (h < best_h) {
      best_h = h;
      best_i = i;
    }
  }
  return {best_i, best_h};
}

}  // namespace

GridScanResult grid_scan_prox(ProxFamily family, double u, double t,
                              double lambda, double theta, double lo,
                              double step, std::size_t count) {
  switch (family) {
    case ProxFamily::L1:
      return scan<ProxFamily::L1>(u, t, lambda, theta, lo, step, count);
    case ProxFamily::Lsp:
      return scan<ProxFamily::Lsp>(u, t, lambda, theta, lo, step, count);
    case ProxFamily::Scad:
      return scan<ProxFamily::Scad>(u, t, lambda, theta, lo, step, count);
    case ProxFamily::Mcp:
      return scan<ProxFamily::Mcp>(u, t, lambda, theta, lo, step, count);
    case ProxFamily::CappedL1:
      return scan<ProxFamily::CappedL1>(u, t, lambda, theta, lo, step, count);
  }
  return {0, 0.0};
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  const std::size_t main = n / 8 * 8;
  for (std::size_t i = 0; i < main; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (std::size_t i = main; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double norm_sq(const double* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  const std::size_t main = n / 8 * 8;
  for (std::size_t i = 0; i < main; i += 8) {
    const __m256d x0 = _mm256_loadu_pd(a + i);
    const __m256d x1 = _mm256_loadu_pd(a + i + 4);
    acc0 = _mm256_fmadd_pd(x0, x0, acc0);
    acc1 = _mm256_fmadd_pd(x1, x1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (std::size_t i = main; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const std::size_t main = n / 4 * 4;
  for (std::size_t i = 0; i < main; i += 4) {
    const __m256d r =
        _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, r);
  }
  for (std::size_t i = main; i < n; ++i) y[i] += alpha * x[i];
}

void sub(const double* a, const double* b, double* out, std::size_t n) {
  const std::size_t main = n / 4 * 4;
  for (std::size_t i = 0; i < main; i += 4) {
    _mm256_storeu_pd(out + i,
                     _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (std::size_t i = main; i < n; ++i) out[i] = a[i] - b[i];
}

}  // namespace gist::kernels::avx2
