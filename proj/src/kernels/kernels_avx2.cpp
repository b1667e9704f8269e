// AVX2 variants. Functions carry a target attribute so the translation unit
// builds without global -mavx2 and is only entered after a CPUID check. FMA is
// deliberately not enabled: elementwise kernels must round exactly like the
// scalar reference.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "rdmono/kernels.hpp"

#define RDMONO_AVX2 __attribute__((target("avx2")))

namespace rdmono::kernels {

namespace {

RDMONO_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

RDMONO_AVX2 inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

RDMONO_AVX2 inline double hmin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_min_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_min_sd(m, _mm_unpackhi_pd(m, m)));
}

RDMONO_AVX2 inline __m256d vabs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

RDMONO_AVX2 double dot(const double* w, const double* f, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i)));
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * f[i];
  return s;
}

RDMONO_AVX2 double dot3(const double* w, const double* f, const double* g,
                        std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d wf = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(wf, _mm256_loadu_pd(g + i)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * f[i] * g[i];
  return s;
}

RDMONO_AVX2 double max_abs(const double* f, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, vabs(_mm256_loadu_pd(f + i)));
  double r = hmax(m);
  for (; i < n; ++i) r = std::max(r, std::abs(f[i]));
  return r;
}

RDMONO_AVX2 double min_value(const double* f, std::size_t n) {
  __m256d m = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_min_pd(m, _mm256_loadu_pd(f + i));
  double r = hmin(m);
  for (; i < n; ++i) r = std::min(r, f[i]);
  return r;
}

RDMONO_AVX2 double weighted_pos_sq(const double* w, const double* f, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_max_pd(_mm256_loadu_pd(f + i), zero);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), p), p));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double p = std::max(f[i], 0.0);
    s += w[i] * p * p;
  }
  return s;
}

RDMONO_AVX2 double max_pos_diff(const double* a, const double* b, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    m = _mm256_max_pd(m, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double r = hmax(m);
  for (; i < n; ++i) r = std::max(r, a[i] - b[i]);
  return r;
}

RDMONO_AVX2 double weighted_pos_diff_sq(const double* w, const double* a,
                                        const double* b, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_max_pd(
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)), zero);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), p), p));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double p = std::max(a[i] - b[i], 0.0);
    s += w[i] * p * p;
  }
  return s;
}

RDMONO_AVX2 void second_difference(const double* minus, const double* center,
                                   const double* plus, double* out, std::size_t n,
                                   double scale, bool accumulate) {
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(minus + i), _mm256_loadu_pd(plus + i));
    __m256d v = _mm256_mul_pd(vs, _mm256_sub_pd(sum, _mm256_mul_pd(two, _mm256_loadu_pd(center + i))));
    if (accumulate) v = _mm256_add_pd(_mm256_loadu_pd(out + i), v);
    _mm256_storeu_pd(out + i, v);
  }
  for (; i < n; ++i) {
    const double v = scale * ((minus[i] + plus[i]) - 2.0 * center[i]);
    out[i] = accumulate ? out[i] + v : v;
  }
}

// Lane mask selecting indices i, i+1, i+2, i+3 with (index % 2) == parity,
// given the parity of i.
RDMONO_AVX2 inline __m256d colour_mask(std::size_t i, std::size_t parity) {
  const bool even_lanes = (i % 2) == parity;
  return even_lanes ? _mm256_castsi256_pd(_mm256_setr_epi64x(-1, 0, -1, 0))
                    : _mm256_castsi256_pd(_mm256_setr_epi64x(0, -1, 0, -1));
}

RDMONO_AVX2 double relax_line(double* u, const double* rhs, std::size_t begin,
                              std::size_t end, double c, double inv_diag,
                              std::size_t parity) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vd = _mm256_set1_pd(inv_diag);
  __m256d change = _mm256_setzero_pd();
  std::size_t i = begin;
  if (i + 4 <= end) {
    const __m256d mask = colour_mask(i, parity);
    for (; i + 4 <= end; i += 4) {
      const __m256d old = _mm256_loadu_pd(u + i);
      const __m256d nb = _mm256_add_pd(_mm256_loadu_pd(u + i - 1), _mm256_loadu_pd(u + i + 1));
      const __m256d cand = _mm256_mul_pd(_mm256_add_pd(_mm256_loadu_pd(rhs + i), _mm256_mul_pd(vc, nb)), vd);
      const __m256d next = _mm256_blendv_pd(old, cand, mask);
      change = _mm256_max_pd(change, vabs(_mm256_sub_pd(next, old)));
      _mm256_storeu_pd(u + i, next);
    }
  }
  double r = hmax(change);
  if (i % 2 != parity) ++i;
  for (; i < end; i += 2) {
    const double next = (rhs[i] + c * (u[i - 1] + u[i + 1])) * inv_diag;
    r = std::max(r, std::abs(next - u[i]));
    u[i] = next;
  }
  return r;
}

RDMONO_AVX2 double relax_row(double* u, const double* down, const double* up,
                             const double* rhs, std::size_t begin, std::size_t end,
                             double cx, double cy, double inv_diag,
                             std::size_t parity) {
  const __m256d vcx = _mm256_set1_pd(cx);
  const __m256d vcy = _mm256_set1_pd(cy);
  const __m256d vd = _mm256_set1_pd(inv_diag);
  __m256d change = _mm256_setzero_pd();
  std::size_t i = begin;
  if (i + 4 <= end) {
    const __m256d mask = colour_mask(i, parity);
    for (; i + 4 <= end; i += 4) {
      const __m256d old = _mm256_loadu_pd(u + i);
      const __m256d nx = _mm256_add_pd(_mm256_loadu_pd(u + i - 1), _mm256_loadu_pd(u + i + 1));
      const __m256d ny = _mm256_add_pd(_mm256_loadu_pd(down + i), _mm256_loadu_pd(up + i));
      const __m256d acc = _mm256_add_pd(
          _mm256_add_pd(_mm256_loadu_pd(rhs + i), _mm256_mul_pd(vcx, nx)),
          _mm256_mul_pd(vcy, ny));
      const __m256d next = _mm256_blendv_pd(old, _mm256_mul_pd(acc, vd), mask);
      change = _mm256_max_pd(change, vabs(_mm256_sub_pd(next, old)));
      _mm256_storeu_pd(u + i, next);
    }
  }
  double r = hmax(change);
  if (i % 2 != parity) ++i;
  for (; i < end; i += 2) {
    const double next =
        (rhs[i] + cx * (u[i - 1] + u[i + 1]) + cy * (down[i] + up[i])) * inv_diag;
    r = std::max(r, std::abs(next - u[i]));
    u[i] = next;
  }
  return r;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::avx2,        dot,
                                 dot3,             max_abs,
                                 min_value,        weighted_pos_sq,
                                 max_pos_diff,     weighted_pos_diff_sq,
                                 second_difference, relax_line,
                                 relax_row};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
}

}  // namespace rdmono::kernels
