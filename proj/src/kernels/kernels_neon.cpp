// NEON variants for aarch64. Two-lane doubles; same rounding contract as the
// AVX2 file (no fused multiply-add in elementwise kernels).

#include <arm_neon.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "rdmono/kernels.hpp"

namespace rdmono::kernels {

namespace {

double dot(const double* w, const double* f, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(w + i), vld1q_f64(f + i)));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += w[i] * f[i];
  return s;
}

double dot3(const double* w, const double* f, const double* g, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vaddq_f64(acc, vmulq_f64(vmulq_f64(vld1q_f64(w + i), vld1q_f64(f + i)), vld1q_f64(g + i)));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += w[i] * f[i] * g[i];
  return s;
}

double max_abs(const double* f, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(f + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::max(r, std::abs(f[i]));
  return r;
}

double min_value(const double* f, std::size_t n) {
  float64x2_t m = vdupq_n_f64(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vminq_f64(m, vld1q_f64(f + i));
  double r = vminvq_f64(m);
  for (; i < n; ++i) r = std::min(r, f[i]);
  return r;
}

double weighted_pos_sq(const double* w, const double* f, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t acc = zero;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t p = vmaxq_f64(vld1q_f64(f + i), zero);
    acc = vaddq_f64(acc, vmulq_f64(vmulq_f64(vld1q_f64(w + i), p), p));
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double p = std::max(f[i], 0.0);
    s += w[i] * p * p;
  }
  return s;
}

double max_pos_diff(const double* a, const double* b, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::max(r, a[i] - b[i]);
  return r;
}

double weighted_pos_diff_sq(const double* w, const double* a, const double* b,
                            std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t acc = zero;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t p = vmaxq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)), zero);
    acc = vaddq_f64(acc, vmulq_f64(vmulq_f64(vld1q_f64(w + i), p), p));
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double p = std::max(a[i] - b[i], 0.0);
    s += w[i] * p * p;
  }
  return s;
}

void second_difference(const double* minus, const double* center,
                       const double* plus, double* out, std::size_t n,
                       double scale, bool accumulate) {
  const float64x2_t vs = vdupq_n_f64(scale);
  const float64x2_t two = vdupq_n_f64(2.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t sum = vaddq_f64(vld1q_f64(minus + i), vld1q_f64(plus + i));
    float64x2_t v = vmulq_f64(vs, vsubq_f64(sum, vmulq_f64(two, vld1q_f64(center + i))));
    if (accumulate) v = vaddq_f64(vld1q_f64(out + i), v);
    vst1q_f64(out + i, v);
  }
  for (; i < n; ++i) {
    const double v = scale * ((minus[i] + plus[i]) - 2.0 * center[i]);
    out[i] = accumulate ? out[i] + v : v;
  }
}

// With two lanes and stride-2 colouring exactly one lane per vector is active,
// so the red-black kernels stay scalar-shaped but share the rounding contract.
double relax_line(double* u, const double* rhs, std::size_t begin,
                  std::size_t end, double c, double inv_diag,
                  std::size_t parity) {
  return scalar_table().relax_line(u, rhs, begin, end, c, inv_diag, parity);
}

double relax_row(double* u, const double* down, const double* up,
                 const double* rhs, std::size_t begin, std::size_t end,
                 double cx, double cy, double inv_diag, std::size_t parity) {
  return scalar_table().relax_row(u, down, up, rhs, begin, end, cx, cy,
                                  inv_diag, parity);
}

}  // namespace

const KernelTable* neon_table() {
  static const KernelTable table{Isa::neon,        dot,
                                 dot3,             max_abs,
                                 min_value,        weighted_pos_sq,
                                 max_pos_diff,     weighted_pos_diff_sq,
                                 second_difference, relax_line,
                                 relax_row};
  return &table;
}

}  // namespace rdmono::kernels
