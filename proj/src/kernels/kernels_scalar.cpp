#include <algorithm>
#include <cmath>
#include <limits>

#include "rdmono/kernels.hpp"

namespace rdmono::kernels {

namespace {

double dot(const double* w, const double* f, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * f[i];
  return s;
}

double dot3(const double* w, const double* f, const double* g, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * f[i] * g[i];
  return s;
}

double max_abs(const double* f, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

double min_value(const double* f, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::min(m, f[i]);
  return m;
}

double weighted_pos_sq(const double* w, const double* f, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = std::max(f[i], 0.0);
    s += w[i] * p * p;
  }
  return s;
}

double max_pos_diff(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, a[i] - b[i]);
  return m;
}

double weighted_pos_diff_sq(const double* w, const double* a, const double* b,
                            std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = std::max(a[i] - b[i], 0.0);
    s += w[i] * p * p;
  }
  return s;
}

void second_difference(const double* minus, const double* center,
                       const double* plus, double* out, std::size_t n,
                       double scale, bool accumulate) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = scale * ((minus[i] + plus[i]) - 2.0 * center[i]);
    out[i] = accumulate ? out[i] + v : v;
  }
}

double relax_line(double* u, const double* rhs, std::size_t begin,
                  std::size_t end, double c, double inv_diag,
                  std::size_t parity) {
  double change = 0.0;
  std::size_t i = begin + ((begin % 2) != parity ? 1 : 0);
  for (; i < end; i += 2) {
    const double next = (rhs[i] + c * (u[i - 1] + u[i + 1])) * inv_diag;
    change = std::max(change, std::abs(next - u[i]));
    u[i] = next;
  }
  return change;
}

double relax_row(double* u, const double* down, const double* up,
                 const double* rhs, std::size_t begin, std::size_t end,
                 double cx, double cy, double inv_diag, std::size_t parity) {
  double change = 0.0;
  std::size_t i = begin + ((begin % 2) != parity ? 1 : 0);
  for (; i < end; i += 2) {
    const double next =
        (rhs[i] + cx * (u[i - 1] + u[i + 1]) + cy * (down[i] + up[i])) * inv_diag;
    change = std::max(change, std::abs(next - u[i]));
    u[i] = next;
  }
  return change;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar,      dot,
                                 dot3,             max_abs,
                                 min_value,        weighted_pos_sq,
                                 max_pos_diff,     weighted_pos_diff_sq,
                                 second_difference, relax_line,
                                 relax_row};
  return table;
}

}  // namespace rdmono::kernels
