#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation; vectorized variants are selected at runtime and must agree
// with the reference (bitwise for elementwise/max kernels, to rounding for sums).

#include <cstddef>
#include <string_view>

namespace rdmono::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  /// sum_i w[i] * f[i]
  double (*dot)(const double* w, const double* f, std::size_t n);
  /// sum_i w[i] * f[i] * g[i]
  double (*dot3)(const double* w, const double* f, const double* g, std::size_t n);
  /// max_i |f[i]| (0 for n == 0)
  double (*max_abs)(const double* f, std::size_t n);
  /// min_i f[i] (+inf for n == 0)
  double (*min_value)(const double* f, std::size_t n);
  /// sum_i w[i] * max(f[i], 0)^2
  double (*weighted_pos_sq)(const double* w, const double* f, std::size_t n);
  /// max_i max(a[i] - b[i], 0)
  double (*max_pos_diff)(const double* a, const double* b, std::size_t n);
  /// sum_i w[i] * max(a[i] - b[i], 0)^2
  double (*weighted_pos_diff_sq)(const double* w, const double* a,
                                 const double* b, std::size_t n);
  /// out[i] (+)= scale * (minus[i] - 2 center[i] + plus[i])
  void (*second_difference)(const double* minus, const double* center,
                            const double* plus, double* out, std::size_t n,
                            double scale, bool accumulate);
  /// Red-black Gauss-Seidel half sweep on a line of nodes [begin, end):
  /// for every i with i % 2 == parity,
  ///   u[i] = (rhs[i] + c * (u[i-1] + u[i+1])) * inv_diag.
  /// Reads u[begin-1] and u[end]. Returns the largest |change|.
  double (*relax_line)(double* u, const double* rhs, std::size_t begin,
                       std::size_t end, double c, double inv_diag,
                       std::size_t parity);
  /// As relax_line for a row of a 2D grid with neighbours above/below:
  ///   u[i] = (rhs[i] + cx*(u[i-1] + u[i+1]) + cy*(down[i] + up[i])) * inv_diag.
  double (*relax_row)(double* u, const double* down, const double* up,
                      const double* rhs, std::size_t begin, std::size_t end,
                      double cx, double cy, double inv_diag, std::size_t parity);
};

const KernelTable& scalar_table();
/// nullptr when the variant is not compiled in or the CPU lacks support.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Best table for this CPU. Set RDMONO_ISA=scalar|avx2|neon to override.
const KernelTable& active();

}  // namespace rdmono::kernels
