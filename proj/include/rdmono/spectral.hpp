#pragma once

#include <span>
#include <string>
#include <vector>

#include "rdmono/mesh.hpp"

namespace rdmono {

enum class EigenMethod { analytic, discrete };

const char* to_string(EigenMethod method);
EigenMethod eigen_method_from_string(const std::string& name);

/// Principal Dirichlet eigenpair of -Lap, with phi1 > 0 inside, zero on the
/// boundary and normalized so that its trapezoidal integral is 1.
struct EigenPair {
  double lambda1 = 0.0;
  std::vector<double> phi1;
  double normalization_residual = 0.0;  ///< |integral(phi1) - 1|
  EigenMethod method = EigenMethod::analytic;
  int iterations = 0;
};

/// analytic: sampled sine mode with lambda1 = pi^2 sum 1/L_i^2.
/// discrete: inverse power iteration on the interior 3-/5-point Laplacian,
/// stopping when successive Rayleigh quotients agree to 1e-10 (relative).
/// Throws InvariantError after 1e4 iterations without convergence.
EigenPair principal_eigenpair(const Mesh& mesh, EigenMethod method);

/// Discrete Rayleigh quotient of -Lap_h restricted to interior nodes.
double rayleigh_quotient(const Mesh& mesh, std::span<const double> v);

/// integral(u phi1)
double kaplan_y(const Mesh& mesh, std::span<const double> u, const EigenPair& ep);

/// integral((a u1 + b u2 - u2^2 / 2) phi1)
double kaplan_z(const Mesh& mesh, std::span<const double> u1, std::span<const double> u2,
                double a, double b, const EigenPair& ep);

/// lambda1^(1 / (p - 2)); throws ConfigError unless p > 2.
double kaplan_threshold(double p, double lambda1);

/// Blow-up time of y' = y (y - 2c) / 2 from y(0) = y0: (1/c) ln(y0 / (y0 - 2c)),
/// +inf when y0 <= 2c. Throws ConfigError unless c > 0.
double riccati_blowup_time(double y0, double c);

struct NrInitialCheck {
  double y0 = 0.0;          ///< integral(u20 phi1)
  double z0 = 0.0;          ///< integral((a u10 + b u20 - u20^2/2) phi1)
  double threshold = 0.0;   ///< 2 (b + lambda1)
  bool first = false;       ///< z0 >= 0
  bool second = false;      ///< y0 > threshold
  bool pointwise = false;   ///< a u10 >= u20^2 / 2 at every node
  bool satisfied() const { return first && second; }
  /// "none", "first", "second" or "both".
  std::string violated() const;
};

NrInitialCheck check_nr_initial(const Mesh& mesh, std::span<const double> u10,
                                std::span<const double> u20, double a, double b,
                                const EigenPair& ep);

}  // namespace rdmono
