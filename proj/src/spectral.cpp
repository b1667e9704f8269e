#include "rdmono/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rdmono/error.hpp"
#include "rdmono/kernels.hpp"

namespace rdmono {

namespace {

using std::numbers::pi;

void normalize(const Mesh& mesh, EigenPair& ep) {
  for (std::size_t b : mesh.boundary_nodes()) ep.phi1[b] = 0.0;
  const double s = integrate(mesh, ep.phi1);
  if (!(s > 0.0)) throw InvariantError("eigenvector has non-positive integral");
  for (double& v : ep.phi1) v /= s;
  ep.normalization_residual = std::abs(integrate(mesh, ep.phi1) - 1.0);
}

// y = (-Lap_h) x on interior nodes; boundary entries of x are treated as 0.
void apply_laplacian(const Mesh& mesh, const std::vector<double>& x, std::vector<double>& y) {
  const int nx = mesh.count(0);
  const int ny = mesh.dim() == 2 ? mesh.count(1) : 1;
  const double sx = 1.0 / (mesh.spacing(0) * mesh.spacing(0));
  const double sy = mesh.dim() == 2 ? 1.0 / (mesh.spacing(1) * mesh.spacing(1)) : 0.0;
  std::fill(y.begin(), y.end(), 0.0);
  const int j0 = mesh.dim() == 2 ? 1 : 0;
  const int j1 = mesh.dim() == 2 ? ny - 1 : 1;
  for (int j = j0; j < j1; ++j) {
    for (int i = 1; i < nx - 1; ++i) {
      const std::size_t p = mesh.index(i, j);
      double v = sx * (2.0 * x[p] - x[p - 1] - x[p + 1]);
      if (mesh.dim() == 2) v += sy * (2.0 * x[p] - x[p - nx] - x[p + nx]);
      y[p] = v;
    }
  }
}

double plain_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Solves (-Lap_h) x = b on the interior (1D tridiagonal elimination).
void solve_1d(const Mesh& mesh, const std::vector<double>& b, std::vector<double>& x) {
  const int n = mesh.count(0);
  const double s = 1.0 / (mesh.spacing(0) * mesh.spacing(0));
  const int m = n - 2;
  std::vector<double> c(m), d(m);
  // Diagonal 2s, off-diagonals -s.
  double denom = 2.0 * s;
  c[0] = -s / denom;
  d[0] = b[1] / denom;
  for (int i = 1; i < m; ++i) {
    denom = 2.0 * s + s * c[i - 1];
    c[i] = -s / denom;
    d[i] = (b[i + 1] + s * d[i - 1]) / denom;
  }
  x.assign(n, 0.0);
  x[m] = d[m - 1];
  for (int i = m - 2; i >= 0; --i) x[i + 1] = d[i] - c[i] * x[i + 2];
}

// Conjugate gradients for (-Lap_h) x = b on the interior (2D).
void solve_cg(const Mesh& mesh, const std::vector<double>& b, std::vector<double>& x) {
  const std::size_t n = mesh.size();
  x.assign(n, 0.0);
  std::vector<double> r = b, p = b, q(n);
  for (std::size_t k : mesh.boundary_nodes()) r[k] = p[k] = 0.0;
  double rr = plain_dot(r, r);
  const double stop = 1e-28 * rr;
  for (std::size_t it = 0; it < 10 * n && rr > stop; ++it) {
    apply_laplacian(mesh, p, q);
    const double alpha = rr / plain_dot(p, q);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    const double rr_new = plain_dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
}

}  // namespace

const char* to_string(EigenMethod method) {
  return method == EigenMethod::analytic ? "analytic" : "discrete";
}

EigenMethod eigen_method_from_string(const std::string& name) {
  if (name == "analytic") return EigenMethod::analytic;
  if (name == "discrete") return EigenMethod::discrete;
  throw ConfigError("unknown eigen method '" + name + "'");
}

double rayleigh_quotient(const Mesh& mesh, std::span<const double> v) {
  check_field(mesh, v);
  std::vector<double> x(v.begin(), v.end()), y(mesh.size());
  for (std::size_t b : mesh.boundary_nodes()) x[b] = 0.0;
  apply_laplacian(mesh, x, y);
  return plain_dot(x, y) / plain_dot(x, x);
}

EigenPair principal_eigenpair(const Mesh& mesh, EigenMethod method) {
  EigenPair ep;
  ep.method = method;
  const std::size_t n = mesh.size();
  ep.phi1.resize(n);

  if (method == EigenMethod::analytic) {
    ep.lambda1 = 0.0;
    for (int ax = 0; ax < mesh.dim(); ++ax)
      ep.lambda1 += (pi / mesh.length(ax)) * (pi / mesh.length(ax));
    for (std::size_t p = 0; p < n; ++p) {
      double v = 1.0;
      for (int ax = 0; ax < mesh.dim(); ++ax)
        v *= std::sin(pi * mesh.coord(p, ax) / mesh.length(ax));
      ep.phi1[p] = v;
    }
    normalize(mesh, ep);
    return ep;
  }

  // Positive start vector that is not an eigenvector of the discrete operator.
  std::vector<double> x(n), y(n);
  for (std::size_t p = 0; p < n; ++p) {
    double v = 1.0;
    for (int ax = 0; ax < mesh.dim(); ++ax) {
      const double s = mesh.coord(p, ax) / mesh.length(ax);
      v *= s * (1.0 - s);
    }
    x[p] = v;
  }
  for (std::size_t b : mesh.boundary_nodes()) x[b] = 0.0;

  double lambda = rayleigh_quotient(mesh, x);
  bool converged = false;
  int it = 0;
  while (it < 10000) {
    ++it;
    if (mesh.dim() == 1) {
      solve_1d(mesh, x, y);
    } else {
      solve_cg(mesh, x, y);
    }
    const double norm = std::sqrt(plain_dot(y, y));
    for (std::size_t p = 0; p < n; ++p) x[p] = y[p] / norm;
    const double next = rayleigh_quotient(mesh, x);
    const double diff = std::abs(next - lambda);
    lambda = next;
    if (diff <= 1e-10 * lambda) {
      converged = true;
      break;
    }
  }
  if (!converged) throw InvariantError("inverse power iteration did not converge");
  ep.lambda1 = lambda;
  ep.iterations = it;
  ep.phi1 = x;
  normalize(mesh, ep);
  return ep;
}

double kaplan_y(const Mesh& mesh, std::span<const double> u, const EigenPair& ep) {
  check_field(mesh, u);
  check_field(mesh, ep.phi1);
  return kernels::active().dot3(mesh.weights().data(), u.data(), ep.phi1.data(), u.size());
}

double kaplan_z(const Mesh& mesh, std::span<const double> u1, std::span<const double> u2,
                double a, double b, const EigenPair& ep) {
  check_field(mesh, u1);
  check_field(mesh, u2);
  check_field(mesh, ep.phi1);
  std::vector<double> g(u1.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = a * u1[i] + b * u2[i] - 0.5 * u2[i] * u2[i];
  return kernels::active().dot3(mesh.weights().data(), g.data(), ep.phi1.data(), g.size());
}

double kaplan_threshold(double p, double lambda1) {
  if (!(p > 2.0)) throw ConfigError("kaplan threshold requires p > 2");
  return std::pow(lambda1, 1.0 / (p - 2.0));
}

double riccati_blowup_time(double y0, double c) {
  if (!(c > 0.0)) throw ConfigError("riccati bound requires c > 0");
  if (!(y0 > 2.0 * c)) return std::numeric_limits<double>::infinity();
  // -log1p(-2c/y0) = ln(y0 / (y0 - 2c)), accurate for large y0.
  return -std::log1p(-2.0 * c / y0) / c;
}

std::string NrInitialCheck::violated() const {
  if (first && second) return "none";
  if (!first && !second) return "both";
  return first ? "second" : "first";
}

NrInitialCheck check_nr_initial(const Mesh& mesh, std::span<const double> u10,
                                std::span<const double> u20, double a, double b,
                                const EigenPair& ep) {
  if (!(a >= 0.0) || !(b > 0.0)) throw ConfigError("initial-data check requires a >= 0, b > 0");
  NrInitialCheck c;
  c.y0 = kaplan_y(mesh, u20, ep);
  c.z0 = kaplan_z(mesh, u10, u20, a, b, ep);
  c.threshold = 2.0 * (b + ep.lambda1);
  c.first = c.z0 >= 0.0;
  c.second = c.y0 > c.threshold;
  c.pointwise = true;
  for (std::size_t i = 0; i < u10.size(); ++i) {
    if (a * u10[i] < 0.5 * u20[i] * u20[i]) {
      c.pointwise = false;
      break;
    }
  }
  return c;
}

}  // namespace rdmono
