#include "rdmono/mesh.hpp"

#include <cmath>
#include <string>

#include "rdmono/error.hpp"
#include "rdmono/kernels.hpp"

namespace rdmono {

Mesh Mesh::build(int dim, std::vector<double> lengths, std::vector<int> counts) {
  if (dim != 1 && dim != 2) throw ConfigError("mesh dimension must be 1 or 2");
  if (static_cast<int>(lengths.size()) != dim || static_cast<int>(counts.size()) != dim)
    throw ConfigError("mesh needs one length and one node count per axis");
  for (int ax = 0; ax < dim; ++ax) {
    if (!(lengths[ax] > 0.0) || !std::isfinite(lengths[ax]))
      throw ConfigError("mesh lengths must be positive");
    if (counts[ax] < 3) throw ConfigError("mesh node counts must be >= 3");
  }

  Mesh m;
  m.dim_ = dim;
  m.lengths_ = std::move(lengths);
  m.counts_ = std::move(counts);
  m.size_ = 1;
  for (int ax = 0; ax < dim; ++ax) {
    m.spacing_.push_back(m.lengths_[ax] / (m.counts_[ax] - 1));
    m.size_ *= static_cast<std::size_t>(m.counts_[ax]);
  }

  auto axis_weights = [&](int ax) {
    std::vector<double> w(m.counts_[ax], m.spacing_[ax]);
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
  };
  const int nx = m.counts_[0];
  const int ny = dim == 2 ? m.counts_[1] : 1;
  const auto wx = axis_weights(0);
  const auto wy = dim == 2 ? axis_weights(1) : std::vector<double>{1.0};

  m.weights_.resize(m.size_);
  m.boundary_mask_.assign(m.size_, 0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = m.index(i, j);
      m.weights_[k] = wx[i] * wy[j];
      const bool edge = i == 0 || i == nx - 1 || (dim == 2 && (j == 0 || j == ny - 1));
      if (edge) {
        m.boundary_mask_[k] = 1;
        m.boundary_.push_back(k);
      }
    }
  }
  return m;
}

double Mesh::volume() const {
  double v = 1.0;
  for (double l : lengths_) v *= l;
  return v;
}

double Mesh::coord(std::size_t node, int axis) const {
  const auto nx = static_cast<std::size_t>(counts_[0]);
  const std::size_t i = axis == 0 ? node % nx : node / nx;
  return static_cast<double>(i) * spacing_[axis];
}

void check_field(const Mesh& mesh, std::span<const double> f) {
  if (f.size() != mesh.size())
    throw ConfigError("field has " + std::to_string(f.size()) +
                      " values but the mesh has " + std::to_string(mesh.size()) +
                      " nodes");
}

double integrate(const Mesh& mesh, std::span<const double> f) {
  check_field(mesh, f);
  return kernels::active().dot(mesh.weights().data(), f.data(), f.size());
}

double sup_norm(std::span<const double> f) {
  return kernels::active().max_abs(f.data(), f.size());
}

double min_value(std::span<const double> f) {
  return kernels::active().min_value(f.data(), f.size());
}

double positive_part_l2(const Mesh& mesh, std::span<const double> f) {
  check_field(mesh, f);
  return std::sqrt(
      kernels::active().weighted_pos_sq(mesh.weights().data(), f.data(), f.size()));
}

void apply_diffusion(const Mesh& mesh, std::span<const double> u, double a,
                     const MonotoneGraph& bc, std::span<double> out,
                     DiffusionWorkspace& ws) {
  check_field(mesh, u);
  check_field(mesh, out);
  const auto& k = kernels::active();
  const int nx = mesh.count(0);
  const int ny = mesh.dim() == 2 ? mesh.count(1) : 1;

  ws.pinned.assign(mesh.size(), 0);
  ws.flux.assign(mesh.size(), 0.0);
  for (std::size_t b : mesh.boundary_nodes()) {
    const auto v = bc.eval(u[b]);
    if (!v) throw ConfigError("boundary value outside the boundary graph domain");
    if (std::isinf(v->lo) && std::isinf(v->hi)) {
      ws.pinned[b] = 1;
    } else {
      ws.flux[b] = *bc.min_section(u[b]);
    }
  }

  // x direction
  const double hx = mesh.spacing(0);
  const double sx = a / (hx * hx);
  for (int j = 0; j < ny; ++j) {
    const double* row = u.data() + mesh.index(0, j);
    double* o = out.data() + mesh.index(0, j);
    k.second_difference(row, row + 1, row + 2, o + 1, nx - 2, sx, false);
    const std::size_t left = mesh.index(0, j);
    const std::size_t right = mesh.index(nx - 1, j);
    o[0] = sx * 2.0 * (row[1] - row[0]) - 2.0 * ws.flux[left] / hx;
    o[nx - 1] = sx * 2.0 * (row[nx - 2] - row[nx - 1]) - 2.0 * ws.flux[right] / hx;
  }

  if (mesh.dim() == 2) {
    const double hy = mesh.spacing(1);
    const double sy = a / (hy * hy);
    for (int j = 1; j < ny - 1; ++j) {
      k.second_difference(u.data() + mesh.index(0, j - 1), u.data() + mesh.index(0, j),
                          u.data() + mesh.index(0, j + 1), out.data() + mesh.index(0, j),
                          nx, sy, true);
    }
    for (int i = 0; i < nx; ++i) {
      const std::size_t bot = mesh.index(i, 0);
      const std::size_t top = mesh.index(i, ny - 1);
      out[bot] += sy * 2.0 * (u[mesh.index(i, 1)] - u[bot]) - 2.0 * ws.flux[bot] / hy;
      out[top] += sy * 2.0 * (u[mesh.index(i, ny - 2)] - u[top]) - 2.0 * ws.flux[top] / hy;
    }
  }

  for (std::size_t b : mesh.boundary_nodes()) {
    if (ws.pinned[b]) out[b] = 0.0;
  }
}

}  // namespace rdmono
