#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rdmono/graphs.hpp"

namespace rdmono {

/// Uniform tensor grid on [0, L1] or [0, L1] x [0, L2], boundary nodes included.
/// Node (i, j) is stored at j * nx + i.
class Mesh {
 public:
  Mesh() = default;

  /// Throws ConfigError unless dim in {1, 2}, lengths > 0 and counts >= 3.
  static Mesh build(int dim, std::vector<double> lengths, std::vector<int> counts);

  int dim() const { return dim_; }
  std::size_t size() const { return size_; }
  int count(int axis) const { return counts_[axis]; }
  double length(int axis) const { return lengths_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  double volume() const;
  const std::vector<double>& lengths() const { return lengths_; }
  const std::vector<int>& counts() const { return counts_; }

  std::size_t index(int i, int j = 0) const {
    return static_cast<std::size_t>(j) * counts_[0] + i;
  }
  double coord(std::size_t node, int axis) const;
  bool is_boundary(std::size_t node) const { return boundary_mask_[node] != 0; }
  const std::vector<std::size_t>& boundary_nodes() const { return boundary_; }

  /// Composite trapezoidal weights (tensorized in 2D).
  std::span<const double> weights() const { return weights_; }

  bool operator==(const Mesh& o) const {
    return dim_ == o.dim_ && lengths_ == o.lengths_ && counts_ == o.counts_;
  }

 private:
  int dim_ = 0;
  std::size_t size_ = 0;
  std::vector<double> lengths_;
  std::vector<int> counts_;
  std::vector<double> spacing_;
  std::vector<double> weights_;
  std::vector<std::size_t> boundary_;
  std::vector<unsigned char> boundary_mask_;
};

/// Throws ConfigError when f does not have one value per mesh node.
void check_field(const Mesh& mesh, std::span<const double> f);

double integrate(const Mesh& mesh, std::span<const double> f);
double sup_norm(std::span<const double> f);
double min_value(std::span<const double> f);
/// Discrete L2 norm of max(f, 0).
double positive_part_l2(const Mesh& mesh, std::span<const double> f);

struct DiffusionWorkspace {
  /// 1 where the boundary graph pins the node (value set = R, e.g. Dirichlet).
  std::vector<unsigned char> pinned;
  /// Flux section used at each boundary node (minimal-norm element of gamma(u_b)).
  std::vector<double> flux;
};

/// out = a * Laplacian_h(u). Interior nodes use the 3-/5-point stencil. At a
/// boundary node the ghost value is eliminated through the flux law
/// -a (u_ghost - u_in) / (2h) = g with g in bc(u_b), face by face. Rows where
/// bc(u_b) is all of R are constraint rows: out = 0 and ws.pinned = 1.
/// Throws ConfigError when a boundary value lies outside D(bc).
void apply_diffusion(const Mesh& mesh, std::span<const double> u, double a,
                     const MonotoneGraph& bc, std::span<double> out,
                     DiffusionWorkspace& ws);

}  // namespace rdmono
