#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rdmono {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class GraphKind {
  zero,
  linear,
  power,
  dirichlet,
  extended_power,
  extended_neumann,
  obstacle,
  custom
};

const char* to_string(GraphKind kind);
std::optional<GraphKind> graph_kind_from_string(const std::string& name);

/// Constructor parameters for the built-in graph families.
///
/// linear:           g(r) = alpha * r
/// power:            g(r) = alpha * sign(r) |r|^(q-1)
/// extended_power:   power graph restricted to [0, inf) with (-inf, 0] attached at 0
/// extended_neumann: g = 0 on [0, inf) with (-inf, 0] attached at 0
/// obstacle:         0 on (-M, M), vertical half-lines at -M and M
struct GraphSpec {
  GraphKind kind = GraphKind::zero;
  double alpha = 1.0;
  double q = 2.0;
  double obstacle = 1.0;

  bool operator==(const GraphSpec&) const = default;
};

/// Closed interval with possibly infinite endpoints.
struct Interval {
  double lo;
  double hi;
  bool operator==(const Interval&) const = default;
};

/// Scalar maximal monotone graph stored as a closed domain [lo, hi], a
/// nondecreasing selection g on its interior, and optional vertical segments
/// at finite endpoints. Values are immutable and cheap to copy.
class MonotoneGraph {
 public:
  using Selection = std::function<double(double)>;

  MonotoneGraph();

  /// Throws ConfigError on invalid parameters (q <= 1, alpha < 0, M <= 0).
  static MonotoneGraph make(const GraphSpec& spec);

  /// The selection must be nondecreasing on (lo, hi) and, evaluated at a
  /// finite endpoint, return the one-sided limit there.
  static MonotoneGraph custom(double lo, double hi, Selection g, bool seg_lo,
                              bool seg_hi, std::string label = "custom");

  /// gamma_e: base on (0, inf), (-inf, 0] u base(0) at 0, empty for r < 0.
  /// Requires 0 in base(0).
  static MonotoneGraph extend_nonnegative(const MonotoneGraph& base);

  GraphKind kind() const { return spec_.kind; }
  const GraphSpec& spec() const { return spec_; }
  const std::string& label() const { return label_; }
  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }
  bool segment_lo() const { return seg_lo_; }
  bool segment_hi() const { return seg_hi_; }

  bool in_domain(double r) const { return r >= lo_ && r <= hi_; }
  /// Projection onto the closed domain.
  double project(double r) const;
  /// True when the graph is {(r, 0)} on all of R, so its resolvent is the identity.
  bool is_zero() const;
  /// Same family and parameters, or the same custom selection object.
  bool identical(const MonotoneGraph& other) const;

  /// Selection value; at a finite endpoint this is the one-sided limit.
  double selection(double r) const;

  /// Value set gamma(r); empty outside the domain.
  std::optional<Interval> eval(double r) const;

  /// Element of gamma(r) with minimal absolute value.
  std::optional<double> min_section(double r) const;

  /// Unique x in the closed domain with x + lambda*gamma(x) containing r.
  double resolvent(double lambda, double r) const;

  /// (r - resolvent(lambda, r)) / lambda.
  double yosida(double lambda, double r) const;

 private:
  GraphSpec spec_;
  std::string label_;
  double lo_ = -kInf;
  double hi_ = kInf;
  bool seg_lo_ = false;
  bool seg_hi_ = false;
  std::shared_ptr<const Selection> custom_;
};

/// A graph scaled by a nonnegative weight, used to form sums w1*G1 + w2*G2.
struct WeightedGraph {
  const MonotoneGraph* graph;
  double weight;
};

/// Solves x + sum_i w_i G_i(x) containing r over the intersection of domains
/// by bracketed bisection (absolute tolerance 1e-12, at most 200 halvings).
/// Throws InvariantError when no solution exists.
double resolvent_sum(std::span<const WeightedGraph> terms, double r);

/// Sampling spec for graph comparisons: `count` uniform points on [lo, hi],
/// augmented with every finite domain endpoint inside the range.
struct RGrid {
  double lo = -10.0;
  double hi = 10.0;
  int count = 401;
};

enum class Verdict { holds, fails, inconclusive };
const char* to_string(Verdict v);

/// Which alternative of the graph-ordering hypothesis was certified.
enum class DominanceMode { none, identical, ordered_values, ordered_domains };
const char* to_string(DominanceMode mode);

struct DominanceVerdict {
  Verdict verdict = Verdict::inconclusive;
  DominanceMode mode = DominanceMode::none;
  /// Violating pair (r1 in D(G1), r2 in D(G2), r1 > r2) when verdict == fails.
  std::optional<std::pair<double, double>> witness;
};

/// Checks that G1 lies below G2 in the sense required of the boundary graphs of
/// a sub-/super-solution pair: identical graphs (i); sup G2(r2) <= inf G1(r1)
/// for all sampled r1 > r2 (ii); or sup D(G1) <= inf D(G2) (iii).
DominanceVerdict dominates(const MonotoneGraph& g1, const MonotoneGraph& g2,
                           const RGrid& grid = {});

}  // namespace rdmono
