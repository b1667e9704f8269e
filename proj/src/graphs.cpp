#include "rdmono/graphs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "rdmono/error.hpp"

namespace rdmono {

namespace {

constexpr double kResolventTol = 1e-12;
constexpr int kMaxBisections = 200;
constexpr int kMaxExpansions = 2100;

double power_selection(double alpha, double q, double r) {
  if (r == 0.0) return 0.0;
  const double mag = alpha * std::pow(std::abs(r), q - 1.0);
  return r > 0.0 ? mag : -mag;
}

std::string format_param_error(const char* what, double value) {
  std::ostringstream os;
  os << what << " (got " << value << ")";
  return os.str();
}

}  // namespace

const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::zero: return "zero";
    case GraphKind::linear: return "linear";
    case GraphKind::power: return "power";
    case GraphKind::dirichlet: return "dirichlet";
    case GraphKind::extended_power: return "extended_power";
    case GraphKind::extended_neumann: return "extended_neumann";
    case GraphKind::obstacle: return "obstacle";
    case GraphKind::custom: return "custom";
  }
  return "unknown";
}

std::optional<GraphKind> graph_kind_from_string(const std::string& name) {
  static constexpr std::array kinds = {
      GraphKind::zero,           GraphKind::linear,
      GraphKind::power,          GraphKind::dirichlet,
      GraphKind::extended_power, GraphKind::extended_neumann,
      GraphKind::obstacle,       GraphKind::custom};
  for (GraphKind k : kinds) {
    if (name == to_string(k)) return k;
  }
  if (name == "neumann") return GraphKind::zero;
  return std::nullopt;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

const char* to_string(DominanceMode mode) {
  switch (mode) {
    case DominanceMode::none: return "none";
    case DominanceMode::identical: return "i";
    case DominanceMode::ordered_values: return "ii";
    case DominanceMode::ordered_domains: return "iii";
  }
  return "unknown";
}

MonotoneGraph::MonotoneGraph() : label_("zero") {}

MonotoneGraph MonotoneGraph::make(const GraphSpec& spec) {
  MonotoneGraph g;
  GraphSpec s;  // unused parameters stay at their defaults so == is meaningful
  s.kind = spec.kind;
  g.label_ = to_string(spec.kind);

  auto need_alpha = [&] {
    if (!(spec.alpha >= 0.0) || !std::isfinite(spec.alpha))
      throw ConfigError(format_param_error("graph alpha must be >= 0", spec.alpha));
    s.alpha = spec.alpha;
  };
  auto need_q = [&] {
    if (!(spec.q > 1.0) || !std::isfinite(spec.q))
      throw ConfigError(format_param_error("graph exponent q must be > 1", spec.q));
    s.q = spec.q;
  };

  switch (spec.kind) {
    case GraphKind::zero:
      break;
    case GraphKind::linear:
      need_alpha();
      break;
    case GraphKind::power:
      need_alpha();
      need_q();
      break;
    case GraphKind::dirichlet:
      g.lo_ = 0.0;
      g.hi_ = 0.0;
      g.seg_lo_ = g.seg_hi_ = true;
      break;
    case GraphKind::extended_power:
      need_alpha();
      need_q();
      g.lo_ = 0.0;
      g.seg_lo_ = true;
      break;
    case GraphKind::extended_neumann:
      g.lo_ = 0.0;
      g.seg_lo_ = true;
      break;
    case GraphKind::obstacle:
      if (!(spec.obstacle > 0.0) || !std::isfinite(spec.obstacle))
        throw ConfigError(
            format_param_error("obstacle level M must be > 0", spec.obstacle));
      s.obstacle = spec.obstacle;
      g.lo_ = -spec.obstacle;
      g.hi_ = spec.obstacle;
      g.seg_lo_ = g.seg_hi_ = true;
      break;
    case GraphKind::custom:
      throw ConfigError("custom graphs are built with MonotoneGraph::custom");
  }
  g.spec_ = s;
  return g;
}

MonotoneGraph MonotoneGraph::custom(double lo, double hi, Selection sel,
                                    bool seg_lo, bool seg_hi,
                                    std::string label) {
  if (!(lo <= hi)) throw ConfigError("custom graph domain requires lo <= hi");
  if (!sel) throw ConfigError("custom graph requires a selection");
  MonotoneGraph g;
  g.spec_.kind = GraphKind::custom;
  g.label_ = std::move(label);
  g.lo_ = lo;
  g.hi_ = hi;
  g.seg_lo_ = seg_lo && std::isfinite(lo);
  g.seg_hi_ = seg_hi && std::isfinite(hi);
  g.custom_ = std::make_shared<const Selection>(std::move(sel));
  return g;
}

MonotoneGraph MonotoneGraph::extend_nonnegative(const MonotoneGraph& base) {
  const auto at_zero = base.eval(0.0);
  if (!at_zero || at_zero->lo > 0.0 || at_zero->hi < 0.0)
    throw ConfigError("extension requires a base graph with 0 in gamma(0)");

  if (base.kind() == GraphKind::power || base.kind() == GraphKind::linear) {
    GraphSpec s{GraphKind::extended_power, base.spec().alpha,
                base.kind() == GraphKind::linear ? 2.0 : base.spec().q, 1.0};
    return make(s);
  }
  if (base.is_zero()) return make({GraphKind::extended_neumann});

  // At 0 the value set is (-inf, 0] u base(0) = (-inf, sup base(0)].
  const double top = at_zero->hi;
  auto sel = [base, top](double r) {
    return r <= 0.0 ? top : base.selection(r);
  };
  return custom(0.0, base.domain_hi(), sel, true, base.segment_hi(),
                "extended(" + base.label() + ")");
}

double MonotoneGraph::project(double r) const {
  return std::clamp(r, lo_, hi_);
}

bool MonotoneGraph::is_zero() const {
  switch (spec_.kind) {
    case GraphKind::zero: return true;
    case GraphKind::linear:
    case GraphKind::power: return spec_.alpha == 0.0;
    default: return false;
  }
}

bool MonotoneGraph::identical(const MonotoneGraph& other) const {
  if (is_zero() && other.is_zero()) return true;
  if (spec_.kind != other.spec_.kind) return false;
  if (spec_.kind == GraphKind::custom) {
    return custom_ == other.custom_ && lo_ == other.lo_ && hi_ == other.hi_ &&
           seg_lo_ == other.seg_lo_ && seg_hi_ == other.seg_hi_;
  }
  return spec_ == other.spec_;
}

double MonotoneGraph::selection(double r) const {
  switch (spec_.kind) {
    case GraphKind::zero:
    case GraphKind::dirichlet:
    case GraphKind::extended_neumann:
    case GraphKind::obstacle:
      return 0.0;
    case GraphKind::linear:
      return spec_.alpha * r;
    case GraphKind::power:
      return power_selection(spec_.alpha, spec_.q, r);
    case GraphKind::extended_power:
      return power_selection(spec_.alpha, spec_.q, std::max(r, 0.0));
    case GraphKind::custom:
      return (*custom_)(r);
  }
  return 0.0;
}

std::optional<Interval> MonotoneGraph::eval(double r) const {
  if (std::isnan(r) || r < lo_ || r > hi_) return std::nullopt;
  if (lo_ == hi_) {
    const double g = selection(r);
    return Interval{seg_lo_ ? -kInf : g, seg_hi_ ? kInf : g};
  }
  const double g = selection(r);
  if (r == lo_) return Interval{seg_lo_ ? -kInf : g, g};
  if (r == hi_) return Interval{g, seg_hi_ ? kInf : g};
  return Interval{g, g};
}

std::optional<double> MonotoneGraph::min_section(double r) const {
  const auto v = eval(r);
  if (!v) return std::nullopt;
  if (v->lo <= 0.0 && v->hi >= 0.0) return 0.0;
  return v->lo > 0.0 ? v->lo : v->hi;
}

double MonotoneGraph::resolvent(double lambda, double r) const {
  if (!(lambda > 0.0)) throw ConfigError("resolvent requires lambda > 0");
  switch (spec_.kind) {
    case GraphKind::zero: return r;
    case GraphKind::linear: return r / (1.0 + lambda * spec_.alpha);
    case GraphKind::dirichlet: return 0.0;
    case GraphKind::obstacle: return std::clamp(r, lo_, hi_);
    case GraphKind::extended_neumann: return std::max(r, 0.0);
    default: break;
  }
  const WeightedGraph term{this, lambda};
  return resolvent_sum(std::span<const WeightedGraph>(&term, 1), r);
}

double MonotoneGraph::yosida(double lambda, double r) const {
  return (r - resolvent(lambda, r)) / lambda;
}

double resolvent_sum(std::span<const WeightedGraph> terms, double r) {
  if (!std::isfinite(r)) throw InvariantError("resolvent of a non-finite value");
  double lo = -kInf;
  double hi = kInf;
  for (const auto& t : terms) {
    if (!(t.weight >= 0.0)) throw ConfigError("graph weights must be >= 0");
    lo = std::max(lo, t.graph->domain_lo());
    hi = std::min(hi, t.graph->domain_hi());
  }
  if (lo > hi) throw InvariantError("graph sum has an empty domain");

  // Sign of the residual set x - r + sum w*G(x):
  // -1 if entirely negative (root to the right), +1 if entirely positive,
  // 0 if it contains zero.
  auto side = [&](double x) {
    double lower = x - r;
    double upper = x - r;
    for (const auto& t : terms) {
      if (t.weight == 0.0) continue;
      const auto v = t.graph->eval(x);
      lower += t.weight * v->lo;
      upper += t.weight * v->hi;
    }
    if (upper < 0.0) return -1;
    if (lower > 0.0) return 1;
    return 0;
  };

  if (lo == hi) {
    if (side(lo) != 0) throw InvariantError("no resolvent solution on a point domain");
    return lo;
  }

  double a = -kInf;
  double b = kInf;
  if (std::isfinite(lo)) {
    const int s = side(lo);
    if (s == 0) return lo;
    if (s > 0) throw InvariantError("resolvent solution lies below the domain");
    a = lo;
  }
  if (std::isfinite(hi)) {
    const int s = side(hi);
    if (s == 0) return hi;
    if (s < 0) throw InvariantError("resolvent solution lies above the domain");
    b = hi;
  }
  for (double probe : {std::clamp(0.0, lo, hi), std::clamp(r, lo, hi)}) {
    if (probe <= a || probe >= b) continue;
    const int s = side(probe);
    if (s == 0) return probe;
    if (s < 0) a = probe;
    else b = probe;
  }

  if (!std::isfinite(a)) {
    double step = 1.0;
    double x = (std::isfinite(b) ? b : r) - step;
    for (int i = 0;; ++i) {
      if (i > kMaxExpansions || !std::isfinite(x))
        throw InvariantError("resolvent bracket expansion failed");
      const int s = side(x);
      if (s == 0) return x;
      if (s < 0) {
        a = x;
        break;
      }
      b = x;
      step *= 2.0;
      x -= step;
    }
  }
  if (!std::isfinite(b)) {
    double step = 1.0;
    double x = a + step;
    for (int i = 0;; ++i) {
      if (i > kMaxExpansions || !std::isfinite(x))
        throw InvariantError("resolvent bracket expansion failed");
      const int s = side(x);
      if (s == 0) return x;
      if (s > 0) {
        b = x;
        break;
      }
      a = x;
      step *= 2.0;
      x += step;
    }
  }

  for (int i = 0; i < kMaxBisections && b - a > kResolventTol; ++i) {
    const double mid = a + 0.5 * (b - a);
    if (mid <= a || mid >= b) break;
    const int s = side(mid);
    if (s == 0) return mid;
    if (s < 0) a = mid;
    else b = mid;
  }
  return a + 0.5 * (b - a);
}

DominanceVerdict dominates(const MonotoneGraph& g1, const MonotoneGraph& g2,
                           const RGrid& grid) {
  DominanceVerdict out;
  if (g1.identical(g2)) {
    out.verdict = Verdict::holds;
    out.mode = DominanceMode::identical;
    return out;
  }
  if (g1.domain_hi() <= g2.domain_lo()) {
    out.verdict = Verdict::holds;
    out.mode = DominanceMode::ordered_domains;
    return out;
  }

  std::vector<double> samples;
  const int n = std::max(grid.count, 2);
  samples.reserve(static_cast<std::size_t>(n) + 4);
  for (int i = 0; i < n; ++i)
    samples.push_back(grid.lo + (grid.hi - grid.lo) * i / (n - 1));
  for (double e : {g1.domain_lo(), g1.domain_hi(), g2.domain_lo(), g2.domain_hi()}) {
    if (std::isfinite(e) && e >= grid.lo && e <= grid.hi) samples.push_back(e);
  }
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  // Running maximum of sup G2(r2) over r2 < current r1.
  std::vector<std::pair<double, double>> sup2;  // (r2, running max)
  std::vector<double> argmax2;
  double running = -kInf;
  double running_arg = 0.0;
  for (double r2 : samples) {
    if (const auto v = g2.eval(r2)) {
      if (v->hi > running) {
        running = v->hi;
        running_arg = r2;
      }
      sup2.emplace_back(r2, running);
      argmax2.push_back(running_arg);
    }
  }

  std::size_t k = 0;  // number of r2 strictly below r1
  for (double r1 : samples) {
    const auto v1 = g1.eval(r1);
    if (!v1) continue;
    while (k < sup2.size() && sup2[k].first < r1) ++k;
    if (k == 0) continue;
    const double worst = sup2[k - 1].second;
    const double inf1 = v1->lo;
    const double tol = std::isfinite(inf1) ? 1e-12 * (1.0 + std::abs(inf1)) : 0.0;
    if (worst > inf1 + tol) {
      out.verdict = Verdict::fails;
      out.mode = DominanceMode::none;
      out.witness = std::make_pair(r1, argmax2[k - 1]);
      return out;
    }
  }

  auto unbounded_custom = [](const MonotoneGraph& g) {
    return g.kind() == GraphKind::custom &&
           (!std::isfinite(g.domain_lo()) || !std::isfinite(g.domain_hi()));
  };
  out.mode = DominanceMode::ordered_values;
  out.verdict = (unbounded_custom(g1) || unbounded_custom(g2))
                    ? Verdict::inconclusive
                    : Verdict::holds;
  return out;
}

}  // namespace rdmono
