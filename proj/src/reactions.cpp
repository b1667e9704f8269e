#include "rdmono/reactions.hpp"

#include <algorithm>
#include <cmath>

#include "rdmono/error.hpp"

namespace rdmono {

namespace {

double signed_power(double u, double p) {
  // |u|^(p-2) u
  if (p == 3.0) return u * std::abs(u);
  if (p == 4.0) return u * u * u;
  if (u == 0.0) return 0.0;
  return std::pow(std::abs(u), p - 2.0) * u;
}

void require_p(double p) {
  if (!(p > 2.0) || !std::isfinite(p)) throw ConfigError("power reaction requires p > 2");
}

// Visits every point of the grid {lo + (hi-lo) i/(n-1)}^m.
template <class Visit>
void for_each_sample(int m, double lo, double hi, int n, Visit&& visit) {
  n = std::max(n, 2);
  std::vector<int> idx(m, 0);
  std::vector<double> u(m);
  while (true) {
    for (int d = 0; d < m; ++d) u[d] = lo + (hi - lo) * idx[d] / (n - 1);
    if (!visit(std::span<const double>(u))) return;
    int d = 0;
    while (d < m && ++idx[d] == n) idx[d++] = 0;
    if (d == m) return;
  }
}

}  // namespace

const char* to_string(ReactionKind kind) {
  switch (kind) {
    case ReactionKind::zero: return "zero";
    case ReactionKind::power: return "power";
    case ReactionKind::power_plus: return "power_plus";
    case ReactionKind::nuclear: return "nuclear";
    case ReactionKind::table: return "table";
    case ReactionKind::custom: return "custom";
  }
  return "unknown";
}

Reaction Reaction::zero(int m) {
  if (m < 1) throw ConfigError("reaction needs at least one component");
  Reaction r;
  r.m_ = m;
  return r;
}

Reaction Reaction::power(double p) {
  require_p(p);
  Reaction r;
  r.kind_ = ReactionKind::power;
  r.label_ = "power";
  r.p_ = p;
  return r;
}

Reaction Reaction::power_plus(double p, double kappa) {
  require_p(p);
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw ConfigError("power_plus reaction requires kappa >= 0");
  Reaction r;
  r.kind_ = ReactionKind::power_plus;
  r.label_ = "power_plus";
  r.p_ = p;
  r.kappa_ = kappa;
  return r;
}

Reaction Reaction::nuclear(double a, double b) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw ConfigError("nuclear reaction requires a >= 0");
  if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("nuclear reaction requires b > 0");
  Reaction r;
  r.kind_ = ReactionKind::nuclear;
  r.label_ = "nuclear";
  r.m_ = 2;
  r.a_ = a;
  r.b_ = b;
  return r;
}

Reaction Reaction::table(std::vector<double> u, std::vector<double> f) {
  if (u.size() < 2 || u.size() != f.size())
    throw ConfigError("table reaction needs >= 2 matching (u, f) samples");
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (!(u[i] > u[i - 1])) throw ConfigError("table reaction abscissae must increase strictly");
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(f[i]))
      throw ConfigError("table reaction values must be finite");
  }
  Reaction r;
  r.kind_ = ReactionKind::table;
  r.label_ = "table";
  r.table_u_ = std::move(u);
  r.table_f_ = std::move(f);
  return r;
}

Reaction Reaction::custom(int m, Fn fn, std::string label) {
  if (m < 1) throw ConfigError("reaction needs at least one component");
  if (!fn) throw ConfigError("custom reaction needs a callable");
  Reaction r;
  r.kind_ = ReactionKind::custom;
  r.m_ = m;
  r.label_ = std::move(label);
  r.fn_ = std::make_shared<const Fn>(std::move(fn));
  return r;
}

void Reaction::eval(std::span<const double> u, std::span<double> out) const {
  switch (kind_) {
    case ReactionKind::zero:
      std::fill(out.begin(), out.begin() + m_, 0.0);
      return;
    case ReactionKind::power:
      out[0] = signed_power(u[0], p_);
      return;
    case ReactionKind::power_plus:
      out[0] = signed_power(u[0], p_) + kappa_ * std::max(u[0], 0.0);
      return;
    case ReactionKind::nuclear:
      out[0] = u[0] * u[1] - b_ * u[0];
      out[1] = a_ * u[0];
      return;
    case ReactionKind::table: {
      const auto& xs = table_u_;
      const auto& fs = table_f_;
      const double x = u[0];
      std::size_t i = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
      i = std::clamp<std::size_t>(i, 1, xs.size() - 1);
      const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
      out[0] = fs[i - 1] + t * (fs[i] - fs[i - 1]);
      return;
    }
    case ReactionKind::custom:
      (*fn_)(u.first(m_), out.first(m_));
      return;
  }
}

std::vector<double> Reaction::eval(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != m_)
    throw ConfigError("reaction input has the wrong number of components");
  std::vector<double> out(m_);
  eval(u, out);
  return out;
}

double Reaction::ell(double r) const {
  if (!(r >= 0.0)) throw ConfigError("ell requires r >= 0");
  switch (kind_) {
    case ReactionKind::zero:
      return r;
    case ReactionKind::power:
      return r + std::pow(r, p_ - 1.0);
    case ReactionKind::power_plus:
      return r + std::pow(r, p_ - 1.0) + kappa_ * r;
    case ReactionKind::nuclear:
      return a_ * r + r * r;
    case ReactionKind::table: {
      // Piecewise linear: the sup over [-r, r] is attained at a knot or an end.
      double sup = 0.0;
      std::vector<double> out(1);
      auto probe = [&](double x) {
        const double in[1] = {x};
        eval(in, out);
        sup = std::max(sup, std::abs(out[0]));
      };
      probe(-r);
      probe(r);
      for (double x : table_u_) {
        if (std::abs(x) <= r) probe(x);
      }
      return r + sup;
    }
    case ReactionKind::custom: {
      // Sampled sup padded by the largest jump between consecutive samples,
      // which bounds the excursion between grid points for Lipschitz F.
      double sup = 0.0;
      double jump = 0.0;
      std::vector<double> out(m_), prev;
      const int n = m_ == 1 ? 401 : 11;
      for_each_sample(m_, -r, r, n, [&](std::span<const double> u) {
        eval(u, out);
        for (int k = 0; k < m_; ++k) {
          sup = std::max(sup, std::abs(out[k]));
          if (!prev.empty()) jump = std::max(jump, std::abs(out[k] - prev[k]));
        }
        prev = out;
        return true;
      });
      return r + sup + jump;
    }
  }
  return r;
}

double Reaction::local_lipschitz(double r) const {
  r = std::max(r, 0.0);
  switch (kind_) {
    case ReactionKind::zero:
      return 0.0;
    case ReactionKind::power:
      return (p_ - 1.0) * std::pow(r, p_ - 2.0);
    case ReactionKind::power_plus:
      return (p_ - 1.0) * std::pow(r, p_ - 2.0) + kappa_;
    case ReactionKind::nuclear:
      return std::max({r + b_, r, a_});
    case ReactionKind::table: {
      double s = 0.0;
      for (std::size_t i = 1; i < table_u_.size(); ++i)
        s = std::max(s, std::abs((table_f_[i] - table_f_[i - 1]) /
                                 (table_u_[i] - table_u_[i - 1])));
      return s;
    }
    case ReactionKind::custom:
      return check_sc(*this, std::max(r, 1e-12), m_ == 1 ? 101 : 11).lipschitz;
  }
  return 0.0;
}

double ell(const Reaction& f, double r) { return f.ell(r); }

ScResult check_sc(const Reaction& f, double box_radius, int samples, SampleBox box) {
  if (!(box_radius > 0.0)) throw ConfigError("check_sc requires M > 0");
  const int m = f.components();
  const double h = 1e-6 * std::max(1.0, box_radius);
  const double lo = box == SampleBox::nonnegative ? 0.0 : -box_radius;

  ScResult res;
  double max_partial = 0.0;
  std::vector<double> up(m), dn(m), fp(m), fm(m);
  for_each_sample(m, lo, box_radius, samples, [&](std::span<const double> u) {
    for (int j = 0; j < m; ++j) {
      std::copy(u.begin(), u.end(), up.begin());
      std::copy(u.begin(), u.end(), dn.begin());
      up[j] += h;
      dn[j] -= h;
      f.eval(up, fp);
      f.eval(dn, fm);
      for (int k = 0; k < m; ++k) {
        const double d = (fp[k] - fm[k]) / (2.0 * h);
        max_partial = std::max(max_partial, std::abs(d));
        if (k != j && d < -1e-8 && !res.witness) {
          res.witness = ScWitness{k, j, std::vector<double>(u.begin(), u.end()), d};
        }
      }
    }
    return true;
  });
  res.ok = !res.witness;
  res.lipschitz = 1.1 * max_partial;
  return res;
}

OrderResult check_order_F(const Reaction& f1, const Reaction& f2,
                          double box_radius, int samples, SampleBox box) {
  if (f1.components() != f2.components())
    throw ConfigError("reaction ordering requires the same number of components");
  if (!(box_radius > 0.0)) throw ConfigError("check_order_F requires M > 0");
  const int m = f1.components();
  const double lo = box == SampleBox::nonnegative ? 0.0 : -box_radius;

  OrderResult res;
  res.verdict = Verdict::holds;
  std::vector<double> a(m), b(m);
  for_each_sample(m, lo, box_radius, samples, [&](std::span<const double> u) {
    f1.eval(u, a);
    f2.eval(u, b);
    for (int k = 0; k < m; ++k) {
      if (!std::isfinite(a[k]) || !std::isfinite(b[k])) {
        res.verdict = Verdict::inconclusive;
        return false;
      }
      if (a[k] > b[k] + 1e-12) {
        res.verdict = Verdict::fails;
        res.witness = OrderWitness{k, std::vector<double>(u.begin(), u.end()), a[k], b[k]};
        return false;
      }
    }
    return true;
  });
  return res;
}

}  // namespace rdmono
