#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rdmono/graphs.hpp"

namespace rdmono {

enum class ReactionKind { zero, power, power_plus, nuclear, table, custom };

const char* to_string(ReactionKind kind);

/// Single-valued, locally Lipschitz reaction F: R^m -> R^m.
///
///   power(p):          F(u) = |u|^(p-2) u                      (m = 1, p > 2)
///   power_plus(p, k):  F(u) = |u|^(p-2) u + k max(u, 0)        (m = 1, p > 2, k >= 0)
///   nuclear(a, b):     F = (u1 u2 - b u1, a u1)                 (m = 2, a >= 0, b > 0)
///   table(u, f):       piecewise-linear interpolation, linear extrapolation (m = 1)
///   custom(m, fn):     user callable, in-process only
class Reaction {
 public:
  using Fn = std::function<void(std::span<const double>, std::span<double>)>;

  static Reaction zero(int m = 1);
  static Reaction power(double p);
  static Reaction power_plus(double p, double kappa);
  static Reaction nuclear(double a, double b);
  static Reaction table(std::vector<double> u, std::vector<double> f);
  static Reaction custom(int m, Fn fn, std::string label = "custom");

  ReactionKind kind() const { return kind_; }
  int components() const { return m_; }
  const std::string& label() const { return label_; }
  double p() const { return p_; }
  double kappa() const { return kappa_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const std::vector<double>& table_u() const { return table_u_; }
  const std::vector<double>& table_f() const { return table_f_; }

  void eval(std::span<const double> u, std::span<double> out) const;
  std::vector<double> eval(std::span<const double> u) const;

  /// Growth envelope: r + sup{|F(tau)| : |tau| <= r}; a r + r^2 for nuclear.
  double ell(double r) const;

  /// Upper bound on |dF^k/du_j| over the box |U|_inf <= r.
  double local_lipschitz(double r) const;

 private:
  ReactionKind kind_ = ReactionKind::zero;
  int m_ = 1;
  std::string label_ = "zero";
  double p_ = 0.0;
  double kappa_ = 0.0;
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<double> table_u_;
  std::vector<double> table_f_;
  std::shared_ptr<const Fn> fn_;
};

double ell(const Reaction& f, double r);

/// Sample region for reaction checks: [-M, M]^m or [0, M]^m.
enum class SampleBox { symmetric, nonnegative };

struct ScWitness {
  int k = 0;
  int j = 0;
  std::vector<double> u;
  double partial = 0.0;
};

struct ScResult {
  bool ok = false;
  /// 1.1 x the largest sampled |partial| on the box; computed even when !ok.
  double lipschitz = 0.0;
  std::optional<ScWitness> witness;
};

/// Quasimonotonicity check by central differences (step 1e-6 max(1, M)) on a
/// `samples`^m grid: off-diagonal partials must be >= -1e-8.
ScResult check_sc(const Reaction& f, double box_radius, int samples = 41,
                  SampleBox box = SampleBox::symmetric);

struct OrderWitness {
  int k = 0;
  std::vector<double> u;
  double f1 = 0.0;
  double f2 = 0.0;
};

struct OrderResult {
  Verdict verdict = Verdict::inconclusive;
  std::optional<OrderWitness> witness;
};

/// Sampled check of F1^k(U) <= F2^k(U) + 1e-12 on the box. Holding means
/// "holds on the sampled box"; the full-space statement is not decidable here.
OrderResult check_order_F(const Reaction& f1, const Reaction& f2,
                          double box_radius, int samples = 41,
                          SampleBox box = SampleBox::symmetric);

}  // namespace rdmono
