#pragma once

#include <string>
#include <vector>

#include "rdmono/graphs.hpp"
#include "rdmono/reactions.hpp"
#include "rdmono/stepper.hpp"

namespace rdmono {

/// A-priori orderings that replace the corresponding hypothesis checks.
struct PairOverrides {
  bool a3 = false;  ///< boundary-flux ordering known a priori: skip the boundary graph check
  bool a4 = false;  ///< reaction ordering known a priori: skip the reaction checks
};

/// Hypotheses for "P1 is a sub-solution and P2 a super-solution".
struct AssumptionReport {
  double a1_max_violation = 0.0;        ///< max (u1_0 - u2_0)^+
  std::vector<DominanceVerdict> a2;     ///< per component: beta1 vs beta2
  std::vector<DominanceVerdict> a3;     ///< per component: gamma1 vs gamma2
  OrderResult a4_order;                 ///< F1 <= F2 on the box
  ScResult a4_sc1;                      ///< quasimonotonicity of F1
  ScResult a4_sc2;                      ///< quasimonotonicity of F2
  double box_radius = 0.0;
  SampleBox box = SampleBox::symmetric;
  PairOverrides overrides;

  bool a1() const { return a1_max_violation <= 0.0; }
  bool a2_ok() const;
  bool a3_ok() const;
  bool a4_ok() const;
  bool pass() const { return a1() && a2_ok() && a3_ok() && a4_ok(); }
  /// max of the two sampled Lipschitz bounds
  double lipschitz() const;
};

/// Throws ConfigError unless both specs share the mesh, component count and
/// diffusion coefficients. box_radius <= 0 selects 2 max(1, sup of initial data).
/// The sample box is [0, M]^m when all initial data are nonnegative.
AssumptionReport check_assumptions(const ProblemSpec& p1, const ProblemSpec& p2,
                                   double box_radius = 0.0, PairOverrides overrides = {},
                                   int samples = 41);

/// max_k max_nodes (u1^k - u2^k)^+
double ordering_defect(const State& s1, const State& s2);

struct PairStep {
  double t = 0.0;
  double dt = 0.0;
  double defect = 0.0;          ///< ordering_defect at t
  double w = 0.0;               ///< sum_k ||(u1^k - u2^k)^+||^2_L2
  double gronwall_margin = 0.0; ///< W(t) - W(s) exp(2 m L (t - s))
};

struct ComparisonReport {
  AssumptionReport assumptions;
  std::vector<PairStep> steps;  ///< shared time grid, starting at t = 0
  Trajectory traj1;
  Trajectory traj2;
  double common_end = 0.0;      ///< end of the shared interval
  double max_defect = 0.0;
  double tol_order = 0.0;
  double max_gronwall_margin = 0.0;
  double tol_gronwall = 0.0;
  double gronwall_lipschitz = 0.0;  ///< L on the box of the largest sup-norm reached
  double tb_slack = 0.0;            ///< one dt near the end of the runs
  bool ordering_ok = false;
  bool gronwall_ok = false;
  /// T_b(P2) <= T_b(P1) + slack; true when neither run blew up.
  bool blowup_order_ok = false;
  std::string note;

  bool any_blowup() const;
  bool any_solver_failure() const;
};

struct PairOptions {
  PairOverrides overrides;
  double box_radius = 0.0;  ///< for check_assumptions
  /// After the first run terminates, advance the other one alone to get its T_b.
  bool continue_survivor = true;
  SolverOptions solver;
};

/// Co-evolves both problems with dt = min of both proposals, recording the
/// ordering defect and the Gronwall margin on the shared grid.
///   tol_order    = 1e-6 + 10 (h^2 + dt_max) (1 + max sup)
///   tol_gronwall = m |Omega| tol_order^2
/// The margin passes when G(t) <= tol_gronwall (1 + W(s)) for all t.
ComparisonReport run_pair(const ProblemSpec& p1, const ProblemSpec& p2,
                          const TimeControl& tc, const PairOptions& opts = {});

struct BlowupOrderResult {
  std::vector<RunStatus> status;
  std::vector<double> t_b;
  std::vector<double> slack;  ///< slack used between entries i and i+1
  bool pass = false;
  std::string diagnostics;
};

/// Runs each spec and checks T_b[0] <= T_b[1] <= ... within one dt. Every run
/// must blow up. Specs must share mesh and component count.
BlowupOrderResult blowup_order_experiment(const std::vector<const ProblemSpec*>& specs,
                                          const TimeControl& tc, SolverOptions solver = {});

/// Largest dt among the last `window` accepted steps.
double terminal_dt(const Trajectory& traj, std::size_t window = 10);

}  // namespace rdmono
