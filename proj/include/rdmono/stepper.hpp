#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rdmono/graphs.hpp"
#include "rdmono/mesh.hpp"
#include "rdmono/reactions.hpp"

namespace rdmono {

struct ComponentSpec {
  std::string name;
  double diffusion = 1.0;
  MonotoneGraph interior;  ///< beta^k
  MonotoneGraph boundary;  ///< gamma^k
  std::vector<double> initial;
};

/// One initial-boundary value problem
///   u_t - a^k Lap u + beta^k(u) = F^k(U)   in the domain,
///   -a^k du/dnu in gamma^k(u)               on the boundary.
struct ProblemSpec {
  std::string label;
  Mesh mesh;
  Reaction reaction;
  std::vector<ComponentSpec> components;

  int m() const { return static_cast<int>(components.size()); }

  /// Throws ConfigError on size mismatches, a <= 0, non-finite data, or
  /// initial values outside the closed graph domains.
  void validate() const;
};

/// Projects initial data onto the closed domain of beta (all nodes) and of
/// gamma (boundary nodes). Throws ConfigError if the two domains are disjoint.
void project_initial(ProblemSpec& spec);

struct TimeControl {
  double t_end = 1.0;
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double blowup_threshold = 1e8;
  double safety = 0.1;

  void validate() const;
  bool operator==(const TimeControl&) const = default;
};

struct SolverOptions {
  /// Converged once the sweep change is <= tol * max(1, sup|u|).
  double tol = 1e-10;
  int max_sweeps = 500;
};

struct State {
  double t = 0.0;
  std::vector<std::vector<double>> u;
};

State initial_state(const ProblemSpec& spec);

struct StepResult {
  bool converged = false;
  int sweeps = 0;
  /// Last sweep change, or +inf when the update produced non-finite values.
  double residual = 0.0;
};

/// Backward Euler in the graphs, forward Euler in the reaction:
///   u + dt beta(u) - dt a Lap_h u  contains  S + dt F(S)
/// with boundary rows closed through gamma. Solved per component by
/// red-black nonlinear Gauss-Seidel; every nodal update is a resolvent.
/// Holds a reference to `spec`.
class Stepper {
 public:
  explicit Stepper(const ProblemSpec& spec, SolverOptions opts = {});

  StepResult step(const State& s, double dt, State& out);

 private:
  double sweep_1d(int k, std::vector<double>& u, double dt, int colour);
  double sweep_2d(int k, std::vector<double>& u, double dt, int colour);
  double boundary_update(int k, double r, double lambda_beta, double lambda_gamma) const;

  const ProblemSpec& spec_;
  SolverOptions opts_;
  std::vector<std::vector<double>> rhs_;
  std::vector<double> node_in_;
  std::vector<double> node_out_;
};

/// Convenience wrapper around a temporary Stepper.
StepResult step(const ProblemSpec& spec, const State& s, double dt, State& out,
                SolverOptions opts = {});

enum class RunStatus { running, completed, blowup, solver_failure };

const char* to_string(RunStatus status);

struct Sample {
  double t = 0.0;
  double dt = 0.0;  ///< 0 for the initial sample
  std::vector<double> sup;  ///< per component
  std::vector<double> min;  ///< per component
  int sweeps = 0;
  std::vector<double> extra;  ///< values of RunOptions::functionals
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<State> snapshots;
  State final_state;
  RunStatus status = RunStatus::running;
  double t_b = std::numeric_limits<double>::quiet_NaN();
  double ci_width = std::numeric_limits<double>::quiet_NaN();
  double residual = 0.0;
  std::string note;

  double max_sup() const;   ///< over all samples and components
  double min_value() const; ///< over all samples and components
  double max_dt() const;
};

struct RunOptions {
  SolverOptions solver;
  /// States are recorded exactly at these times (steps are shortened to hit them).
  std::vector<double> snapshot_times;
  /// Scalar functionals recorded in Sample::extra at every sample.
  std::function<std::vector<double>(const State&)> functionals;
  /// Called for the initial state and after every accepted step.
  std::function<void(const State&, const Sample&)> observer;
};

/// Time integration with explicit stepping primitives, so that several
/// problems can be advanced on one shared dt sequence.
class Integrator {
 public:
  Integrator(const ProblemSpec& spec, const TimeControl& tc, RunOptions opts = {});

  /// min(dt_init, growth limit, stability limit, solver cap, time to the next
  /// stop). The growth limit is safety * max(1, r) / ell(r) with r the sum of
  /// component sup-norms; the stability limit is safety / L(r).
  double propose_dt() const;

  /// Computes a candidate step; false when the solve stalled or diverged.
  bool attempt(double dt);
  /// Accepts the last successful attempt and updates the status.
  void commit();
  /// Records a failed attempt at dt: the solver cap drops to dt / 2.
  void note_stall(double dt);

  /// Classifies a dt collapse: blowup if the sup-norm is increasing,
  /// solver_failure otherwise.
  void collapse();
  /// Terminates an unfinished run with the given status.
  void stop(RunStatus status, std::string note);

  bool finished() const { return traj_.status != RunStatus::running; }
  const State& state() const { return state_; }
  const State& candidate() const { return candidate_; }
  const Trajectory& trajectory() const { return traj_; }
  Trajectory take();
  const TimeControl& time_control() const { return tc_; }
  double sup_sum() const;

 private:
  Sample make_sample(const State& s, double dt, int sweeps) const;
  void finish(RunStatus status);

  const ProblemSpec& spec_;
  TimeControl tc_;
  RunOptions opts_;
  Stepper stepper_;
  State state_;
  State candidate_;
  StepResult last_;
  double cand_dt_ = 0.0;
  double solver_cap_ = std::numeric_limits<double>::infinity();
  int easy_steps_ = 0;
  std::size_t next_snapshot_ = 0;
  std::vector<double> snapshot_times_;
  Trajectory traj_;
};

/// Advances an integrator alone until it finishes.
void run_to_end(Integrator& it);

/// Runs to t_end, blow-up, or solver failure. Never throws for numerical
/// trouble; ConfigError is thrown for invalid specs.
Trajectory run(const ProblemSpec& spec, const TimeControl& tc, RunOptions opts = {});

struct BlowupVerdict {
  bool blowup = false;
  double t_b = std::numeric_limits<double>::quiet_NaN();
  double ci_width = std::numeric_limits<double>::quiet_NaN();
};

/// Zero crossing of the least-squares line through (t, 1/sup) over the last
/// `window` points. Returns NaN when the reciprocal is not decreasing.
double reciprocal_extrapolation(std::span<const double> t, std::span<const double> sup,
                                std::size_t window = 10);

/// For a blowup trajectory: T_b from the last 10 samples of the largest
/// component sup-norm; ci_width = |T(last 5) - T(last 10)|.
BlowupVerdict detect_blowup(const Trajectory& traj);

/// 1 / (2 ell(u0_sup + 1)).
double local_existence_horizon(double u0_sup, const Reaction& f);

}  // namespace rdmono
