#include "rdmono/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rdmono/error.hpp"
#include "rdmono/kernels.hpp"

namespace rdmono {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Interval closed_domain_intersection(const MonotoneGraph& a, const MonotoneGraph& b) {
  return {std::max(a.domain_lo(), b.domain_lo()), std::min(a.domain_hi(), b.domain_hi())};
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void ProblemSpec::validate() const {
  if (components.empty()) throw ConfigError("problem needs at least one component");
  if (reaction.components() != m())
    throw ConfigError("reaction has " + std::to_string(reaction.components()) +
                      " components but the problem has " + std::to_string(m()));
  for (int k = 0; k < m(); ++k) {
    const auto& c = components[k];
    const std::string where = "component " + std::to_string(k) + ": ";
    if (!(c.diffusion > 0.0) || !std::isfinite(c.diffusion))
      throw ConfigError(where + "diffusion must be > 0");
    if (c.initial.size() != mesh.size())
      throw ConfigError(where + "initial data does not match the mesh");
    if (!all_finite(c.initial)) throw ConfigError(where + "initial data must be finite");
    for (double v : c.initial) {
      if (!c.interior.in_domain(v))
        throw ConfigError(where + "initial data outside the interior graph domain");
    }
    for (std::size_t b : mesh.boundary_nodes()) {
      if (!c.boundary.in_domain(c.initial[b]))
        throw ConfigError(where + "initial data outside the boundary graph domain");
    }
  }
}

void project_initial(ProblemSpec& spec) {
  for (auto& c : spec.components) {
    if (c.initial.size() != spec.mesh.size())
      throw ConfigError("initial data does not match the mesh");
    for (double& v : c.initial) v = c.interior.project(v);
    const Interval d = closed_domain_intersection(c.interior, c.boundary);
    if (d.lo > d.hi) throw ConfigError("interior and boundary graph domains are disjoint");
    for (std::size_t b : spec.mesh.boundary_nodes())
      c.initial[b] = std::clamp(c.initial[b], d.lo, d.hi);
  }
}

void TimeControl::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be > 0");
  if (!(dt_min > 0.0) || !(dt_min <= dt_init) || !std::isfinite(dt_init))
    throw ConfigError("time steps must satisfy 0 < dt_min <= dt_init");
  if (!(blowup_threshold >= 1e3)) throw ConfigError("blowup_threshold must be >= 1e3");
  if (!(safety > 0.0 && safety <= 1.0)) throw ConfigError("safety must lie in (0, 1]");
}

State initial_state(const ProblemSpec& spec) {
  State s;
  for (const auto& c : spec.components) s.u.push_back(c.initial);
  return s;
}

// ---------------------------------------------------------------------------
// Stepper

Stepper::Stepper(const ProblemSpec& spec, SolverOptions opts)
    : spec_(spec), opts_(opts) {
  spec_.validate();
  const int m = spec_.m();
  rhs_.assign(m, std::vector<double>(spec_.mesh.size()));
  node_in_.resize(m);
  node_out_.resize(m);
}

double Stepper::boundary_update(int k, double r, double lambda_beta,
                                double lambda_gamma) const {
  const auto& c = spec_.components[k];
  if (c.interior.is_zero()) return c.boundary.resolvent(lambda_gamma, r);
  const WeightedGraph terms[2] = {{&c.interior, lambda_beta}, {&c.boundary, lambda_gamma}};
  return resolvent_sum(terms, r);
}

double Stepper::sweep_1d(int k, std::vector<double>& u, double dt, int colour) {
  const auto& comp = spec_.components[k];
  const auto& rhs = rhs_[k];
  const int n = spec_.mesh.count(0);
  const double h = spec_.mesh.spacing(0);
  const double c = dt * comp.diffusion / (h * h);
  const double diag = 1.0 + 2.0 * c;
  const double lb = dt / diag;
  double change = 0.0;

  if (comp.interior.is_zero()) {
    change = kernels::active().relax_line(u.data(), rhs.data(), 1, n - 1, c, 1.0 / diag,
                                          static_cast<std::size_t>(colour));
  } else {
    for (int i = 2 - colour; i < n - 1; i += 2) {
      if (i < 1) continue;
      const double r = rhs[i] + c * (u[i - 1] + u[i + 1]);
      const double v = comp.interior.resolvent(lb, r / diag);
      change = std::max(change, std::abs(v - u[i]));
      u[i] = v;
    }
  }

  const double lg = dt * 2.0 / h / diag;
  if (colour == 0) {
    const double v = boundary_update(k, (rhs[0] + 2.0 * c * u[1]) / diag, lb, lg);
    change = std::max(change, std::abs(v - u[0]));
    u[0] = v;
  }
  if ((n - 1) % 2 == colour) {
    const double v = boundary_update(k, (rhs[n - 1] + 2.0 * c * u[n - 2]) / diag, lb, lg);
    change = std::max(change, std::abs(v - u[n - 1]));
    u[n - 1] = v;
  }
  return change;
}

double Stepper::sweep_2d(int k, std::vector<double>& u, double dt, int colour) {
  const auto& comp = spec_.components[k];
  const auto& mesh = spec_.mesh;
  const auto& rhs = rhs_[k];
  const int nx = mesh.count(0);
  const int ny = mesh.count(1);
  const double hx = mesh.spacing(0);
  const double hy = mesh.spacing(1);
  const double cx = dt * comp.diffusion / (hx * hx);
  const double cy = dt * comp.diffusion / (hy * hy);
  const double diag = 1.0 + 2.0 * cx + 2.0 * cy;
  const double lb = dt / diag;
  double change = 0.0;

  for (int j = 1; j < ny - 1; ++j) {
    const std::size_t row = mesh.index(0, j);
    const std::size_t parity = static_cast<std::size_t>((colour + j) % 2);
    if (comp.interior.is_zero()) {
      change = std::max(change, kernels::active().relax_row(
                                    u.data() + row, u.data() + row - nx, u.data() + row + nx,
                                    rhs.data() + row, 1, nx - 1, cx, cy, 1.0 / diag, parity));
    } else {
      for (int i = 1; i < nx - 1; ++i) {
        if (static_cast<std::size_t>(i % 2) != parity) continue;
        const std::size_t p = row + i;
        const double r = rhs[p] + cx * (u[p - 1] + u[p + 1]) + cy * (u[p - nx] + u[p + nx]);
        const double v = comp.interior.resolvent(lb, r / diag);
        change = std::max(change, std::abs(v - u[p]));
        u[p] = v;
      }
    }
  }

  for (std::size_t p : mesh.boundary_nodes()) {
    const int i = static_cast<int>(p % nx);
    const int j = static_cast<int>(p / nx);
    if ((i + j) % 2 != colour) continue;
    double r = rhs[p];
    double gw = 0.0;
    if (i == 0) {
      r += 2.0 * cx * u[p + 1];
      gw += 2.0 / hx;
    } else if (i == nx - 1) {
      r += 2.0 * cx * u[p - 1];
      gw += 2.0 / hx;
    } else {
      r += cx * (u[p - 1] + u[p + 1]);
    }
    if (j == 0) {
      r += 2.0 * cy * u[p + nx];
      gw += 2.0 / hy;
    } else if (j == ny - 1) {
      r += 2.0 * cy * u[p - nx];
      gw += 2.0 / hy;
    } else {
      r += cy * (u[p - nx] + u[p + nx]);
    }
    const double v = boundary_update(k, r / diag, lb, dt * gw / diag);
    change = std::max(change, std::abs(v - u[p]));
    u[p] = v;
  }
  return change;
}

StepResult Stepper::step(const State& s, double dt, State& out) {
  if (!(dt > 0.0)) throw ConfigError("step requires dt > 0");
  const int m = spec_.m();
  const std::size_t n = spec_.mesh.size();
  if (static_cast<int>(s.u.size()) != m) throw ConfigError("state has the wrong component count");
  for (const auto& f : s.u) check_field(spec_.mesh, f);

  StepResult res;
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) node_in_[k] = s.u[k][i];
    spec_.reaction.eval(node_in_, node_out_);
    for (int k = 0; k < m; ++k) {
      const double r = s.u[k][i] + dt * node_out_[k];
      if (!std::isfinite(r)) {
        res.residual = std::numeric_limits<double>::infinity();
        return res;
      }
      rhs_[k][i] = r;
    }
  }

  // The explicit predictor is exact wherever diffusion and the graphs are
  // inactive, which keeps sweeps and accumulated solver error low.
  out.t = s.t + dt;
  out.u = rhs_;
  const auto& kt = kernels::active();
  res.converged = true;
  for (int k = 0; k < m; ++k) {
    auto& u = out.u[k];
    bool done = false;
    int sweeps = 0;
    double change = 0.0;
    while (sweeps < opts_.max_sweeps) {
      change = 0.0;
      for (int colour = 0; colour < 2; ++colour) {
        change = std::max(change, spec_.mesh.dim() == 1 ? sweep_1d(k, u, dt, colour)
                                                        : sweep_2d(k, u, dt, colour));
      }
      ++sweeps;
      if (!std::isfinite(change)) break;
      if (change <= opts_.tol * std::max(1.0, kt.max_abs(u.data(), n))) {
        done = true;
        break;
      }
    }
    res.sweeps = std::max(res.sweeps, sweeps);
    res.residual = std::max(res.residual, std::isfinite(change)
                                              ? change
                                              : std::numeric_limits<double>::infinity());
    if (!done) {
      res.converged = false;
      return res;
    }
  }
  return res;
}

StepResult step(const ProblemSpec& spec, const State& s, double dt, State& out,
                SolverOptions opts) {
  Stepper st(spec, opts);
  return st.step(s, dt, out);
}

// ---------------------------------------------------------------------------
// Trajectory

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::running: return "running";
    case RunStatus::completed: return "completed";
    case RunStatus::blowup: return "blowup";
    case RunStatus::solver_failure: return "solver_failure";
  }
  return "unknown";
}

double Trajectory::max_sup() const {
  double s = 0.0;
  for (const auto& x : samples)
    for (double v : x.sup) s = std::max(s, v);
  return s;
}

double Trajectory::min_value() const {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& x : samples)
    for (double v : x.min) s = std::min(s, v);
  return s;
}

double Trajectory::max_dt() const {
  double s = 0.0;
  for (const auto& x : samples) s = std::max(s, x.dt);
  return s;
}

// ---------------------------------------------------------------------------
// Integrator

Integrator::Integrator(const ProblemSpec& spec, const TimeControl& tc, RunOptions opts)
    : spec_(spec), tc_(tc), opts_(std::move(opts)), stepper_(spec, opts_.solver) {
  tc_.validate();
  state_ = initial_state(spec_);
  for (double t : opts_.snapshot_times) {
    if (t >= 0.0 && t <= tc_.t_end) snapshot_times_.push_back(t);
  }
  std::sort(snapshot_times_.begin(), snapshot_times_.end());
  snapshot_times_.erase(std::unique(snapshot_times_.begin(), snapshot_times_.end()),
                        snapshot_times_.end());
  while (next_snapshot_ < snapshot_times_.size() && snapshot_times_[next_snapshot_] <= 0.0) {
    traj_.snapshots.push_back(state_);
    ++next_snapshot_;
  }
  traj_.samples.push_back(make_sample(state_, 0.0, 0));
  if (opts_.observer) opts_.observer(state_, traj_.samples.back());
}

Sample Integrator::make_sample(const State& s, double dt, int sweeps) const {
  Sample x;
  x.t = s.t;
  x.dt = dt;
  x.sweeps = sweeps;
  for (const auto& f : s.u) {
    x.sup.push_back(sup_norm(f));
    x.min.push_back(rdmono::min_value(f));
  }
  if (opts_.functionals) x.extra = opts_.functionals(s);
  return x;
}

double Integrator::sup_sum() const {
  const auto& sup = traj_.samples.back().sup;
  return std::accumulate(sup.begin(), sup.end(), 0.0);
}

double Integrator::propose_dt() const {
  const double r = sup_sum();
  double dt = std::min(tc_.dt_init, solver_cap_);
  const double ell = spec_.reaction.ell(r);
  if (ell > 0.0) dt = std::min(dt, tc_.safety * std::max(1.0, r) / ell);
  const double lip = spec_.reaction.local_lipschitz(r);
  if (lip > 0.0) dt = std::min(dt, tc_.safety / lip);
  double stop = tc_.t_end;
  if (next_snapshot_ < snapshot_times_.size()) stop = std::min(stop, snapshot_times_[next_snapshot_]);
  const double remaining = stop - state_.t;
  // Absorb a sliver that would otherwise leave a tiny last step.
  if (remaining <= dt * (1.0 + 1e-9)) return remaining;
  return dt;
}

bool Integrator::attempt(double dt) {
  if (finished()) throw InvariantError("attempt on a finished run");
  last_ = stepper_.step(state_, dt, candidate_);
  cand_dt_ = dt;
  if (!last_.converged) return false;
  for (const auto& f : candidate_.u)
    if (!all_finite(f)) return false;
  return true;
}

void Integrator::commit() {
  if (!last_.converged) throw InvariantError("commit without a successful attempt");
  std::swap(state_, candidate_);
  last_.converged = false;

  // Snap to stop times to avoid rounding drift.
  const double snap = std::max(1e-12 * std::max(1.0, state_.t), tc_.dt_min);
  if (next_snapshot_ < snapshot_times_.size() &&
      std::abs(state_.t - snapshot_times_[next_snapshot_]) <= snap)
    state_.t = snapshot_times_[next_snapshot_];
  if (std::abs(state_.t - tc_.t_end) <= snap) state_.t = tc_.t_end;

  traj_.samples.push_back(make_sample(state_, cand_dt_, last_.sweeps));
  traj_.residual = last_.residual;
  if (opts_.observer) opts_.observer(state_, traj_.samples.back());

  while (next_snapshot_ < snapshot_times_.size() &&
         snapshot_times_[next_snapshot_] <= state_.t) {
    traj_.snapshots.push_back(state_);
    ++next_snapshot_;
  }

  if (last_.sweeps * 4 < opts_.solver.max_sweeps) {
    if (++easy_steps_ >= 5) {
      solver_cap_ *= 1.5;
      easy_steps_ = 0;
    }
  } else {
    easy_steps_ = 0;
  }

  const auto& sup = traj_.samples.back().sup;
  if (*std::max_element(sup.begin(), sup.end()) >= tc_.blowup_threshold) {
    finish(RunStatus::blowup);
  } else if (state_.t >= tc_.t_end) {
    finish(RunStatus::completed);
  }
}

void Integrator::note_stall(double dt) {
  solver_cap_ = dt / 2.0;
  easy_steps_ = 0;
  traj_.residual = last_.residual;
}

void Integrator::collapse() {
  const auto& s = traj_.samples;
  bool increasing = false;
  if (s.size() >= 2) {
    const auto& a = s[s.size() - 2].sup;
    const auto& b = s.back().sup;
    increasing = *std::max_element(b.begin(), b.end()) > *std::max_element(a.begin(), a.end());
  }
  if (increasing) {
    traj_.note = "dt collapsed below dt_min while the sup-norm was increasing";
    finish(RunStatus::blowup);
  } else {
    traj_.note = "dt collapsed below dt_min without norm growth";
    finish(RunStatus::solver_failure);
  }
}

void Integrator::stop(RunStatus status, std::string note) {
  if (finished()) return;
  traj_.note = std::move(note);
  finish(status);
}

void Integrator::finish(RunStatus status) {
  traj_.status = status;
  traj_.final_state = state_;
  if (status == RunStatus::blowup) {
    const auto v = detect_blowup(traj_);
    traj_.t_b = v.t_b;
    traj_.ci_width = v.ci_width;
  }
}

Trajectory Integrator::take() {
  if (!finished()) throw InvariantError("take on an unfinished run");
  return std::move(traj_);
}

void run_to_end(Integrator& it) {
  while (!it.finished()) {
    const double dt = it.propose_dt();
    if (dt < it.time_control().dt_min) {
      it.collapse();
      break;
    }
    if (it.attempt(dt)) {
      it.commit();
    } else {
      it.note_stall(dt);
    }
  }
}

Trajectory run(const ProblemSpec& spec, const TimeControl& tc, RunOptions opts) {
  Integrator it(spec, tc, std::move(opts));
  run_to_end(it);
  return it.take();
}

// ---------------------------------------------------------------------------
// Blow-up estimation

double reciprocal_extrapolation(std::span<const double> t, std::span<const double> sup,
                                std::size_t window) {
  const std::size_t n = std::min({t.size(), sup.size(), window});
  if (n < 2) return kNaN;
  const std::size_t off = std::min(t.size(), sup.size()) - n;
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mt += t[off + i];
    my += 1.0 / sup[off + i];
  }
  mt /= n;
  my /= n;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = t[off + i] - mt;
    stt += dt * dt;
    sty += dt * (1.0 / sup[off + i] - my);
  }
  if (!(stt > 0.0)) return kNaN;
  const double slope = sty / stt;
  if (!(slope < 0.0)) return kNaN;
  return mt - my / slope;
}

BlowupVerdict detect_blowup(const Trajectory& traj) {
  BlowupVerdict v;
  if (traj.status != RunStatus::blowup || traj.samples.empty()) return v;
  v.blowup = true;
  std::vector<double> t, s;
  for (const auto& x : traj.samples) {
    t.push_back(x.t);
    s.push_back(*std::max_element(x.sup.begin(), x.sup.end()));
  }
  const double t_last = t.back();
  const double t10 = reciprocal_extrapolation(t, s, 10);
  const double t5 = reciprocal_extrapolation(t, s, 5);
  if (std::isfinite(t10)) {
    v.t_b = std::max(t10, t_last);
    v.ci_width = std::isfinite(t5) ? std::abs(t5 - t10) : kNaN;
  } else {
    v.t_b = t_last;
  }
  return v;
}

double local_existence_horizon(double u0_sup, const Reaction& f) {
  if (!(u0_sup >= 0.0)) throw ConfigError("u0_sup must be >= 0");
  return 1.0 / (2.0 * f.ell(u0_sup + 1.0));
}

}  // namespace rdmono
