#include "rdmono/compare.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rdmono/error.hpp"
#include "rdmono/kernels.hpp"

namespace rdmono {

namespace {

bool all_hold(const std::vector<DominanceVerdict>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const DominanceVerdict& d) { return d.verdict == Verdict::holds; });
}

void require_compatible(const ProblemSpec& p1, const ProblemSpec& p2) {
  if (!(p1.mesh == p2.mesh)) throw ConfigError("compared problems must share the mesh");
  if (p1.m() != p2.m()) throw ConfigError("compared problems must have the same components");
  for (int k = 0; k < p1.m(); ++k) {
    if (p1.components[k].diffusion != p2.components[k].diffusion)
      throw ConfigError("compared problems must share diffusion coefficients");
  }
}

double initial_sup(const ProblemSpec& p) {
  double s = 0.0;
  for (const auto& c : p.components) s = std::max(s, sup_norm(c.initial));
  return s;
}

bool initial_nonnegative(const ProblemSpec& p) {
  for (const auto& c : p.components)
    if (min_value(c.initial) < 0.0) return false;
  return true;
}

double positive_part_sq(const Mesh& mesh, const State& a, const State& b) {
  const auto& k = kernels::active();
  double w = 0.0;
  for (std::size_t c = 0; c < a.u.size(); ++c)
    w += k.weighted_pos_diff_sq(mesh.weights().data(), a.u[c].data(), b.u[c].data(),
                                a.u[c].size());
  return w;
}

double max_component_sup(const Sample& s) {
  return *std::max_element(s.sup.begin(), s.sup.end());
}

}  // namespace

bool AssumptionReport::a2_ok() const { return all_hold(a2); }

bool AssumptionReport::a3_ok() const { return overrides.a3 || all_hold(a3); }

bool AssumptionReport::a4_ok() const {
  if (overrides.a4) return true;
  return a4_order.verdict == Verdict::holds && (a4_sc1.ok || a4_sc2.ok);
}

double AssumptionReport::lipschitz() const {
  return std::max(a4_sc1.lipschitz, a4_sc2.lipschitz);
}

AssumptionReport check_assumptions(const ProblemSpec& p1, const ProblemSpec& p2,
                                   double box_radius, PairOverrides overrides, int samples) {
  require_compatible(p1, p2);
  AssumptionReport rep;
  rep.overrides = overrides;
  rep.box_radius =
      box_radius > 0.0 ? box_radius : 2.0 * std::max({1.0, initial_sup(p1), initial_sup(p2)});
  rep.box = initial_nonnegative(p1) && initial_nonnegative(p2) ? SampleBox::nonnegative
                                                               : SampleBox::symmetric;

  const auto& k = kernels::active();
  for (int c = 0; c < p1.m(); ++c) {
    const auto& a = p1.components[c].initial;
    const auto& b = p2.components[c].initial;
    rep.a1_max_violation =
        std::max(rep.a1_max_violation, k.max_pos_diff(a.data(), b.data(), a.size()));
  }

  const RGrid grid{-std::max(10.0, rep.box_radius), std::max(10.0, rep.box_radius), 401};
  for (int c = 0; c < p1.m(); ++c) {
    rep.a2.push_back(dominates(p1.components[c].interior, p2.components[c].interior, grid));
    rep.a3.push_back(dominates(p1.components[c].boundary, p2.components[c].boundary, grid));
  }

  rep.a4_order = check_order_F(p1.reaction, p2.reaction, rep.box_radius, samples, rep.box);
  rep.a4_sc1 = check_sc(p1.reaction, rep.box_radius, samples, rep.box);
  rep.a4_sc2 = check_sc(p2.reaction, rep.box_radius, samples, rep.box);
  return rep;
}

double ordering_defect(const State& s1, const State& s2) {
  if (s1.u.size() != s2.u.size()) throw ConfigError("states have different component counts");
  const auto& k = kernels::active();
  double d = 0.0;
  for (std::size_t c = 0; c < s1.u.size(); ++c) {
    if (s1.u[c].size() != s2.u[c].size()) throw ConfigError("states live on different meshes");
    d = std::max(d, k.max_pos_diff(s1.u[c].data(), s2.u[c].data(), s1.u[c].size()));
  }
  return d;
}

bool ComparisonReport::any_blowup() const {
  return traj1.status == RunStatus::blowup || traj2.status == RunStatus::blowup;
}

bool ComparisonReport::any_solver_failure() const {
  return traj1.status == RunStatus::solver_failure || traj2.status == RunStatus::solver_failure;
}

double terminal_dt(const Trajectory& traj, std::size_t window) {
  double s = 0.0;
  const auto& x = traj.samples;
  for (std::size_t i = x.size() > window ? x.size() - window : 0; i < x.size(); ++i)
    s = std::max(s, x[i].dt);
  return s;
}

ComparisonReport run_pair(const ProblemSpec& p1, const ProblemSpec& p2,
                          const TimeControl& tc, const PairOptions& opts) {
  ComparisonReport rep;
  rep.assumptions = check_assumptions(p1, p2, opts.box_radius, opts.overrides);
  const Mesh& mesh = p1.mesh;

  RunOptions ro;
  ro.solver = opts.solver;
  Integrator i1(p1, tc, ro);
  Integrator i2(p2, tc, ro);

  auto record = [&](double dt) {
    PairStep s;
    s.t = i1.state().t;
    s.dt = dt;
    s.defect = ordering_defect(i1.state(), i2.state());
    s.w = positive_part_sq(mesh, i1.state(), i2.state());
    rep.steps.push_back(s);
  };
  record(0.0);

  while (!i1.finished() && !i2.finished()) {
    const double dt = std::min(i1.propose_dt(), i2.propose_dt());
    if (dt < tc.dt_min) {
      i1.collapse();
      i2.collapse();
      break;
    }
    const bool ok1 = i1.attempt(dt);
    const bool ok2 = i2.attempt(dt);
    if (ok1 && ok2) {
      i1.commit();
      i2.commit();
      record(dt);
    } else {
      i1.note_stall(dt);
      i2.note_stall(dt);
    }
  }
  rep.common_end = i1.state().t;

  // Shared-interval statistics.
  double max_sup = 0.0;
  double dt_max = 0.0;
  for (const auto* it : {&i1, &i2}) {
    for (const auto& s : it->trajectory().samples) max_sup = std::max(max_sup, max_component_sup(s));
  }
  for (const auto& s : rep.steps) {
    rep.max_defect = std::max(rep.max_defect, s.defect);
    dt_max = std::max(dt_max, s.dt);
  }
  double h2 = 0.0;
  for (int ax = 0; ax < mesh.dim(); ++ax) h2 = std::max(h2, mesh.spacing(ax) * mesh.spacing(ax));
  rep.tol_order = 1e-6 + 10.0 * (h2 + dt_max) * (1.0 + max_sup);
  rep.tol_gronwall = p1.m() * mesh.volume() * rep.tol_order * rep.tol_order;
  rep.ordering_ok = rep.max_defect <= rep.tol_order;

  const SampleBox box = rep.assumptions.box;
  rep.gronwall_lipschitz =
      std::max(check_sc(p1.reaction, std::max(max_sup, 1e-12), 41, box).lipschitz,
               check_sc(p2.reaction, std::max(max_sup, 1e-12), 41, box).lipschitz);
  const double rate = 2.0 * p1.m() * rep.gronwall_lipschitz;
  rep.gronwall_ok = true;
  rep.max_gronwall_margin = -std::numeric_limits<double>::infinity();
  std::size_t s_idx = rep.steps.size();
  for (std::size_t i = 0; i < rep.steps.size(); ++i) {
    auto& st = rep.steps[i];
    if (s_idx == rep.steps.size() && st.w > 0.0) s_idx = i;
    double ws = 0.0;
    double growth = 1.0;
    if (s_idx < rep.steps.size()) {
      ws = rep.steps[s_idx].w;
      growth = std::exp(rate * (st.t - rep.steps[s_idx].t));
    }
    st.gronwall_margin = st.w - ws * growth;
    rep.max_gronwall_margin = std::max(rep.max_gronwall_margin, st.gronwall_margin);
    if (st.gronwall_margin > rep.tol_gronwall * (1.0 + ws)) rep.gronwall_ok = false;
  }

  if (opts.continue_survivor) {
    if (i1.trajectory().status == RunStatus::blowup && !i2.finished()) run_to_end(i2);
    if (i2.trajectory().status == RunStatus::blowup && !i1.finished()) run_to_end(i1);
  }
  if (!i1.finished()) i1.stop(RunStatus::solver_failure, "partner run failed");
  if (!i2.finished()) i2.stop(RunStatus::solver_failure, "partner run failed");
  rep.traj1 = i1.take();
  rep.traj2 = i2.take();

  rep.tb_slack = std::max(terminal_dt(rep.traj1), terminal_dt(rep.traj2));
  const bool b1 = rep.traj1.status == RunStatus::blowup;
  const bool b2 = rep.traj2.status == RunStatus::blowup;
  if (b1 && b2) {
    rep.blowup_order_ok = rep.traj2.t_b <= rep.traj1.t_b + rep.tb_slack;
  } else if (b1 && !b2) {
    // The super-solution must blow up no later than the sub-solution.
    rep.blowup_order_ok = rep.traj2.status != RunStatus::completed;
    rep.note = "only the first problem blew up";
  } else {
    rep.blowup_order_ok = true;
  }
  return rep;
}

BlowupOrderResult blowup_order_experiment(const std::vector<const ProblemSpec*>& specs,
                                          const TimeControl& tc, SolverOptions solver) {
  BlowupOrderResult res;
  for (const auto* s : specs) {
    if (!(s->mesh == specs.front()->mesh) || s->m() != specs.front()->m())
      throw ConfigError("blow-up order experiment needs a shared mesh and component count");
  }
  std::vector<double> tdt;
  RunOptions ro;
  ro.solver = solver;
  std::ostringstream diag;
  res.pass = true;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Trajectory t = run(*specs[i], tc, ro);
    res.status.push_back(t.status);
    res.t_b.push_back(t.t_b);
    tdt.push_back(terminal_dt(t));
    if (t.status != RunStatus::blowup) {
      res.pass = false;
      diag << "run " << i << " (" << specs[i]->label << ") ended with status "
           << to_string(t.status) << " at t=" << t.final_state.t << "; ";
    }
  }
  for (std::size_t i = 0; i + 1 < specs.size(); ++i) {
    const double slack = std::max(tdt[i], tdt[i + 1]);
    res.slack.push_back(slack);
    if (!(res.t_b[i] <= res.t_b[i + 1] + slack)) {
      res.pass = false;
      diag << "T_b[" << i << "]=" << res.t_b[i] << " exceeds T_b[" << i + 1
           << "]=" << res.t_b[i + 1] << " + " << slack << "; ";
    }
  }
  res.diagnostics = diag.str();
  return res;
}

}  // namespace rdmono
