#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rdmono/cli.hpp"
#include "rdmono/error.hpp"
#include "rdmono/spectral.hpp"

namespace rdmono {

namespace {

std::string out_path(const std::string& dir, const std::string& file) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / file).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

std::string num(double v) {
  if (std::isnan(v)) return "none";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string dominance(const DominanceVerdict& d) {
  std::string s = to_string(d.verdict);
  if (d.verdict == Verdict::holds) s += "(" + std::string(to_string(d.mode)) + ")";
  if (d.witness) s += " witness=(" + num(d.witness->first) + "," + num(d.witness->second) + ")";
  return s;
}

std::string summarize(const Trajectory& t, const Scenario& s) {
  std::ostringstream os;
  os << "scenario = " << s.name << "\n";
  if (!s.origin.empty()) os << "preset = " << s.origin << "\n";
  os << "status = " << to_string(t.status) << "\n";
  os << "t_final = " << num(t.final_state.t) << "\n";
  os << "T_b = " << num(t.t_b) << "\n";
  os << "T_b_ci_width = " << num(t.ci_width) << "\n";
  os << "steps = " << (t.samples.empty() ? 0 : t.samples.size() - 1) << "\n";
  os << "max_supnorm = " << num(t.max_sup()) << "\n";
  os << "min_value = " << num(t.min_value()) << "\n";
  if (!t.note.empty()) os << "note = " << t.note << "\n";
  return os.str();
}

}  // namespace

int exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return kExitOk;
    case RunStatus::blowup: return kExitBlowup;
    case RunStatus::solver_failure:
    case RunStatus::running: return kExitSolver;
  }
  return kExitSolver;
}

std::string format_report(const ComparisonReport& rep, const std::string& name) {
  const auto& a = rep.assumptions;
  std::ostringstream os;
  os << "# rdmono " << kVersion << " comparison report\n";
  os << "scenario = " << name << "\n";
  os << "a1 = " << (a.a1() ? "holds" : "fails") << " max_violation=" << num(a.a1_max_violation)
     << "\n";
  for (std::size_t k = 0; k < a.a2.size(); ++k)
    os << "a2[" << k << "] = " << dominance(a.a2[k]) << "\n";
  for (std::size_t k = 0; k < a.a3.size(); ++k)
    os << "a3[" << k << "] = " << dominance(a.a3[k])
       << (a.overrides.a3 ? " overridden" : "") << "\n";
  os << "a4_order = " << to_string(a.a4_order.verdict) << (a.overrides.a4 ? " overridden" : "")
     << "\n";
  os << "a4_sc = " << (a.a4_sc1.ok || a.a4_sc2.ok ? "ok" : "fails")
     << " L_M=" << num(a.lipschitz()) << " box=" << num(a.box_radius)
     << (a.box == SampleBox::nonnegative ? " nonnegative" : " symmetric") << "\n";
  os << "assumptions = " << (a.pass() ? "pass" : "fail") << "\n";
  os << "common_end = " << num(rep.common_end) << "\n";
  os << "shared_steps = " << (rep.steps.empty() ? 0 : rep.steps.size() - 1) << "\n";
  os << "max_defect = " << num(rep.max_defect) << "\n";
  os << "tol_order = " << num(rep.tol_order) << "\n";
  os << "ordering = " << (rep.ordering_ok ? "ok" : "violated") << "\n";
  os << "gronwall_L = " << num(rep.gronwall_lipschitz) << "\n";
  os << "max_gronwall_margin = " << num(rep.max_gronwall_margin) << "\n";
  os << "tol_gronwall = " << num(rep.tol_gronwall) << "\n";
  os << "gronwall = " << (rep.gronwall_ok ? "ok" : "violated") << "\n";
  os << "status1 = " << to_string(rep.traj1.status) << "\n";
  os << "T_b1 = " << num(rep.traj1.t_b) << "\n";
  os << "status2 = " << to_string(rep.traj2.status) << "\n";
  os << "T_b2 = " << num(rep.traj2.t_b) << "\n";
  os << "tb_slack = " << num(rep.tb_slack) << "\n";
  os << "blowup_order = " << (rep.blowup_order_ok ? "ok" : "violated") << "\n";
  if (!rep.note.empty()) os << "note = " << rep.note << "\n";
  return os.str();
}

int cmd_run(const Scenario& s, const std::string& out_dir, std::ostream& out) {
  const ProblemSpec p = build_problem(s);
  RunOptions ro;
  CsvMeta meta{s.name, s.origin, p.m(), false};
  if (s.reaction.kind == ReactionKind::nuclear) {
    const EigenPair ep = principal_eigenpair(p.mesh, s.eigen_method);
    const double a = s.reaction.a;
    const double b = s.reaction.b;
    const Mesh mesh = p.mesh;
    ro.functionals = [ep, a, b, mesh](const State& st) {
      return std::vector<double>{kaplan_y(mesh, st.u[1], ep),
                                 kaplan_z(mesh, st.u[0], st.u[1], a, b, ep)};
    };
    meta.yz = true;
  }
  const Trajectory t = run(p, s.time, ro);
  write_csv(t, out_path(out_dir, s.name + ".csv"), meta);
  const std::string summary = summarize(t, s);
  write_text(out_path(out_dir, s.name + "_summary.txt"), summary);
  out << summary;
  return exit_code(t.status);
}

int cmd_compare(const Scenario& s, const std::string& out_dir, std::ostream& out) {
  if (!s.pair) throw ConfigError("compare needs a scenario with a pair block");
  const ProblemSpec p1 = build_problem(s);
  const ProblemSpec p2 = build_problem(*s.pair->second);
  PairOptions po;
  po.overrides.a3 = s.pair->override_a3;
  po.overrides.a4 = s.pair->override_a4;
  po.box_radius = s.pair->box_radius;
  const ComparisonReport rep = run_pair(p1, p2, s.time, po);

  const std::string text = format_report(rep, s.name);
  write_text(out_path(out_dir, s.name + "_report.txt"), text);
  {
    std::ofstream f(out_path(out_dir, s.name + "_pair.csv"));
    f.precision(15);
    f << "# rdmono " << kVersion << "\n# scenario=" << s.name << "\n";
    f << "t,dt,defect,w,gronwall_margin\n";
    for (const auto& st : rep.steps)
      f << st.t << "," << st.dt << "," << st.defect << "," << st.w << "," << st.gronwall_margin
        << "\n";
    if (!f) throw std::runtime_error("failed writing the pair trajectory");
  }
  CsvMeta m1{s.name + "_first", s.origin, p1.m(), false};
  CsvMeta m2{s.name + "_second", s.pair->second->origin, p2.m(), false};
  write_csv(rep.traj1, out_path(out_dir, s.name + "_first.csv"), m1);
  write_csv(rep.traj2, out_path(out_dir, s.name + "_second.csv"), m2);
  out << text;

  if (!rep.assumptions.pass()) return kExitAssumption;
  if (rep.any_solver_failure()) return kExitSolver;
  if (!rep.ordering_ok || !rep.gronwall_ok || !rep.blowup_order_ok) return kExitOrdering;
  if (rep.any_blowup()) return kExitBlowup;
  return kExitOk;
}

int cmd_eigen(const Scenario& s, const std::string& out_dir, std::ostream& out) {
  const Mesh mesh = build_mesh(s.domain);
  const EigenPair ep = principal_eigenpair(mesh, s.eigen_method);
  double exact = 0.0;
  for (int ax = 0; ax < mesh.dim(); ++ax) exact += std::pow(std::numbers::pi / mesh.length(ax), 2);

  std::ofstream f(out_path(out_dir, "phi1.csv"));
  f.precision(15);
  f << (mesh.dim() == 1 ? "x,phi1\n" : "x,y,phi1\n");
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    f << mesh.coord(i, 0) << ",";
    if (mesh.dim() == 2) f << mesh.coord(i, 1) << ",";
    f << ep.phi1[i] << "\n";
  }
  if (!f) throw std::runtime_error("failed writing phi1.csv");

  out << "method = " << to_string(ep.method) << "\n";
  out << "lambda1 = " << num(ep.lambda1) << "\n";
  out << "lambda1_continuum = " << num(exact) << "\n";
  out << "relative_error = " << num(std::abs(ep.lambda1 - exact) / exact) << "\n";
  out << "normalization_residual = " << num(ep.normalization_residual) << "\n";
  out << "iterations = " << ep.iterations << "\n";
  return kExitOk;
}

int cmd_bound(const Scenario& s, const std::string& out_dir, std::ostream& out) {
  const ProblemSpec p = build_problem(s);
  const EigenPair ep = principal_eigenpair(p.mesh, s.eigen_method);
  double u0_sup = 0.0;
  for (const auto& c : p.components) u0_sup += sup_norm(c.initial);

  std::ostringstream os;
  os << "scenario = " << s.name << "\n";
  os << "lambda1 = " << num(ep.lambda1) << "\n";
  os << "u0_supnorm = " << num(u0_sup) << "\n";
  os << "T0 = " << num(local_existence_horizon(u0_sup, p.reaction)) << "\n";
  if (s.reaction.kind == ReactionKind::power || s.reaction.kind == ReactionKind::power_plus) {
    const double y0 = kaplan_y(p.mesh, p.components[0].initial, ep);
    const double thr = kaplan_threshold(s.reaction.p, ep.lambda1);
    os << "kaplan_integral = " << num(y0) << "\n";
    os << "kaplan_threshold = " << num(thr) << "\n";
    os << "kaplan_criterion = " << (y0 > thr ? "satisfied" : "not_satisfied") << "\n";
  } else if (s.reaction.kind == ReactionKind::nuclear) {
    const auto c = check_nr_initial(p.mesh, p.components[0].initial, p.components[1].initial,
                                    s.reaction.a, s.reaction.b, ep);
    os << "nr_y0 = " << num(c.y0) << "\n";
    os << "nr_z0 = " << num(c.z0) << "\n";
    os << "nr_threshold = " << num(c.threshold) << "\n";
    os << "nr_pointwise = " << (c.pointwise ? "yes" : "no") << "\n";
    os << "nr_initial = " << (c.satisfied() ? "satisfied" : "violated") << "\n";
    os << "nr_violated = " << c.violated() << "\n";
    os << "riccati_T = " << num(riccati_blowup_time(c.y0, s.reaction.b + ep.lambda1)) << "\n";
  }
  write_text(out_path(out_dir, s.name + "_bound.txt"), os.str());
  out << os.str();
  return kExitOk;
}

}  // namespace rdmono
