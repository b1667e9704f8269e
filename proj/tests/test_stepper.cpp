#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rdmono/error.hpp"
#include "rdmono/stepper.hpp"

using namespace rdmono;
using std::numbers::pi;

namespace {

MonotoneGraph graph(GraphKind kind, double alpha = 1.0, double q = 2.0, double M = 1.0) {
  return MonotoneGraph::make({kind, alpha, q, M});
}

ProblemSpec scalar(int n, Reaction f, MonotoneGraph beta, MonotoneGraph gamma,
                   double (*u0)(double), double a = 1.0) {
  ProblemSpec spec;
  spec.label = "test";
  spec.mesh = Mesh::build(1, {1.0}, {n});
  spec.reaction = std::move(f);
  ComponentSpec c;
  c.name = "u";
  c.diffusion = a;
  c.interior = std::move(beta);
  c.boundary = std::move(gamma);
  c.initial.resize(spec.mesh.size());
  for (std::size_t i = 0; i < c.initial.size(); ++i) c.initial[i] = u0(spec.mesh.coord(i, 0));
  spec.components.push_back(std::move(c));
  return spec;
}

double sine(double x) { return std::sin(pi * x); }

}  // namespace

TEST_CASE("constant state is an equilibrium of the zero problem") {
  auto spec = scalar(41, Reaction::zero(), graph(GraphKind::zero), graph(GraphKind::zero),
                     [](double) { return 3.25; });
  State s = initial_state(spec), out;
  for (double dt : {1e-4, 1e-2, 1.0}) {
    const auto r = step(spec, s, dt, out);
    CHECK(r.converged);
    for (double v : out.u[0]) CHECK(std::abs(v - 3.25) <= 1e-14);
    CHECK(out.t == doctest::Approx(dt));
  }
}

TEST_CASE("Dirichlet heat decay matches the discrete backward Euler factor") {
  const int n = 51;
  auto spec = scalar(n, Reaction::zero(), graph(GraphKind::zero), graph(GraphKind::dirichlet), sine);
  spec.components[0].initial.front() = spec.components[0].initial.back() = 0.0;
  const double h = 1.0 / (n - 1);
  const double lambda_h = 4.0 / (h * h) * std::pow(std::sin(pi * h / 2.0), 2);
  const double dt = 1e-3;
  const int steps = 200;
  // Tight solver tolerance so the comparison measures the scheme.
  Stepper stepper(spec, SolverOptions{1e-14, 5000});
  State s = initial_state(spec), out;
  for (int k = 0; k < steps; ++k) {
    REQUIRE(stepper.step(s, dt, out).converged);
    std::swap(s, out);
  }
  const double factor = std::pow(1.0 + dt * lambda_h, -steps);
  double err = 0.0;
  for (std::size_t i = 0; i < s.u[0].size(); ++i)
    err = std::max(err, std::abs(s.u[0][i] - factor * sine(spec.mesh.coord(i, 0))));
  CHECK(err <= 1e-8);
  CHECK(s.t == doctest::Approx(steps * dt));
  // Continuum decay within the O(dt) time error.
  CHECK(std::abs(factor - std::exp(-pi * pi * 0.2)) <= 0.02);
}

TEST_CASE("2D Dirichlet heat decay matches the discrete factor") {
  const int n = 21;
  ProblemSpec spec;
  spec.mesh = Mesh::build(2, {1.0, 1.0}, {n, n});
  spec.reaction = Reaction::zero();
  ComponentSpec c;
  c.interior = graph(GraphKind::zero);
  c.boundary = graph(GraphKind::dirichlet);
  c.initial.resize(spec.mesh.size());
  for (std::size_t i = 0; i < c.initial.size(); ++i)
    c.initial[i] = spec.mesh.is_boundary(i)
                       ? 0.0
                       : sine(spec.mesh.coord(i, 0)) * sine(spec.mesh.coord(i, 1));
  spec.components.push_back(c);
  const double h = 1.0 / (n - 1);
  const double lambda_h = 8.0 / (h * h) * std::pow(std::sin(pi * h / 2.0), 2);
  const double dt = 2e-3;
  Stepper stepper(spec, SolverOptions{1e-14, 5000});
  State s = initial_state(spec), out;
  for (int k = 0; k < 25; ++k) {
    REQUIRE(stepper.step(s, dt, out).converged);
    std::swap(s, out);
  }
  const double factor = std::pow(1.0 + dt * lambda_h, -25);
  double err = 0.0;
  for (std::size_t i = 0; i < s.u[0].size(); ++i) err = std::max(err, std::abs(s.u[0][i] - factor * c.initial[i]));
  CHECK(err <= 1e-8);
}

TEST_CASE("obstacle clamps a constant forcing") {
  auto spec = scalar(21, Reaction::table({0.0, 1.0}, {5.0, 5.0}), graph(GraphKind::obstacle, 1, 2, 1.0),
                     graph(GraphKind::zero), [](double) { return 0.0; });
  TimeControl tc;
  tc.t_end = 0.5;
  tc.dt_init = 1e-2;
  const auto traj = run(spec, tc);
  CHECK(traj.status == RunStatus::completed);
  for (const auto& smp : traj.samples) CHECK(smp.sup[0] <= 1.0 + 1e-12);
  for (double v : traj.final_state.u[0]) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  // Before the contact time 0.2 the forcing acts freely.
  const auto early = run(spec, TimeControl{0.1, 1e-2, 1e-12, 1e8, 0.1});
  for (double v : early.final_state.u[0]) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("run examples") {
  SUBCASE("zero data stays zero") {
    auto spec = scalar(41, Reaction::power(3.0), graph(GraphKind::zero), graph(GraphKind::dirichlet),
                       [](double) { return 0.0; });
    const auto traj = run(spec, TimeControl{});
    CHECK(traj.status == RunStatus::completed);
    CHECK(traj.max_sup() == 0.0);
    CHECK(traj.final_state.t == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::isnan(traj.t_b));
  }
  SUBCASE("large Dirichlet data blows up") {
    auto spec = scalar(101, Reaction::power(3.0), graph(GraphKind::zero), graph(GraphKind::dirichlet),
                       [](double x) { return 20.0 * sine(x); });
    spec.components[0].initial.front() = spec.components[0].initial.back() = 0.0;
    const auto traj = run(spec, TimeControl{});
    CHECK(traj.status == RunStatus::blowup);
    CHECK(traj.max_sup() >= 1e8);
    CHECK(traj.t_b > 0.05);
    CHECK(traj.t_b < 0.15);
    CHECK(traj.ci_width < 1e-3);
  }
  SUBCASE("small Dirichlet data decays") {
    auto spec = scalar(101, Reaction::power(3.0), graph(GraphKind::zero), graph(GraphKind::dirichlet),
                       [](double x) { return 0.5 * sine(x); });
    spec.components[0].initial.front() = spec.components[0].initial.back() = 0.0;
    const auto traj = run(spec, TimeControl{});
    CHECK(traj.status == RunStatus::completed);
    CHECK(traj.samples.back().sup[0] < 0.5 * std::exp(-pi * pi * 0.5));
  }
}

TEST_CASE("sup-norm of the heat flow is nonincreasing and the minimum nondecreasing") {
  auto spec = scalar(61, Reaction::zero(), graph(GraphKind::power, 1.0, 3.0),
                     graph(GraphKind::linear, 2.0), [](double x) { return x * x * (1.2 - x); });
  const auto traj = run(spec, TimeControl{0.5, 1e-3, 1e-12, 1e8, 0.1});
  CHECK(traj.status == RunStatus::completed);
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].sup[0] <= traj.samples[i - 1].sup[0] + 1e-12);
    CHECK(traj.samples[i].min[0] >= -1e-12);
  }
}

TEST_CASE("one step is order preserving") {
  auto lo = scalar(41, Reaction::power(3.0), graph(GraphKind::power, 1.0, 2.5),
                   graph(GraphKind::linear, 1.0), [](double x) { return 1.0 + sine(x); });
  auto hi = lo;
  for (std::size_t i = 0; i < hi.components[0].initial.size(); ++i)
    hi.components[0].initial[i] += 0.3 * std::cos(3 * i) * std::cos(3 * i);
  State a = initial_state(lo), b = initial_state(hi), na, nb;
  for (double dt : {1e-4, 1e-3, 1e-2}) {
    REQUIRE(step(lo, a, dt, na).converged);
    REQUIRE(step(hi, b, dt, nb).converged);
    for (std::size_t i = 0; i < na.u[0].size(); ++i) CHECK(na.u[0][i] <= nb.u[0][i] + 1e-12);
  }
}

TEST_CASE("solution stays nonnegative with extended boundary graphs") {
  auto spec = scalar(81, Reaction::power(3.0), graph(GraphKind::zero),
                     MonotoneGraph::make({GraphKind::extended_power, 1.0, 2.5}),
                     [](double x) { return 2.0 * x * (1 - x); });
  const auto traj = run(spec, TimeControl{});
  CHECK(traj.min_value() >= -1e-12);
}

TEST_CASE("detect_blowup on synthetic reciprocal data") {
  Trajectory traj;
  traj.status = RunStatus::blowup;
  for (int i = 0; i < 40; ++i) {
    Sample s;
    s.t = 1.0 - std::pow(0.7, i);
    s.sup = {1.0 / (1.0 - s.t), 0.5};
    traj.samples.push_back(s);
  }
  const auto v = detect_blowup(traj);
  CHECK(v.blowup);
  CHECK(std::abs(v.t_b - 1.0) <= 1e-6);
  CHECK(v.ci_width <= 1e-6);

  traj.status = RunStatus::completed;
  CHECK_FALSE(detect_blowup(traj).blowup);

  const std::vector<double> t{0, 1, 2}, flat{1, 1, 1};
  CHECK(std::isnan(reciprocal_extrapolation(t, flat)));
}

TEST_CASE("a stalled solver collapses dt into solver_failure") {
  auto spec = scalar(101, Reaction::zero(), graph(GraphKind::zero), graph(GraphKind::dirichlet), sine);
  spec.components[0].initial.front() = spec.components[0].initial.back() = 0.0;
  RunOptions opts;
  opts.solver.max_sweeps = 1;
  const auto traj = run(spec, TimeControl{1.0, 1e-2, 1e-6, 1e8, 0.1}, opts);
  CHECK(traj.status == RunStatus::solver_failure);
  CHECK(traj.residual > 0.0);
  CHECK_FALSE(traj.note.empty());
}

TEST_CASE("local existence horizon examples") {
  CHECK(local_existence_horizon(1.0, Reaction::power(3.0)) == doctest::Approx(1.0 / 12.0));
  CHECK(local_existence_horizon(2.0, Reaction::power(3.0)) == doctest::Approx(1.0 / 24.0));
}

TEST_CASE("snapshots are recorded at the requested times") {
  auto spec = scalar(41, Reaction::zero(), graph(GraphKind::zero), graph(GraphKind::zero), sine);
  RunOptions opts;
  opts.solver.tol = 1e-14;
  opts.solver.max_sweeps = 20000;
  opts.snapshot_times = {0.1, 0.25, 0.7};
  int observed = 0;
  opts.observer = [&](const State&, const Sample&) { ++observed; };
  opts.functionals = [&](const State& s) { return std::vector<double>{integrate(spec.mesh, s.u[0])}; };
  const auto traj = run(spec, TimeControl{0.5, 0.03, 1e-12, 1e8, 0.1}, opts);
  REQUIRE(traj.snapshots.size() == 2);
  CHECK(traj.snapshots[0].t == 0.1);
  CHECK(traj.snapshots[1].t == 0.25);
  CHECK(observed == static_cast<int>(traj.samples.size()));
  // Mass is conserved under homogeneous Neumann conditions.
  const double mass0 = integrate(spec.mesh, spec.components[0].initial);
  for (const auto& s : traj.samples) CHECK(s.extra.at(0) == doctest::Approx(mass0).epsilon(1e-9));
  CHECK(traj.max_dt() <= 0.03);
}

TEST_CASE("invalid problems are configuration errors") {
  auto spec = scalar(21, Reaction::zero(), graph(GraphKind::zero), graph(GraphKind::dirichlet), sine);
  spec.components[0].initial.front() = 0.5;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  project_initial(spec);
  CHECK(spec.components[0].initial.front() == 0.0);
  CHECK_NOTHROW(spec.validate());

  auto bad = spec;
  bad.components[0].diffusion = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = spec;
  bad.components[0].initial.pop_back();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = spec;
  bad.reaction = Reaction::nuclear(1, 1);
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  TimeControl tc;
  tc.t_end = 0.0;
  CHECK_THROWS_AS(tc.validate(), ConfigError);
  tc = TimeControl{};
  tc.dt_min = 1.0;
  CHECK_THROWS_AS(tc.validate(), ConfigError);
  CHECK_THROWS_AS(run(spec, tc), ConfigError);
}
