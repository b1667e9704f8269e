#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "rdmono/error.hpp"
#include "rdmono/spectral.hpp"

using namespace rdmono;
using std::numbers::pi;

namespace {

double discrete_lambda_1d(int n, double L = 1.0) {
  const double h = L / (n - 1);
  return 4.0 / (h * h) * std::pow(std::sin(pi * h / (2.0 * L)), 2);
}

/// Trapezoidal integral of phi1^2 for the sine mode normalized on the grid.
double phi_sq_integral(int n) {
  auto s = [](double x) { return std::sin(pi * x); };
  auto s2 = [](double x) { return std::pow(std::sin(pi * x), 2); };
  const double mass = oracle::trapezoid(s, 1.0, n);
  return oracle::trapezoid(s2, 1.0, n) / (mass * mass);
}

}  // namespace

TEST_CASE("analytic eigenvalues") {
  CHECK(principal_eigenpair(Mesh::build(1, {1.0}, {201}), EigenMethod::analytic).lambda1 ==
        doctest::Approx(pi * pi).epsilon(1e-15));
  CHECK(principal_eigenpair(Mesh::build(1, {2.0}, {201}), EigenMethod::analytic).lambda1 ==
        doctest::Approx(pi * pi / 4.0).epsilon(1e-15));
  CHECK(principal_eigenpair(Mesh::build(2, {1.0, 1.0}, {41, 41}), EigenMethod::analytic).lambda1 ==
        doctest::Approx(2.0 * pi * pi).epsilon(1e-15));
}

TEST_CASE("eigenpairs are positive inside, zero on the boundary and normalized") {
  for (auto method : {EigenMethod::analytic, EigenMethod::discrete}) {
    for (const auto& mesh : {Mesh::build(1, {1.0}, {101}), Mesh::build(2, {1.0, 2.0}, {21, 31})}) {
      const auto ep = principal_eigenpair(mesh, method);
      CHECK(ep.method == method);
      REQUIRE(ep.phi1.size() == mesh.size());
      for (std::size_t i = 0; i < mesh.size(); ++i) {
        if (mesh.is_boundary(i)) CHECK(ep.phi1[i] == 0.0);
        else CHECK(ep.phi1[i] > 0.0);
      }
      CHECK(std::abs(integrate(mesh, ep.phi1) - 1.0) <= 1e-10);
      CHECK(ep.normalization_residual <= 1e-10);
    }
  }
}

TEST_CASE("discrete eigenvalue matches the closed-form discrete spectrum") {
  for (int n : {11, 51, 201}) {
    const auto ep = principal_eigenpair(Mesh::build(1, {1.0}, {n}), EigenMethod::discrete);
    CHECK(ep.lambda1 == doctest::Approx(discrete_lambda_1d(n)).epsilon(1e-9));
    CHECK(ep.iterations >= 1);
  }
  const auto ep2 = principal_eigenpair(Mesh::build(2, {1.0, 1.0}, {21, 21}), EigenMethod::discrete);
  CHECK(ep2.lambda1 == doctest::Approx(2.0 * discrete_lambda_1d(21)).epsilon(1e-9));
}

TEST_CASE("discrete eigenvalue converges at second order") {
  std::vector<double> err;
  for (int n : {101, 201, 401}) {
    const auto ep = principal_eigenpair(Mesh::build(1, {1.0}, {n}), EigenMethod::discrete);
    err.push_back(std::abs(ep.lambda1 - pi * pi) / (pi * pi));
  }
  CHECK(err.back() <= 1e-3);
  CHECK(std::log2(err[0] / err[1]) >= 1.9);
  CHECK(std::log2(err[1] / err[2]) >= 1.9);

  const auto ep2 = principal_eigenpair(Mesh::build(2, {1.0, 1.0}, {41, 41}), EigenMethod::discrete);
  CHECK(std::abs(ep2.lambda1 - 2 * pi * pi) / (2 * pi * pi) <= 1e-3);
}

TEST_CASE("Rayleigh quotient of the sampled sine equals the discrete eigenvalue") {
  const auto mesh = Mesh::build(1, {1.0}, {101});
  const auto analytic = principal_eigenpair(mesh, EigenMethod::analytic);
  const auto discrete = principal_eigenpair(mesh, EigenMethod::discrete);
  CHECK(rayleigh_quotient(mesh, analytic.phi1) == doctest::Approx(discrete.lambda1).epsilon(1e-8));
  CHECK(rayleigh_quotient(mesh, discrete.phi1) == doctest::Approx(discrete.lambda1).epsilon(1e-8));
  for (std::size_t i = 0; i < mesh.size(); ++i)
    CHECK(discrete.phi1[i] == doctest::Approx(analytic.phi1[i]).epsilon(1e-3).scale(1.0));
}

TEST_CASE("Kaplan functionals") {
  const auto mesh = Mesh::build(1, {1.0}, {201});
  const auto ep = principal_eigenpair(mesh, EigenMethod::analytic);
  const std::vector<double> one(mesh.size(), 1.0), zero(mesh.size(), 0.0), two(mesh.size(), 2.0);
  CHECK(kaplan_y(mesh, one, ep) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kaplan_z(mesh, one, zero, 2.0, 1.0, ep) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(kaplan_z(mesh, zero, two, 0.0, 1.0, ep)) <= 1e-12);
  CHECK(kaplan_y(mesh, ep.phi1, ep) == doctest::Approx(phi_sq_integral(201)).epsilon(1e-12));
  CHECK(phi_sq_integral(201) == doctest::Approx(pi * pi / 8.0).epsilon(1e-4));
}

TEST_CASE("Kaplan threshold and Riccati time") {
  CHECK(kaplan_threshold(3.0, pi * pi) == doctest::Approx(pi * pi));
  CHECK(kaplan_threshold(4.0, 16.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(kaplan_threshold(2.0, 1.0), ConfigError);

  CHECK(std::isinf(riccati_blowup_time(2.0, 1.0)));
  CHECK(std::isinf(riccati_blowup_time(1.0, 1.0)));
  CHECK_THROWS_AS(riccati_blowup_time(5.0, 0.0), ConfigError);
  for (auto [y0, c] : {std::pair{22.2, 1.0 + pi * pi}, std::pair{3.0, 1.0}, std::pair{100.0, 2.0}}) {
    const double t = riccati_blowup_time(y0, c);
    const double cap = 1e8;
    // Escape to `cap` precedes blow-up by about 2 / cap.
    CHECK(std::abs(oracle::riccati_escape_time(y0, c, cap) + 2.0 / cap - t) <= 1e-6 * (1.0 + t));
  }
}

TEST_CASE("check_nr_initial examples") {
  const auto mesh = Mesh::build(1, {1.0}, {201});
  const auto ep = principal_eigenpair(mesh, EigenMethod::analytic);
  std::vector<double> u10(mesh.size(), 400.0), u20(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) u20[i] = 18.0 * ep.phi1[i];

  auto r = check_nr_initial(mesh, u10, u20, 1.0, 1.0, ep);
  CHECK(r.y0 == doctest::Approx(18.0 * phi_sq_integral(201)).epsilon(1e-12));
  CHECK(r.threshold == doctest::Approx(2.0 * (1.0 + pi * pi)));
  CHECK(r.second);
  CHECK(r.first);
  CHECK(r.pointwise);
  CHECK(r.satisfied());
  CHECK(r.violated() == "none");

  std::vector<double> small(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) small[i] = 10.0 * ep.phi1[i];
  r = check_nr_initial(mesh, u10, small, 1.0, 1.0, ep);
  CHECK_FALSE(r.second);
  CHECK(r.violated() == "second");

  const std::vector<double> none(mesh.size(), 0.0);
  r = check_nr_initial(mesh, none, u20, 1.0, 1.0, ep);
  CHECK_FALSE(r.first);
  CHECK_FALSE(r.pointwise);
  CHECK(r.violated() == "first");
  r = check_nr_initial(mesh, none, small, 1.0, 1.0, ep);
  CHECK(r.violated() == "both");
}

TEST_CASE("eigen method names") {
  CHECK(eigen_method_from_string("analytic") == EigenMethod::analytic);
  CHECK(eigen_method_from_string("discrete") == EigenMethod::discrete);
  CHECK(std::string(to_string(EigenMethod::discrete)) == "discrete");
  CHECK_THROWS_AS(eigen_method_from_string("fem"), ConfigError);
}
