#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rdmono/error.hpp"
#include "rdmono/graphs.hpp"

using namespace rdmono;

namespace {

MonotoneGraph G(GraphKind k, double alpha = 1.0, double q = 2.0, double M = 1.0) {
  return MonotoneGraph::make({k, alpha, q, M});
}

std::vector<MonotoneGraph> zoo() {
  return {G(GraphKind::zero),         G(GraphKind::linear, 2.0),
          G(GraphKind::power, 1, 1.5), G(GraphKind::power, 1, 3),
          G(GraphKind::dirichlet),    G(GraphKind::extended_power, 1, 2.5),
          G(GraphKind::extended_neumann), G(GraphKind::obstacle, 1, 2, 1.0)};
}

}  // namespace

TEST_CASE("make_graph sets exact domains and segments") {
  const auto d = G(GraphKind::dirichlet);
  CHECK(d.domain_lo() == 0.0);
  CHECK(d.domain_hi() == 0.0);
  const auto v = d.eval(0.0);
  REQUIRE(v);
  CHECK(v->lo == -kInf);
  CHECK(v->hi == kInf);
  CHECK_FALSE(d.eval(0.1));

  const auto p = G(GraphKind::power, 1, 3);
  CHECK(p.eval(2.0) == Interval{4.0, 4.0});
  CHECK(p.eval(-2.0) == Interval{-4.0, -4.0});

  const auto e = G(GraphKind::extended_power, 1, 2);
  CHECK(e.domain_lo() == 0.0);
  CHECK(e.domain_hi() == kInf);
  CHECK(e.segment_lo());
  CHECK(e.eval(0.0) == Interval{-kInf, 0.0});
  CHECK_FALSE(e.eval(-1e-9));

  const auto n = G(GraphKind::extended_neumann);
  CHECK(n.eval(3.0) == Interval{0.0, 0.0});
  CHECK(n.eval(0.0) == Interval{-kInf, 0.0});

  const auto o = G(GraphKind::obstacle, 1, 2, 2.0);
  CHECK(o.domain_lo() == -2.0);
  CHECK(o.domain_hi() == 2.0);
  CHECK(o.segment_lo());
  CHECK(o.segment_hi());
}

TEST_CASE("infinite endpoints carry no segments") {
  for (const auto& g : zoo()) {
    if (g.domain_lo() == -kInf) CHECK_FALSE(g.segment_lo());
    if (g.domain_hi() == kInf) CHECK_FALSE(g.segment_hi());
  }
}

TEST_CASE("invalid graph parameters are configuration errors") {
  CHECK_THROWS_AS(G(GraphKind::power, 1, 1.0), ConfigError);
  CHECK_THROWS_AS(G(GraphKind::power, -1, 2.0), ConfigError);
  CHECK_THROWS_AS(G(GraphKind::extended_power, 1, 0.5), ConfigError);
  CHECK_THROWS_AS(G(GraphKind::obstacle, 1, 2, 0.0), ConfigError);
  CHECK_THROWS_AS(G(GraphKind::obstacle, 1, 2, -3.0), ConfigError);
}

TEST_CASE("eval_graph examples") {
  const auto o = G(GraphKind::obstacle, 1, 2, 1.0);
  CHECK(o.eval(0.5) == Interval{0.0, 0.0});
  CHECK(o.eval(1.0) == Interval{0.0, kInf});
  CHECK(o.eval(-1.0) == Interval{-kInf, 0.0});
  CHECK_FALSE(o.eval(1.5));
  CHECK(G(GraphKind::power, 1, 2).eval(-3.0) == Interval{-3.0, -3.0});
}

TEST_CASE("min_section picks the smallest magnitude") {
  CHECK(*G(GraphKind::dirichlet).min_section(0.0) == 0.0);
  CHECK(*G(GraphKind::obstacle, 1, 2, 1).min_section(1.0) == 0.0);
  CHECK(*G(GraphKind::extended_power, 1, 2).min_section(0.0) == 0.0);
  CHECK_FALSE(G(GraphKind::dirichlet).min_section(1.0));
}

TEST_CASE("resolvent examples") {
  CHECK(G(GraphKind::linear).resolvent(1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  for (double r : {-5.0, 0.0, 0.3, 7.0}) {
    CHECK(G(GraphKind::dirichlet).resolvent(0.7, r) == 0.0);
  }
  // x + 0.5 x^2 = 1 on x >= 0 by the quadratic formula.
  const double expected = -1.0 + std::sqrt(3.0);
  CHECK(std::abs(G(GraphKind::power, 1, 3).resolvent(0.5, 1.0) - expected) <= 1e-12);
}

TEST_CASE("resolvent rejects a nonpositive lambda") {
  CHECK_THROWS_AS(G(GraphKind::linear).resolvent(0.0, 1.0), ConfigError);
}

TEST_CASE("yosida examples") {
  const auto o = G(GraphKind::obstacle, 1, 2, 1.0);
  CHECK(o.yosida(0.5, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(o.yosida(0.5, 0.3) == 0.0);
  CHECK(G(GraphKind::linear).yosida(1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("resolvent agrees with an independent bisection oracle") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ur(-10.0, 10.0);
  std::uniform_real_distribution<double> ul(-3.0, 1.0);
  struct Case {
    MonotoneGraph g;
    oracle::ValueSet v;
    double lo, hi;
  };
  const std::vector<Case> cases = {
      {G(GraphKind::linear, 2.0), oracle::linear(2.0), -oracle::inf, oracle::inf},
      {G(GraphKind::power, 1, 1.5), oracle::power(1, 1.5), -oracle::inf, oracle::inf},
      {G(GraphKind::power, 0.5, 4), oracle::power(0.5, 4), -oracle::inf, oracle::inf},
      {G(GraphKind::extended_power, 1, 2.5), oracle::extended_power(1, 2.5), 0.0, oracle::inf},
      {G(GraphKind::obstacle, 1, 2, 2.0), oracle::obstacle(2.0), -2.0, 2.0},
  };
  for (const auto& c : cases) {
    for (int i = 0; i < 200; ++i) {
      const double lambda = std::pow(10.0, ul(rng));
      const double r = ur(rng);
      const double ref = oracle::resolvent(c.v, c.lo, c.hi, lambda, r);
      CHECK(std::abs(c.g.resolvent(lambda, r) - ref) <= 1e-10);
    }
  }
}

TEST_CASE("resolvent is a monotone contraction and yosida is 1/lambda-Lipschitz") {
  std::vector<double> rs;
  for (int i = 0; i <= 80; ++i) rs.push_back(-10.0 + 0.25 * i);
  for (const auto& g : zoo()) {
    for (double lambda : {1e-3, 0.1, 1.0, 10.0}) {
      for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
        const double a = g.resolvent(lambda, rs[i]);
        const double b = g.resolvent(lambda, rs[i + 1]);
        CHECK(b >= a - 1e-12);
        CHECK(b - a <= rs[i + 1] - rs[i] + 1e-12);
        const double ya = g.yosida(lambda, rs[i]);
        const double yb = g.yosida(lambda, rs[i + 1]);
        CHECK(yb >= ya - 1e-9 / lambda);
        CHECK(yb - ya <= (rs[i + 1] - rs[i]) / lambda * (1 + 1e-9) + 1e-9 / lambda);
      }
    }
  }
}

TEST_CASE("yosida approaches the selection as lambda shrinks") {
  const auto p = G(GraphKind::power, 1, 3);
  const auto e = G(GraphKind::extended_power, 2, 2.5);
  for (double r : {-2.0, 0.5, 1.7}) {
    double prev = kInf;
    for (double lambda : {1e-2, 1e-4, 1e-6}) {
      const double err = std::abs(p.yosida(lambda, r) - p.selection(r));
      CHECK(err < prev);
      prev = err;
    }
  }
  double prev = kInf;
  for (double lambda : {1e-2, 1e-4, 1e-6}) {
    const double err = std::abs(e.yosida(lambda, 1.3) - e.selection(1.3));
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("sampled graph relations are monotone") {
  std::vector<double> rs;
  for (int i = 0; i <= 60; ++i) rs.push_back(-3.0 + 0.1 * i);
  for (const auto& g : zoo()) {
    for (double r1 : rs) {
      const auto v1 = g.eval(r1);
      if (!v1) continue;
      for (double r2 : rs) {
        const auto v2 = g.eval(r2);
        if (!v2 || r2 >= r1) continue;
        // Every z1 in G(r1) must dominate every z2 in G(r2).
        CHECK(v1->lo >= v2->hi);
      }
    }
  }
}

TEST_CASE("every resolvent inclusion has a solution in the closed domain") {
  for (const auto& g : zoo()) {
    for (double lambda : {1e-3, 1.0, 10.0}) {
      for (double r = -20.0; r <= 20.0; r += 0.5) {
        const double x = g.resolvent(lambda, r);
        REQUIRE(g.in_domain(x));
        const auto v = g.eval(x);
        REQUIRE(v);
        const double lo = x + lambda * v->lo - r;
        const double hi = x + lambda * v->hi - r;
        CHECK(lo <= 1e-9);
        CHECK(hi >= -1e-9);
      }
    }
  }
}

TEST_CASE("custom graphs and nonnegative extensions") {
  const auto cubic = MonotoneGraph::custom(
      -kInf, kInf, [](double r) { return r * r * r; }, false, false, "cubic");
  // x + x^3 = 2 at x = 1
  CHECK(cubic.resolvent(1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cubic.identical(cubic));

  const auto ext = MonotoneGraph::extend_nonnegative(G(GraphKind::power, 1, 2.5));
  CHECK(ext.kind() == GraphKind::extended_power);
  CHECK(ext.eval(0.0) == Interval{-kInf, 0.0});
  const auto ext0 = MonotoneGraph::extend_nonnegative(G(GraphKind::zero));
  CHECK(ext0.kind() == GraphKind::extended_neumann);
}

TEST_CASE("resolvent of a weighted graph sum matches the oracle") {
  const auto o = G(GraphKind::obstacle, 1, 2, 3.0);
  const auto e = G(GraphKind::extended_power, 1, 2.5);
  const auto vo = oracle::obstacle(3.0);
  const auto ve = oracle::extended_power(1, 2.5);
  const oracle::ValueSet sum = [&](double r) {
    const auto a = vo(r);
    const auto b = ve(r);
    return std::make_pair(0.2 * a.first + 0.7 * b.first, 0.2 * a.second + 0.7 * b.second);
  };
  const WeightedGraph terms[2] = {{&o, 0.2}, {&e, 0.7}};
  for (double r = -5.0; r <= 10.0; r += 0.37) {
    const double ref = oracle::resolvent(sum, 0.0, 3.0, 1.0, r);
    CHECK(std::abs(resolvent_sum(terms, r) - ref) <= 1e-10);
  }
  const auto d = G(GraphKind::dirichlet);
  const auto shifted = MonotoneGraph::custom(
      2.0, 3.0, [](double) { return 0.0; }, true, true, "box");
  const WeightedGraph disjoint[2] = {{&d, 1.0}, {&shifted, 1.0}};
  CHECK_THROWS_AS(resolvent_sum(disjoint, 1.0), InvariantError);
}

TEST_CASE("dominates examples") {
  const auto d = G(GraphKind::dirichlet);
  const auto e = G(GraphKind::extended_power, 1, 2);
  const auto n = G(GraphKind::extended_neumann);
  const auto p = G(GraphKind::power, 1, 2);

  auto v = dominates(d, e);
  CHECK(v.verdict == Verdict::holds);
  CHECK(v.mode == DominanceMode::ordered_domains);

  v = dominates(e, n);
  CHECK(v.verdict == Verdict::holds);
  CHECK(v.mode == DominanceMode::ordered_values);

  v = dominates(p, p);
  CHECK(v.verdict == Verdict::holds);
  CHECK(v.mode == DominanceMode::identical);
}

TEST_CASE("dominates is reflexive and antitone") {
  for (const auto& g : zoo()) {
    const auto v = dominates(g, g);
    CHECK(v.verdict == Verdict::holds);
    CHECK(v.mode == DominanceMode::identical);
  }
  const auto e = G(GraphKind::extended_power, 1, 2.5);
  const auto n = G(GraphKind::extended_neumann);
  const auto v = dominates(n, e);
  CHECK(v.verdict == Verdict::fails);
  REQUIRE(v.witness);
  CHECK(v.witness->first > v.witness->second);
  // The witness violates sup G2(r2) <= inf G1(r1).
  CHECK(e.eval(v.witness->second)->hi > n.eval(v.witness->first)->lo);

  const auto d = G(GraphKind::dirichlet);
  CHECK(dominates(e, d).verdict == Verdict::fails);
}

TEST_CASE("dominates is inconclusive for unbounded custom graphs") {
  const auto c1 = MonotoneGraph::custom(
      -kInf, kInf, [](double r) { return std::atan(r); }, false, false, "atan");
  const auto c2 = MonotoneGraph::custom(
      -kInf, kInf, [](double r) { return std::atan(r) - 10.0; }, false, false, "atan-10");
  CHECK(dominates(c1, c2).verdict == Verdict::inconclusive);
}
