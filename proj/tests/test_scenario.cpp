#include <doctest.h>

#include <cmath>
#include <string>

#include "rdmono/error.hpp"
#include "rdmono/scenario.hpp"

using namespace rdmono;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

const char* kExplicit = R"({
  "name": "heat",
  "domain": {"dim": 1, "lengths": [2.0], "counts": [41]},
  "reaction": {"kind": "power", "p": 3.5},
  "components": [{
    "name": "u",
    "diffusion": 0.5,
    "interior_graph": {"kind": "zero"},
    "boundary_graph": {"kind": "power", "alpha": 2.0, "q": 3.0},
    "initial": {"kind": "bump", "center": [1.0], "width": 0.2, "height": 3.0}
  }],
  "time": {"t_end": 0.5, "dt_init": 0.01, "dt_min": 1e-10, "blowup_threshold": 1e6, "safety": 0.2}
})";

}  // namespace

TEST_CASE("explicit scenario parses every block") {
  const auto s = parse_scenario(kExplicit);
  CHECK(s.name == "heat");
  CHECK(s.domain.lengths == std::vector<double>{2.0});
  CHECK(s.domain.counts == std::vector<int>{41});
  CHECK(s.reaction.kind == ReactionKind::power);
  CHECK(s.reaction.p == 3.5);
  REQUIRE(s.components.size() == 1);
  CHECK(s.components[0].diffusion == 0.5);
  CHECK(s.components[0].boundary == GraphSpec{GraphKind::power, 2.0, 3.0});
  CHECK(s.components[0].initial.kind == InitialKind::bump);
  CHECK(s.time.t_end == 0.5);
  CHECK(s.time.safety == 0.2);
  CHECK_FALSE(s.pair);

  const auto p = build_problem(s);
  CHECK(p.mesh.size() == 41);
  CHECK(p.components[0].initial[20] == doctest::Approx(3.0));
  CHECK(p.components[0].initial[0] == doctest::Approx(3.0 * std::exp(-25.0)));
}

TEST_CASE("preset examples") {
  auto s = expand_preset("Pp_dirichlet");
  CHECK(s.origin == "Pp_dirichlet");
  CHECK(s.reaction.kind == ReactionKind::power);
  CHECK(s.reaction.p == 3.0);
  CHECK(s.components[0].boundary.kind == GraphKind::dirichlet);
  CHECK(s.components[0].initial.kind == InitialKind::eigen_multiple);
  CHECK(s.components[0].initial.c == 12.0);
  CHECK(s.domain.counts[0] == 201);
  CHECK(s.time.t_end == 1.0);

  s = expand_preset("Pp_gamma", {{"alpha", 2.0}, {"q", 3.0}});
  CHECK(s.components[0].boundary == GraphSpec{GraphKind::extended_power, 2.0, 3.0});

  s = expand_preset("PF_neumann", {{"kappa", 0.5}});
  CHECK(s.reaction.kind == ReactionKind::power_plus);
  CHECK(s.reaction.kappa == 0.5);
  CHECK(s.components[0].boundary.kind == GraphKind::extended_neumann);

  s = expand_preset("NR_dirichlet");
  CHECK(s.reaction.kind == ReactionKind::nuclear);
  REQUIRE(s.components.size() == 2);
  CHECK(s.components[0].initial.value == 400.0);
  CHECK(s.components[1].initial.c == 18.0);
  CHECK(s.time.t_end == 2.0);

  s = expand_preset("NR_gamma_M");
  CHECK(s.components[0].interior.kind == GraphKind::obstacle);
  CHECK(s.components[0].interior.obstacle > 400.0 + 18.0 * 1.5);

  s = expand_preset("Pp_gamma", {{"dim", 2}, {"n", 21}});
  CHECK(s.domain.dim == 2);
  CHECK(s.domain.counts == std::vector<int>{21, 21});
}

TEST_CASE("zero flux coefficients select the Neumann extension") {
  const auto s = expand_preset("NR", {{"alpha1", 0.0}, {"alpha2", 0.0}});
  CHECK(s.components[0].boundary.kind == GraphKind::extended_neumann);
  CHECK(s.components[1].boundary.kind == GraphKind::extended_neumann);
}

TEST_CASE("preset errors") {
  CHECK_THROWS_AS(expand_preset("nope"), ConfigError);
  CHECK_THROWS_AS(expand_preset("Pp_dirichlet", {{"alpha", 1.0}}), ConfigError);
  CHECK_THROWS_AS(expand_preset("Pp_dirichlet", {{"n", 2.5}}), ConfigError);
  CHECK_THROWS_AS(expand_preset("Pp_dirichlet", {{"dim", 3}}), ConfigError);
  CHECK_THROWS_AS(expand_preset("Pp_gamma", {{"q", 1.0}}), ConfigError);
  CHECK_THROWS_AS(expand_preset("Pp_dirichlet", {{"p", 2.0}}), ConfigError);
  CHECK_THROWS_AS(expand_preset("pair_D_gamma", {{"bogus", 1.0}}), ConfigError);
}

TEST_CASE("invalid scenarios name the offending path") {
  std::string text = kExplicit;
  text.replace(text.find(R"("q": 3.0)"), 8, R"("q": 1.0)");
  CHECK(contains(error_of(text), "components[0].boundary_graph.q"));

  text = kExplicit;
  text.replace(text.find(R"("diffusion")"), 11, R"("difusion")");
  CHECK(contains(error_of(text), "difusion"));

  text = kExplicit;
  text.replace(text.find(R"("counts": [41])"), 14, R"("counts": [2])");
  CHECK_FALSE(error_of(text).empty());

  text = kExplicit;
  text.replace(text.find(R"("kind": "zero")"), 14, R"("kind": "cubic")");
  CHECK(contains(error_of(text), "components[0].interior_graph.kind"));

  CHECK(contains(error_of("{"), "invalid JSON"));
  CHECK(contains(error_of(R"({"preset": "Pp_gamma", "params": {"q": 1.0}})"), "q"));
  CHECK(contains(error_of(R"({"preset": "Pp_gamma", "extra": 1})"), "extra"));
}

TEST_CASE("preset reference in JSON matches expand_preset") {
  const auto s = parse_scenario(R"({"preset": "Pp_gamma", "params": {"c": 5, "n": 51}})");
  CHECK(s == expand_preset("Pp_gamma", {{"c", 5.0}, {"n", 51.0}}));
  const auto named = parse_scenario(R"({"preset": "Pp_gamma", "name": "mine"})");
  CHECK(named.name == "mine");
  CHECK(named.origin == "Pp_gamma");
}

TEST_CASE("every preset round-trips through JSON") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const auto s = expand_preset(name);
    const auto back = parse_scenario(serialize_scenario(s));
    CHECK(back == s);
    CHECK(serialize_scenario(back) == serialize_scenario(s));
  }
  const auto s = parse_scenario(kExplicit);
  CHECK(parse_scenario(serialize_scenario(s)) == s);
}

TEST_CASE("pair presets carry the second problem") {
  const auto s = expand_preset("pair_D_gamma", {{"alpha", 2.0}, {"n", 51}});
  REQUIRE(s.pair);
  REQUIRE(s.pair->second);
  CHECK(s.components[0].boundary.kind == GraphKind::dirichlet);
  CHECK(s.pair->second->components[0].boundary == GraphSpec{GraphKind::extended_power, 2.0, 2.5});
  CHECK(s.domain.counts[0] == 51);
  CHECK(s.pair->second->domain.counts[0] == 51);
  CHECK_FALSE(s.pair->override_a3);

  const auto nr = expand_preset("pair_NRD_NR");
  CHECK(nr.components[0].boundary.kind == GraphKind::dirichlet);
  CHECK(nr.pair->second->components[0].boundary.kind == GraphKind::extended_power);
}

TEST_CASE("build_problem projects onto graph domains") {
  const auto p = build_problem(expand_preset("Pp_dirichlet", {{"n", 21}}));
  CHECK(p.components[0].initial.front() == 0.0);
  CHECK(p.components[0].initial.back() == 0.0);
  CHECK(*std::max_element(p.components[0].initial.begin(), p.components[0].initial.end()) > 12.0);

  const auto ep = scenario_eigenpair(expand_preset("Pp_dirichlet", {{"n", 21}}));
  CHECK(ep.method == EigenMethod::analytic);
  for (std::size_t i = 0; i < ep.phi1.size(); ++i)
    CHECK(p.components[0].initial[i] == doctest::Approx(12.0 * ep.phi1[i]));
}
