#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rdmono/graphs.hpp"
#include "rdmono/reactions.hpp"
#include "rdmono/spectral.hpp"
#include "rdmono/stepper.hpp"

namespace rdmono {

inline constexpr const char* kVersion = "0.1.0";

struct DomainSpec {
  int dim = 1;
  std::vector<double> lengths{1.0};
  std::vector<int> counts{201};
  bool operator==(const DomainSpec&) const = default;
};

enum class InitialKind { constant, eigen_multiple, bump };

/// constant: value; eigen_multiple: c * phi1; bump: height * exp(-|x - center|^2 / width^2).
struct InitialSpec {
  InitialKind kind = InitialKind::constant;
  double value = 0.0;
  double c = 0.0;
  std::vector<double> center;
  double width = 0.1;
  double height = 1.0;
  bool operator==(const InitialSpec&) const = default;
};

struct ReactionSpec {
  ReactionKind kind = ReactionKind::zero;
  double p = 3.0;
  double kappa = 0.0;
  double a = 1.0;
  double b = 1.0;
  std::vector<double> table_u;
  std::vector<double> table_f;
  bool operator==(const ReactionSpec&) const = default;
};

struct ComponentScenario {
  std::string name;
  double diffusion = 1.0;
  GraphSpec interior{GraphKind::zero};
  GraphSpec boundary{GraphKind::zero};
  InitialSpec initial;
  bool operator==(const ComponentScenario&) const = default;
};

struct Scenario;

struct PairBlock {
  std::shared_ptr<Scenario> second;
  bool override_a3 = false;
  bool override_a4 = false;
  double box_radius = 0.0;
};

struct Scenario {
  std::string name = "scenario";
  std::string origin;  ///< preset name when expanded from a preset
  DomainSpec domain;
  ReactionSpec reaction;
  std::vector<ComponentScenario> components;
  TimeControl time;
  EigenMethod eigen_method = EigenMethod::analytic;
  std::shared_ptr<PairBlock> pair;

  bool operator==(const Scenario& o) const;
};

/// Parses a JSON scenario. Either an explicit scenario or a preset reference
/// {"preset": name, "params": {...}}. Unknown keys are rejected; errors name
/// the offending path, e.g. "components[0].boundary_graph.q".
Scenario parse_scenario(const std::string& text);

/// Canonical explicit JSON (presets already expanded).
std::string serialize_scenario(const Scenario& s);

std::vector<std::string> preset_names();

/// Deterministic expansion. Unknown preset names or parameters throw ConfigError.
Scenario expand_preset(const std::string& name, const std::map<std::string, double>& params = {});

EigenPair scenario_eigenpair(const Scenario& s);
Mesh build_mesh(const DomainSpec& d);
Reaction build_reaction(const ReactionSpec& r, int components);

/// Mesh, graphs, reaction and projected initial data.
ProblemSpec build_problem(const Scenario& s);

}  // namespace rdmono
