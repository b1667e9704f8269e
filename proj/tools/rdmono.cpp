// Command-line front end: run, compare, eigen, bound, presets.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdmono/cli.hpp"
#include "rdmono/error.hpp"

namespace {

struct Source {
  std::string scenario_path;
  std::string preset;
  std::vector<std::string> sets;
};

std::map<std::string, double> parse_sets(const std::vector<std::string>& sets) {
  std::map<std::string, double> out;
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw rdmono::ConfigError("--set expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size() || val.empty())
      throw rdmono::ConfigError("--set " + key + ": '" + val + "' is not a number");
    out[key] = v;
  }
  return out;
}

rdmono::Scenario load(const Source& src) {
  if (!src.scenario_path.empty() && !src.preset.empty())
    throw rdmono::ConfigError("use either --scenario or --preset, not both");
  if (!src.scenario_path.empty()) {
    if (!src.sets.empty()) throw rdmono::ConfigError("--set applies to --preset only");
    std::ifstream f(src.scenario_path);
    if (!f) throw rdmono::ConfigError("cannot read scenario file " + src.scenario_path);
    std::stringstream ss;
    ss << f.rdbuf();
    return rdmono::parse_scenario(ss.str());
  }
  if (!src.preset.empty()) return rdmono::expand_preset(src.preset, parse_sets(src.sets));
  throw rdmono::ConfigError("a scenario is required: pass --scenario <path> or --preset <name>");
}

void add_source(CLI::App* cmd, Source& src, std::string& out_dir) {
  cmd->add_option("--scenario", src.scenario_path, "JSON scenario file");
  cmd->add_option("--preset", src.preset, "built-in preset name");
  cmd->add_option("--set", src.sets, "preset parameter override key=value (repeatable)");
  cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reaction-diffusion systems with maximal monotone graphs"};
  app.set_version_flag("--version", std::string(rdmono::kVersion));
  app.require_subcommand(1);

  Source src;
  std::string out_dir = "out";
  bool override_a3 = false;
  bool override_a4 = false;
  std::string method;
  int eigen_n = 401;
  double eigen_l = 1.0;
  int eigen_dim = 1;

  auto* run = app.add_subcommand("run", "integrate one scenario and write its trajectory CSV");
  add_source(run, src, out_dir);

  auto* compare = app.add_subcommand("compare", "co-evolve a scenario pair and check the ordering");
  add_source(compare, src, out_dir);
  compare->add_flag("--override-a3", override_a3, "boundary-flux ordering is known a priori");
  compare->add_flag("--override-a4", override_a4, "reaction ordering is known a priori");

  auto* eigen = app.add_subcommand("eigen", "principal Dirichlet eigenpair of the domain");
  add_source(eigen, src, out_dir);
  eigen->add_option("--method", method, "analytic or discrete");
  eigen->add_option("--dim", eigen_dim, "dimension when no scenario is given")->capture_default_str();
  eigen->add_option("--n", eigen_n, "nodes per axis when no scenario is given")->capture_default_str();
  eigen->add_option("--L", eigen_l, "side length when no scenario is given")->capture_default_str();

  auto* bound = app.add_subcommand("bound", "local existence horizon and blow-up criteria");
  add_source(bound, src, out_dir);

  auto* presets = app.add_subcommand("presets", "list built-in presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (presets->parsed()) {
      for (const auto& name : rdmono::preset_names()) std::cout << name << "\n";
      return rdmono::kExitOk;
    }
    if (eigen->parsed()) {
      rdmono::Scenario s;
      if (!src.scenario_path.empty() || !src.preset.empty()) {
        s = load(src);
      } else {
        s.domain.dim = eigen_dim;
        s.domain.lengths.assign(eigen_dim, eigen_l);
        s.domain.counts.assign(eigen_dim, eigen_n);
      }
      if (!method.empty()) s.eigen_method = rdmono::eigen_method_from_string(method);
      return rdmono::cmd_eigen(s, out_dir, std::cout);
    }

    rdmono::Scenario s = load(src);
    if (run->parsed()) return rdmono::cmd_run(s, out_dir, std::cout);
    if (bound->parsed()) return rdmono::cmd_bound(s, out_dir, std::cout);
    if (compare->parsed()) {
      if (!s.pair) throw rdmono::ConfigError("compare needs a pair scenario (e.g. --preset pair_D_gamma)");
      s.pair->override_a3 = s.pair->override_a3 || override_a3;
      s.pair->override_a4 = s.pair->override_a4 || override_a4;
      return rdmono::cmd_compare(s, out_dir, std::cout);
    }
  } catch (const rdmono::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return rdmono::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rdmono::kExitSolver;
  }
  return rdmono::kExitConfig;
}
