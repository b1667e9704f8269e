#include "rdmono/scenario.hpp"

#include <cmath>
#include <functional>
#include <set>

#include <json.hpp>

#include "rdmono/error.hpp"

namespace rdmono {

using nlohmann::json;

namespace {

// Path-addressed view of a JSON value.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  std::string sub(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    const std::string where = key.empty() ? (path_.empty() ? "<root>" : path_) : sub(key);
    throw ConfigError(where + ": " + msg);
  }

  void expect_object(const std::set<std::string>& allowed) const {
    if (!j_.is_object()) fail("", "expected an object");
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!allowed.count(it.key())) fail(it.key(), "unknown key");
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  double number(const std::string& key, double def) const {
    return has(key) ? require_number(key) : def;
  }
  double require_number(const std::string& key) const {
    if (!has(key)) fail(key, "missing required number");
    const auto& v = j_.at(key);
    if (!v.is_number()) fail(key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key, "expected a finite number");
    return x;
  }
  int integer(const std::string& key, int def) const {
    if (!has(key)) return def;
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<int>();
  }
  bool boolean(const std::string& key, bool def) const {
    if (!has(key)) return def;
    const auto& v = j_.at(key);
    if (!v.is_boolean()) fail(key, "expected true or false");
    return v.get<bool>();
  }
  std::string string(const std::string& key) const {
    if (!has(key)) fail(key, "missing required string");
    const auto& v = j_.at(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }
  std::vector<double> numbers(const std::string& key) const {
    const auto& v = j_.at(key);
    if (!v.is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail(key + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }
  std::vector<int> integers(const std::string& key) const {
    const auto& v = j_.at(key);
    if (!v.is_array()) fail(key, "expected an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer())
        fail(key + "[" + std::to_string(i) + "]", "expected an integer");
      out.push_back(v[i].get<int>());
    }
    return out;
  }
  Node child(const std::string& key) const {
    if (!has(key)) fail(key, "missing required object");
    return Node(j_.at(key), sub(key));
  }
  const json& raw() const { return j_; }

 private:
  const json& j_;
  std::string path_;
};

GraphSpec parse_graph(const Node& n) {
  if (!n.raw().is_object()) n.fail("", "expected an object");
  const std::string name = n.string("kind");
  GraphSpec g;
  const auto kind = graph_kind_from_string(name);
  if (!kind) n.fail("kind", "unknown graph kind '" + name + "'");
  g.kind = *kind;
  switch (g.kind) {
    case GraphKind::power:
    case GraphKind::extended_power:
      n.expect_object({"kind", "alpha", "q"});
      g.alpha = n.number("alpha", 1.0);
      g.q = n.number("q", 2.0);
      break;
    case GraphKind::linear:
      n.expect_object({"kind", "alpha"});
      g.alpha = n.number("alpha", 1.0);
      break;
    case GraphKind::obstacle:
      n.expect_object({"kind", "M"});
      g.obstacle = n.require_number("M");
      break;
    case GraphKind::custom:
      n.fail("kind", "custom graphs are not serializable");
    default:
      n.expect_object({"kind"});
  }
  if (!(g.alpha >= 0.0)) n.fail("alpha", "must be >= 0");
  if (!(g.q > 1.0)) n.fail("q", "must be > 1");
  if (!(g.obstacle > 0.0)) n.fail("M", "must be > 0");
  return g;
}

json graph_to_json(const GraphSpec& g) {
  json j{{"kind", to_string(g.kind)}};
  switch (g.kind) {
    case GraphKind::power:
    case GraphKind::extended_power:
      j["alpha"] = g.alpha;
      j["q"] = g.q;
      break;
    case GraphKind::linear:
      j["alpha"] = g.alpha;
      break;
    case GraphKind::obstacle:
      j["M"] = g.obstacle;
      break;
    default:
      break;
  }
  return j;
}

ReactionSpec parse_reaction(const Node& n) {
  if (!n.raw().is_object()) n.fail("", "expected an object");
  const std::string kind = n.string("kind");
  ReactionSpec r;
  if (kind == "zero") {
    n.expect_object({"kind"});
    r.kind = ReactionKind::zero;
  } else if (kind == "power") {
    n.expect_object({"kind", "p"});
    r.kind = ReactionKind::power;
    r.p = n.require_number("p");
  } else if (kind == "power_plus") {
    n.expect_object({"kind", "p", "kappa"});
    r.kind = ReactionKind::power_plus;
    r.p = n.require_number("p");
    r.kappa = n.number("kappa", 0.0);
    if (!(r.kappa >= 0.0)) n.fail("kappa", "must be >= 0");
  } else if (kind == "nuclear") {
    n.expect_object({"kind", "a", "b"});
    r.kind = ReactionKind::nuclear;
    r.a = n.require_number("a");
    r.b = n.require_number("b");
    if (!(r.a >= 0.0)) n.fail("a", "must be >= 0");
    if (!(r.b > 0.0)) n.fail("b", "must be > 0");
  } else if (kind == "table") {
    n.expect_object({"kind", "u", "f"});
    r.kind = ReactionKind::table;
    r.table_u = n.numbers("u");
    r.table_f = n.numbers("f");
  } else {
    n.fail("kind", "unknown reaction kind '" + kind + "'");
  }
  if ((r.kind == ReactionKind::power || r.kind == ReactionKind::power_plus) && !(r.p > 2.0))
    n.fail("p", "must be > 2");
  return r;
}

json reaction_to_json(const ReactionSpec& r) {
  json j{{"kind", to_string(r.kind)}};
  switch (r.kind) {
    case ReactionKind::power: j["p"] = r.p; break;
    case ReactionKind::power_plus: j["p"] = r.p; j["kappa"] = r.kappa; break;
    case ReactionKind::nuclear: j["a"] = r.a; j["b"] = r.b; break;
    case ReactionKind::table: j["u"] = r.table_u; j["f"] = r.table_f; break;
    default: break;
  }
  return j;
}

InitialSpec parse_initial(const Node& n) {
  if (!n.raw().is_object()) n.fail("", "expected an object");
  const std::string kind = n.string("kind");
  InitialSpec s;
  if (kind == "constant") {
    n.expect_object({"kind", "value"});
    s.kind = InitialKind::constant;
    s.value = n.require_number("value");
  } else if (kind == "eigen_multiple") {
    n.expect_object({"kind", "c"});
    s.kind = InitialKind::eigen_multiple;
    s.c = n.require_number("c");
  } else if (kind == "bump") {
    n.expect_object({"kind", "center", "width", "height"});
    s.kind = InitialKind::bump;
    s.center = n.numbers("center");
    s.width = n.require_number("width");
    s.height = n.require_number("height");
    if (!(s.width > 0.0)) n.fail("width", "must be > 0");
  } else {
    n.fail("kind", "unknown initial kind '" + kind + "'");
  }
  return s;
}

json initial_to_json(const InitialSpec& s) {
  switch (s.kind) {
    case InitialKind::constant: return {{"kind", "constant"}, {"value", s.value}};
    case InitialKind::eigen_multiple: return {{"kind", "eigen_multiple"}, {"c", s.c}};
    case InitialKind::bump:
      return {{"kind", "bump"}, {"center", s.center}, {"width", s.width}, {"height", s.height}};
  }
  return {};
}

Scenario parse_node(const Node& root);

Scenario parse_explicit(const Node& root) {
  root.expect_object({"name", "origin", "domain", "reaction", "components", "time",
                      "eigen_method", "pair"});
  Scenario s;
  if (root.has("name")) s.name = root.string("name");
  if (root.has("origin")) s.origin = root.string("origin");

  const Node d = root.child("domain");
  d.expect_object({"dim", "lengths", "counts"});
  s.domain.dim = d.integer("dim", 1);
  if (s.domain.dim != 1 && s.domain.dim != 2) d.fail("dim", "must be 1 or 2");
  s.domain.lengths = d.numbers("lengths");
  s.domain.counts = d.integers("counts");
  if (static_cast<int>(s.domain.lengths.size()) != s.domain.dim)
    d.fail("lengths", "needs one entry per axis");
  if (static_cast<int>(s.domain.counts.size()) != s.domain.dim)
    d.fail("counts", "needs one entry per axis");
  for (std::size_t i = 0; i < s.domain.lengths.size(); ++i) {
    if (!(s.domain.lengths[i] > 0.0)) d.fail("lengths[" + std::to_string(i) + "]", "must be > 0");
    if (s.domain.counts[i] < 3) d.fail("counts[" + std::to_string(i) + "]", "must be >= 3");
  }

  s.reaction = parse_reaction(root.child("reaction"));

  if (!root.has("components") || !root.raw().at("components").is_array() ||
      root.raw().at("components").empty())
    root.fail("components", "expected a non-empty array");
  const auto& comps = root.raw().at("components");
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const Node c(comps[k], "components[" + std::to_string(k) + "]");
    c.expect_object({"name", "diffusion", "interior_graph", "boundary_graph", "initial"});
    ComponentScenario cs;
    cs.name = c.has("name") ? c.string("name") : "u" + std::to_string(k + 1);
    cs.diffusion = c.number("diffusion", 1.0);
    if (!(cs.diffusion > 0.0)) c.fail("diffusion", "must be > 0");
    if (c.has("interior_graph")) cs.interior = parse_graph(c.child("interior_graph"));
    cs.boundary = parse_graph(c.child("boundary_graph"));
    cs.initial = parse_initial(c.child("initial"));
    if (cs.initial.kind == InitialKind::bump &&
        static_cast<int>(cs.initial.center.size()) != s.domain.dim)
      c.fail("initial.center", "needs one entry per axis");
    s.components.push_back(cs);
  }

  const int m = static_cast<int>(s.components.size());
  const Node r = root.child("reaction");
  if (s.reaction.kind == ReactionKind::nuclear && m != 2)
    r.fail("kind", "nuclear reaction needs exactly two components");
  if ((s.reaction.kind == ReactionKind::power || s.reaction.kind == ReactionKind::power_plus ||
       s.reaction.kind == ReactionKind::table) && m != 1)
    r.fail("kind", "this reaction needs exactly one component");
  try {
    build_reaction(s.reaction, m);
  } catch (const ConfigError& e) {
    r.fail("", e.what());
  }

  if (root.has("time")) {
    const Node t = root.child("time");
    t.expect_object({"t_end", "dt_init", "dt_min", "blowup_threshold", "safety"});
    s.time.t_end = t.number("t_end", s.time.t_end);
    s.time.dt_init = t.number("dt_init", s.time.dt_init);
    s.time.dt_min = t.number("dt_min", s.time.dt_min);
    s.time.blowup_threshold = t.number("blowup_threshold", s.time.blowup_threshold);
    s.time.safety = t.number("safety", s.time.safety);
    try {
      s.time.validate();
    } catch (const ConfigError& e) {
      t.fail("", e.what());
    }
  }

  if (root.has("eigen_method")) {
    try {
      s.eigen_method = eigen_method_from_string(root.string("eigen_method"));
    } catch (const ConfigError& e) {
      root.fail("eigen_method", e.what());
    }
  }

  if (root.has("pair")) {
    const Node p = root.child("pair");
    p.expect_object({"second", "override_a3", "override_a4", "box_radius"});
    auto pb = std::make_shared<PairBlock>();
    pb->second = std::make_shared<Scenario>(parse_node(p.child("second")));
    if (pb->second->pair) p.fail("second", "nested pair blocks are not supported");
    pb->override_a3 = p.boolean("override_a3", false);
    pb->override_a4 = p.boolean("override_a4", false);
    pb->box_radius = p.number("box_radius", 0.0);
    s.pair = pb;
  }
  return s;
}

Scenario parse_node(const Node& root) {
  if (!root.raw().is_object()) root.fail("", "expected an object");
  if (!root.has("preset")) return parse_explicit(root);
  root.expect_object({"preset", "params", "name"});
  std::map<std::string, double> params;
  if (root.has("params")) {
    const Node p = root.child("params");
    if (!p.raw().is_object()) p.fail("", "expected an object");
    for (auto it = p.raw().begin(); it != p.raw().end(); ++it) params[it.key()] = p.require_number(it.key());
  }
  Scenario s;
  try {
    s = expand_preset(root.string("preset"), params);
  } catch (const ConfigError& e) {
    root.fail("preset", e.what());
  }
  if (root.has("name")) s.name = root.string("name");
  return s;
}

json to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  if (!s.origin.empty()) j["origin"] = s.origin;
  j["domain"] = {{"dim", s.domain.dim}, {"lengths", s.domain.lengths}, {"counts", s.domain.counts}};
  j["reaction"] = reaction_to_json(s.reaction);
  json comps = json::array();
  for (const auto& c : s.components) {
    comps.push_back({{"name", c.name},
                     {"diffusion", c.diffusion},
                     {"interior_graph", graph_to_json(c.interior)},
                     {"boundary_graph", graph_to_json(c.boundary)},
                     {"initial", initial_to_json(c.initial)}});
  }
  j["components"] = comps;
  j["time"] = {{"t_end", s.time.t_end},
               {"dt_init", s.time.dt_init},
               {"dt_min", s.time.dt_min},
               {"blowup_threshold", s.time.blowup_threshold},
               {"safety", s.time.safety}};
  j["eigen_method"] = to_string(s.eigen_method);
  if (s.pair) {
    j["pair"] = {{"second", to_json(*s.pair->second)},
                 {"override_a3", s.pair->override_a3},
                 {"override_a4", s.pair->override_a4},
                 {"box_radius", s.pair->box_radius}};
  }
  return j;
}

// ---------------------------------------------------------------------------
// Presets

class Params {
 public:
  Params(std::string preset, const std::map<std::string, double>& given,
         std::map<std::string, double> defaults)
      : preset_(std::move(preset)), values_(std::move(defaults)) {
    for (const auto& [k, v] : given) {
      if (!values_.count(k))
        throw ConfigError("preset " + preset_ + ": unknown parameter '" + k + "'");
      values_[k] = v;
    }
  }
  double operator[](const std::string& k) const { return values_.at(k); }
  int count(const std::string& k) const {
    const double v = values_.at(k);
    if (v != std::floor(v) || v < 3)
      throw ConfigError("preset " + preset_ + ": parameter '" + k + "' must be an integer >= 3");
    return static_cast<int>(v);
  }

 private:
  std::string preset_;
  std::map<std::string, double> values_;
};

using Defaults = std::map<std::string, double>;

Defaults common_defaults(double t_end) {
  return {{"dim", 1},        {"L", 1.0},         {"n", 201},
          {"t_end", t_end},  {"dt_init", 1e-3},  {"dt_min", 1e-12},
          {"B", 1e8},        {"safety", 0.1}};
}

Defaults merged(Defaults a, const Defaults& b) {
  a.insert(b.begin(), b.end());
  return a;
}

void apply_common(Scenario& s, const Params& p) {
  const double dim = p["dim"];
  if (dim != 1.0 && dim != 2.0) throw ConfigError("preset parameter 'dim' must be 1 or 2");
  s.domain.dim = static_cast<int>(dim);
  s.domain.lengths.assign(s.domain.dim, p["L"]);
  s.domain.counts.assign(s.domain.dim, p.count("n"));
  s.time.t_end = p["t_end"];
  s.time.dt_init = p["dt_init"];
  s.time.dt_min = p["dt_min"];
  s.time.blowup_threshold = p["B"];
  s.time.safety = p["safety"];
  s.time.validate();
}

GraphSpec power_boundary(double alpha, double q) {
  // On nonnegative data the extension to [0, inf) carries the same flux law.
  if (alpha == 0.0) return {GraphKind::extended_neumann};
  return {GraphKind::extended_power, alpha, q};
}

void check_graphs(const Scenario& s) {
  try {
    for (const auto& c : s.components) {
      MonotoneGraph::make(c.interior);
      MonotoneGraph::make(c.boundary);
    }
  } catch (const ConfigError& e) {
    throw ConfigError("preset " + s.origin + ": " + e.what());
  }
}

enum class Bc { dirichlet, gamma, neumann };

Scenario scalar_preset(const std::string& name, const std::map<std::string, double>& given,
                       bool plus, Bc bc) {
  Defaults d = merged(common_defaults(1.0), {{"p", 3.0}, {"c", 12.0}});
  if (plus) d["kappa"] = 1.0;
  if (bc == Bc::gamma) {
    d["alpha"] = 1.0;
    d["q"] = 2.5;
  }
  const Params p(name, given, d);
  Scenario s;
  s.name = name;
  s.origin = name;
  apply_common(s, p);
  s.reaction.kind = plus ? ReactionKind::power_plus : ReactionKind::power;
  s.reaction.p = p["p"];
  if (plus) s.reaction.kappa = p["kappa"];
  ComponentScenario c;
  c.name = "u";
  switch (bc) {
    case Bc::dirichlet: c.boundary = {GraphKind::dirichlet}; break;
    case Bc::gamma: c.boundary = power_boundary(p["alpha"], p["q"]); break;
    case Bc::neumann: c.boundary = {GraphKind::extended_neumann}; break;
  }
  c.initial.kind = InitialKind::eigen_multiple;
  c.initial.c = p["c"];
  s.components.push_back(c);
  build_reaction(s.reaction, 1);
  check_graphs(s);
  return s;
}

enum class NrKind { gamma, dirichlet, gamma_m };

Scenario nr_preset(const std::string& name, const std::map<std::string, double>& given,
                   NrKind kind) {
  Defaults d = merged(common_defaults(2.0), {{"a", 1.0}, {"b", 1.0}, {"u10", 400.0}, {"c2", 18.0}});
  if (kind != NrKind::dirichlet) {
    d["alpha1"] = 1.0;
    d["q1"] = 2.5;
    d["alpha2"] = 1.0;
    d["q2"] = 2.5;
  }
  if (kind == NrKind::gamma_m) d["M"] = 0.0;
  const Params p(name, given, d);
  Scenario s;
  s.name = name;
  s.origin = name;
  apply_common(s, p);
  s.reaction.kind = ReactionKind::nuclear;
  s.reaction.a = p["a"];
  s.reaction.b = p["b"];
  build_reaction(s.reaction, 2);

  ComponentScenario u1, u2;
  u1.name = "u1";
  u2.name = "u2";
  u1.initial.kind = InitialKind::constant;
  u1.initial.value = p["u10"];
  u2.initial.kind = InitialKind::eigen_multiple;
  u2.initial.c = p["c2"];
  if (kind == NrKind::dirichlet) {
    u1.boundary = u2.boundary = {GraphKind::dirichlet};
  } else {
    u1.boundary = power_boundary(p["alpha1"], p["q1"]);
    u2.boundary = power_boundary(p["alpha2"], p["q2"]);
  }
  if (kind == NrKind::gamma_m) {
    double M = p["M"];
    if (M <= 0.0) {
      const EigenPair ep = principal_eigenpair(build_mesh(s.domain), EigenMethod::analytic);
      M = std::abs(p["u10"]) + std::abs(p["c2"]) * sup_norm(ep.phi1) + 2.0;
    }
    u1.interior = u2.interior = {GraphKind::obstacle, 1.0, 2.0, M};
  }
  s.components = {u1, u2};
  check_graphs(s);
  return s;
}

using Builder = std::function<Scenario(const std::map<std::string, double>&)>;

const std::map<std::string, Builder>& single_presets() {
  static const std::map<std::string, Builder> table = {
      {"Pp_dirichlet", [](const auto& g) { return scalar_preset("Pp_dirichlet", g, false, Bc::dirichlet); }},
      {"Pp_gamma", [](const auto& g) { return scalar_preset("Pp_gamma", g, false, Bc::gamma); }},
      {"Pp_neumann", [](const auto& g) { return scalar_preset("Pp_neumann", g, false, Bc::neumann); }},
      {"PF_dirichlet", [](const auto& g) { return scalar_preset("PF_dirichlet", g, true, Bc::dirichlet); }},
      {"PF_gamma", [](const auto& g) { return scalar_preset("PF_gamma", g, true, Bc::gamma); }},
      {"PF_neumann", [](const auto& g) { return scalar_preset("PF_neumann", g, true, Bc::neumann); }},
      {"NR", [](const auto& g) { return nr_preset("NR", g, NrKind::gamma); }},
      {"NR_dirichlet", [](const auto& g) { return nr_preset("NR_dirichlet", g, NrKind::dirichlet); }},
      {"NR_gamma_M", [](const auto& g) { return nr_preset("NR_gamma_M", g, NrKind::gamma_m); }},
  };
  return table;
}

// Pair presets: (sub-solution problem, super-solution problem).
const std::map<std::string, std::pair<std::string, std::string>>& pair_presets() {
  static const std::map<std::string, std::pair<std::string, std::string>> table = {
      {"pair_D_gamma", {"Pp_dirichlet", "Pp_gamma"}},
      {"pair_gamma_N", {"Pp_gamma", "Pp_neumann"}},
      {"pair_NRD_NR", {"NR_dirichlet", "NR"}},
  };
  return table;
}

// Splits params between two presets; each parameter must be known to at least one.
std::map<std::string, double> known_params(const std::string& preset,
                                           const std::map<std::string, double>& given) {
  std::map<std::string, double> out;
  for (const auto& [k, v] : given) {
    try {
      single_presets().at(preset)({{k, v}});
      out[k] = v;
    } catch (const ConfigError& e) {
      if (std::string(e.what()).find("unknown parameter") == std::string::npos) throw;
    }
  }
  return out;
}

}  // namespace

bool Scenario::operator==(const Scenario& o) const {
  if (!(name == o.name && origin == o.origin && domain == o.domain && reaction == o.reaction &&
        components == o.components && time == o.time && eigen_method == o.eigen_method))
    return false;
  if (!pair || !o.pair) return !pair && !o.pair;
  return pair->override_a3 == o.pair->override_a3 && pair->override_a4 == o.pair->override_a4 &&
         pair->box_radius == o.pair->box_radius && *pair->second == *o.pair->second;
}

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("<root>: invalid JSON: ") + e.what());
  }
  return parse_node(Node(j, ""));
}

std::string serialize_scenario(const Scenario& s) { return to_json(s).dump(2); }

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : single_presets()) out.push_back(k);
  for (const auto& [k, v] : pair_presets()) out.push_back(k);
  return out;
}

Scenario expand_preset(const std::string& name, const std::map<std::string, double>& params) {
  if (auto it = single_presets().find(name); it != single_presets().end())
    return it->second(params);
  auto it = pair_presets().find(name);
  if (it == pair_presets().end()) throw ConfigError("unknown preset '" + name + "'");
  const auto& [first, second] = it->second;
  const auto p1 = known_params(first, params);
  const auto p2 = known_params(second, params);
  for (const auto& [k, v] : params) {
    if (!p1.count(k) && !p2.count(k))
      throw ConfigError("preset " + name + ": unknown parameter '" + k + "'");
  }
  Scenario s = single_presets().at(first)(p1);
  s.name = name;
  s.origin = name;
  s.pair = std::make_shared<PairBlock>();
  s.pair->second = std::make_shared<Scenario>(single_presets().at(second)(p2));
  return s;
}

Mesh build_mesh(const DomainSpec& d) { return Mesh::build(d.dim, d.lengths, d.counts); }

Reaction build_reaction(const ReactionSpec& r, int components) {
  switch (r.kind) {
    case ReactionKind::zero: return Reaction::zero(components);
    case ReactionKind::power: return Reaction::power(r.p);
    case ReactionKind::power_plus: return Reaction::power_plus(r.p, r.kappa);
    case ReactionKind::nuclear: return Reaction::nuclear(r.a, r.b);
    case ReactionKind::table: return Reaction::table(r.table_u, r.table_f);
    case ReactionKind::custom: break;
  }
  throw ConfigError("custom reactions cannot be built from a scenario");
}

EigenPair scenario_eigenpair(const Scenario& s) {
  return principal_eigenpair(build_mesh(s.domain), s.eigen_method);
}

ProblemSpec build_problem(const Scenario& s) {
  ProblemSpec p;
  p.label = s.name;
  p.mesh = build_mesh(s.domain);
  p.reaction = build_reaction(s.reaction, static_cast<int>(s.components.size()));

  std::optional<EigenPair> ep;
  for (const auto& c : s.components) {
    ComponentSpec cs;
    cs.name = c.name;
    cs.diffusion = c.diffusion;
    cs.interior = MonotoneGraph::make(c.interior);
    cs.boundary = MonotoneGraph::make(c.boundary);
    cs.initial.resize(p.mesh.size());
    switch (c.initial.kind) {
      case InitialKind::constant:
        std::fill(cs.initial.begin(), cs.initial.end(), c.initial.value);
        break;
      case InitialKind::eigen_multiple:
        if (!ep) ep = principal_eigenpair(p.mesh, s.eigen_method);
        for (std::size_t i = 0; i < cs.initial.size(); ++i) cs.initial[i] = c.initial.c * ep->phi1[i];
        break;
      case InitialKind::bump:
        if (static_cast<int>(c.initial.center.size()) != p.mesh.dim())
          throw ConfigError("bump center needs one entry per axis");
        for (std::size_t i = 0; i < cs.initial.size(); ++i) {
          double r2 = 0.0;
          for (int ax = 0; ax < p.mesh.dim(); ++ax) {
            const double dx = p.mesh.coord(i, ax) - c.initial.center[ax];
            r2 += dx * dx;
          }
          cs.initial[i] = c.initial.height * std::exp(-r2 / (c.initial.width * c.initial.width));
        }
        break;
    }
    p.components.push_back(std::move(cs));
  }
  project_initial(p);
  p.validate();
  return p;
}

}  // namespace rdmono
