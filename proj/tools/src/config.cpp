#include "qhm/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace qhm::cli {
namespace {

/// Walks a JSON object, handing out typed fields and rejecting leftovers.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  template <class T>
  void get(const char* key, T& dst) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      dst = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(where_ + "." + key + ": wrong type");
    }
  }

  Reader child(const char* key) {
    seen_.insert(key);
    static const json empty = json::object();
    return Reader(j_.contains(key) ? j_.at(key) : empty, where_ + "." + key);
  }

  const json* raw(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw ConfigError(where_ + ": unknown key '" + k + "'");
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

void merge_strict(json& base, const json& overlay, const std::string& where) {
  if (!overlay.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, v] : overlay.items()) {
    if (!base.contains(k)) throw ConfigError(where + ": unknown key '" + k + "'");
    if (base[k].is_object() && v.is_object())
      merge_strict(base[k], v, where + "." + k);
    else
      base[k] = v;
  }
}

void apply_override(json& base, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + kv + "'");
  const std::string key = kv.substr(0, eq);
  const std::string text = kv.substr(eq + 1);
  json* node = &base;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (!node->is_object() || !node->contains(part))
      throw ConfigError("--set: unknown key '" + key + "'");
    node = &(*node)[part];
  }
  if (node->is_object()) throw ConfigError("--set: '" + key + "' names a section, not a value");
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  *node = value;
}

json optim_json(const OptimOptions& o) {
  return {{"max_iters", o.max_iters},   {"grad_tol", o.grad_tol}, {"initial_step", o.initial_step},
          {"beta", o.beta},             {"sigma", o.sigma},       {"method", to_string(o.method)},
          {"memory", o.memory}};
}

}  // namespace

void RunConfig::validate() const {
  algebra.validate();
  truncation.validate();
  forms.validate();
  if (profile.P0 < 0 || profile.N0 < 0 || profile.P0 > truncation.P || profile.N0 > truncation.N)
    throw ConfigError("profile band exceeds the truncation");
  if (!(profile.width > 0.0)) throw ConfigError("profile.width must be > 0");
  if (!(profile.center_min <= profile.center_max))
    throw ConfigError("profile.center_min must not exceed profile.center_max");
  if (seeds.empty()) throw ConfigError("seeds must be non-empty");
  if (axioms.refinements < 1) throw ConfigError("axioms.refinements must be >= 1");
  if (group.pairs < 1) throw ConfigError("group.pairs must be >= 1");
  if (forms_suite.samples < 1) throw ConfigError("forms_suite.samples must be >= 1");
  for (const auto& r : equivalence.runs) {
    if (r.q < 1) throw ConfigError("equivalence.runs: q must be >= 1");
    if (r.seeds.empty()) throw ConfigError("equivalence.runs: seeds must be non-empty");
  }
  if (minimize.q < 1) throw ConfigError("minimize.q must be >= 1");
  if (!(minimize.fd_step > 0.0)) throw ConfigError("minimize.fd_step must be > 0");
  if (minimize.fd_points < 0) throw ConfigError("minimize.fd_points must be >= 0");
  if (minimize.chart_P0 > truncation.P || minimize.chart_N0 > truncation.N)
    throw ConfigError("minimize chart band exceeds the truncation");
  minimize.optim.validate();
  oracle.grid.validate();
  if (oracle.trial_vectors < 1) throw ConfigError("oracle.trial_vectors must be >= 1");
  if (oracle.vector_p_support < 0 || oracle.vector_p_support > oracle.grid.Pv ||
      oracle.vector_n_support < 0 || oracle.vector_n_support > oracle.grid.Ny)
    throw ConfigError("oracle trial-vector support exceeds the grid");
}

json to_json(const RunConfig& c) {
  json j;
  j["algebra"] = {{"c", c.algebra.c},   {"hbar", c.algebra.hbar},  {"mu", c.algebra.mu},
                  {"nu", c.algebra.nu}, {"alpha", c.algebra.alpha}};
  j["truncation"] = {{"P", c.truncation.P},
                     {"N", c.truncation.N},
                     {"Nx", c.truncation.Nx},
                     {"interp_order", c.truncation.interp_order}};
  j["profile"] = {{"P0", c.profile.P0},
                  {"N0", c.profile.N0},
                  {"M0", c.profile.M0},
                  {"width", c.profile.width},
                  {"center_min", c.profile.center_min},
                  {"center_max", c.profile.center_max},
                  {"zak_terms", c.profile.zak_terms},
                  {"amplitude", c.profile.amplitude},
                  {"decay", c.profile.decay}};
  j["seeds"] = c.seeds;
  j["forms"] = {{"C_D", c.forms.C_D}, {"flip_alpha_sign", c.forms.flip_alpha_sign}};
  const auto& t = c.tol;
  j["tolerances"] = {{"assoc", t.assoc},         {"order_ratio", t.order_ratio},
                     {"exact", t.exact},         {"leibniz", t.leibniz},
                     {"bracket", t.bracket},     {"group", t.group},
                     {"d_squared", t.d_squared}, {"negative_control", t.negative_control},
                     {"oracle", t.oracle},       {"oracle_p0", t.oracle_p0},
                     {"adjoint", t.adjoint},     {"thm", t.thm},
                     {"central", t.central},     {"grad_fd", t.grad_fd},
                     {"min_value", t.min_value}};
  j["axioms"] = {{"refinements", c.axioms.refinements}};
  j["derivations"] = {{"alpha_perturbation", c.derivations.alpha_perturbation}};
  j["group"] = {{"pairs", c.group.pairs}, {"range", c.group.range}};
  j["forms_suite"] = {{"samples", c.forms_suite.samples}};
  json runs = json::array();
  for (const auto& r : c.equivalence.runs) runs.push_back({{"q", r.q}, {"seeds", r.seeds}});
  j["equivalence"] = {{"runs", runs}, {"central_t", c.equivalence.central_t}};
  const auto& m = c.minimize;
  j["minimize"] = {{"q", m.q},
                   {"seed", m.seed},
                   {"start_scale", m.start_scale},
                   {"chart_P0", m.chart_P0},
                   {"chart_N0", m.chart_N0},
                   {"optim", optim_json(m.optim)},
                   {"fd_points", m.fd_points},
                   {"fd_step", m.fd_step}};
  const auto& o = c.oracle;
  j["oracle"] = {{"X", o.grid.X},
                 {"Mx", o.grid.Mx},
                 {"Ny", o.grid.Ny},
                 {"Pv", o.grid.Pv},
                 {"trial_vectors", o.trial_vectors},
                 {"vector_p_support", o.vector_p_support},
                 {"vector_n_support", o.vector_n_support}};
  return j;
}

RunConfig from_json(const json& j) {
  RunConfig c;
  Reader r(j, "config");
  {
    auto a = r.child("algebra");
    a.get("c", c.algebra.c);
    a.get("hbar", c.algebra.hbar);
    a.get("mu", c.algebra.mu);
    a.get("nu", c.algebra.nu);
    a.get("alpha", c.algebra.alpha);
    a.finish();
  }
  {
    auto t = r.child("truncation");
    t.get("P", c.truncation.P);
    t.get("N", c.truncation.N);
    t.get("Nx", c.truncation.Nx);
    t.get("interp_order", c.truncation.interp_order);
    t.finish();
  }
  {
    auto p = r.child("profile");
    p.get("P0", c.profile.P0);
    p.get("N0", c.profile.N0);
    p.get("M0", c.profile.M0);
    p.get("width", c.profile.width);
    p.get("center_min", c.profile.center_min);
    p.get("center_max", c.profile.center_max);
    p.get("zak_terms", c.profile.zak_terms);
    p.get("amplitude", c.profile.amplitude);
    p.get("decay", c.profile.decay);
    p.finish();
  }
  r.get("seeds", c.seeds);
  {
    auto f = r.child("forms");
    f.get("C_D", c.forms.C_D);
    f.get("flip_alpha_sign", c.forms.flip_alpha_sign);
    f.finish();
  }
  {
    auto t = r.child("tolerances");
    auto& x = c.tol;
    t.get("assoc", x.assoc);
    t.get("order_ratio", x.order_ratio);
    t.get("exact", x.exact);
    t.get("leibniz", x.leibniz);
    t.get("bracket", x.bracket);
    t.get("group", x.group);
    t.get("d_squared", x.d_squared);
    t.get("negative_control", x.negative_control);
    t.get("oracle", x.oracle);
    t.get("oracle_p0", x.oracle_p0);
    t.get("adjoint", x.adjoint);
    t.get("thm", x.thm);
    t.get("central", x.central);
    t.get("grad_fd", x.grad_fd);
    t.get("min_value", x.min_value);
    t.finish();
  }
  {
    auto a = r.child("axioms");
    a.get("refinements", c.axioms.refinements);
    a.finish();
  }
  {
    auto d = r.child("derivations");
    d.get("alpha_perturbation", c.derivations.alpha_perturbation);
    d.finish();
  }
  {
    auto g = r.child("group");
    g.get("pairs", c.group.pairs);
    g.get("range", c.group.range);
    g.finish();
  }
  {
    auto f = r.child("forms_suite");
    f.get("samples", c.forms_suite.samples);
    f.finish();
  }
  {
    auto e = r.child("equivalence");
    if (const json* runs = e.raw("runs")) {
      if (!runs->is_array()) throw ConfigError("config.equivalence.runs: expected an array");
      c.equivalence.runs.clear();
      for (const auto& item : *runs) {
        Reader ri(item, "config.equivalence.runs[]");
        EquivalenceRun run;
        ri.get("q", run.q);
        ri.get("seeds", run.seeds);
        ri.finish();
        c.equivalence.runs.push_back(run);
      }
    }
    e.get("central_t", c.equivalence.central_t);
    e.finish();
  }
  {
    auto m = r.child("minimize");
    auto& x = c.minimize;
    m.get("q", x.q);
    m.get("seed", x.seed);
    m.get("start_scale", x.start_scale);
    m.get("chart_P0", x.chart_P0);
    m.get("chart_N0", x.chart_N0);
    {
      auto o = m.child("optim");
      o.get("max_iters", x.optim.max_iters);
      o.get("grad_tol", x.optim.grad_tol);
      o.get("initial_step", x.optim.initial_step);
      o.get("beta", x.optim.beta);
      o.get("sigma", x.optim.sigma);
      std::string method = to_string(x.optim.method);
      o.get("method", method);
      x.optim.method = parse_descent_method(method);
      o.get("memory", x.optim.memory);
      o.finish();
    }
    m.get("fd_points", x.fd_points);
    m.get("fd_step", x.fd_step);
    m.finish();
  }
  {
    auto o = r.child("oracle");
    auto& x = c.oracle;
    o.get("X", x.grid.X);
    o.get("Mx", x.grid.Mx);
    o.get("Ny", x.grid.Ny);
    o.get("Pv", x.grid.Pv);
    o.get("trial_vectors", x.trial_vectors);
    o.get("vector_p_support", x.vector_p_support);
    o.get("vector_n_support", x.vector_n_support);
    o.finish();
  }
  r.finish();
  c.validate();
  return c;
}

RunConfig resolve_config(const std::string& path, const std::vector<std::string>& overrides) {
  json base = to_json(RunConfig{});
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json file = json::parse(in, nullptr, false);
    if (file.is_discarded()) throw ConfigError("config file '" + path + "' is not valid JSON");
    merge_strict(base, file, "config");
  }
  for (const auto& kv : overrides) apply_override(base, kv);
  return from_json(base);
}

}  // namespace qhm::cli
