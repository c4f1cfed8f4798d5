#include "franchise/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "franchise/errors.hpp"

namespace franchise {

using nlohmann::json;
using nlohmann::ordered_json;

const char* sweep_target_name(SweepTarget t) {
  switch (t) {
    case SweepTarget::Solve: return "solve";
    case SweepTarget::Identity: return "identity";
    case SweepTarget::Classify: return "classify";
  }
  return "unknown";
}

const char* output_format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::PlotData: return "plotdata";
  }
  return "unknown";
}

DynParams Config::dyn_params() const {
  DynParams d;
  d.base = game;
  d.delta = delta;
  d.a_coef = a_coef;
  d.t_max = t_max;
  d.conv_tol = conv_tol;
  d.a_blowup = a_blowup;
  return d;
}

IdentityParams Config::identity_params() const {
  IdentityParams i;
  i.base = game;
  i.alpha = alpha;
  i.p_tot = p_tot;
  return i;
}

namespace {

[[noreturn]] void constraint(const std::string& msg) {
  throw error(errc::config_constraint, msg);
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      constraint("unknown key '" + it.key() + "' in " + where);
}

double number_at(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number()) constraint("'" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  return number_at(j, key);
}

long integer_or(const json& j, const std::string& key, long fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_number()) {
    const double d = v.get<double>();
    if (std::floor(d) == d) return static_cast<long>(d);
  }
  constraint("'" + key + "' must be an integer");
}

std::string string_at(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_string()) constraint("'" + key + "' must be a string");
  return v.get<std::string>();
}

ProductionSpec parse_production(const json& j) {
  if (!j.is_object()) constraint("'production' must be an object");
  reject_unknown_keys(j, {"family", "beta", "kappa"}, "'production'");
  if (!j.contains("family")) constraint("missing required key 'production.family'");
  const std::string name = string_at(j, "family");
  const auto family = family_from_name(name);
  if (!family)
    constraint("'production.family' must be one of isoelastic, log, saturating; got '" + name + "'");
  ProductionSpec spec;
  spec.family = *family;
  spec.beta = number_or(j, "beta", spec.beta);
  spec.kappa = number_or(j, "kappa", spec.kappa);
  if (!(std::isfinite(spec.beta) && spec.beta > 0.0 && spec.beta < 1.0))
    constraint("'production.beta' must lie in (0, 1)");
  if (!(std::isfinite(spec.kappa) && spec.kappa > 0.0))
    constraint("'production.kappa' must be positive");
  return spec;
}

SweepSettings parse_sweep(const json& j) {
  if (!j.is_object()) constraint("'sweep' must be an object");
  reject_unknown_keys(j, {"target", "axes", "max_points", "format", "output"}, "'sweep'");

  SweepSettings sw;
  if (j.contains("target")) {
    const std::string t = string_at(j, "target");
    if (t == "solve") sw.target = SweepTarget::Solve;
    else if (t == "identity") sw.target = SweepTarget::Identity;
    else if (t == "classify") sw.target = SweepTarget::Classify;
    else constraint("'sweep.target' must be one of solve, identity, classify; got '" + t + "'");
  }
  if (j.contains("format")) {
    const std::string f = string_at(j, "format");
    if (f == "csv") sw.format = OutputFormat::Csv;
    else if (f == "json") sw.format = OutputFormat::Json;
    else if (f == "plotdata") sw.format = OutputFormat::PlotData;
    else constraint("'sweep.format' must be one of csv, json, plotdata; got '" + f + "'");
  }
  if (j.contains("output")) sw.output = string_at(j, "output");
  {
    const long mp = integer_or(j, "max_points", static_cast<long>(sw.max_points));
    if (mp < 1) constraint("'sweep.max_points' must be >= 1");
    sw.max_points = static_cast<std::size_t>(mp);
  }

  if (j.contains("axes")) {
    const auto& axes = j.at("axes");
    if (!axes.is_array()) constraint("'sweep.axes' must be an array");
    if (axes.size() > 2) constraint("'sweep.axes' supports at most 2 axes");
    for (const auto& axis : axes) {
      if (!axis.is_object()) constraint("each sweep axis must be an object");
      reject_unknown_keys(axis, {"param", "values"}, "sweep axis");
      if (!axis.contains("param") || !axis.contains("values"))
        constraint("each sweep axis needs 'param' and 'values'");
      SweepAxis ax;
      ax.param = string_at(axis, "param");
      if (!is_sweep_param(ax.param))
        constraint("'" + ax.param + "' is not a sweepable parameter");
      const auto& vals = axis.at("values");
      if (!vals.is_array() || vals.empty())
        constraint("axis '" + ax.param + "' needs a non-empty 'values' array");
      for (const auto& v : vals) {
        if (!v.is_number()) constraint("axis '" + ax.param + "' values must be numbers");
        const double d = v.get<double>();
        if (!std::isfinite(d)) constraint("axis '" + ax.param + "' values must be finite");
        ax.values.push_back(d);
      }
      sw.axes.push_back(std::move(ax));
    }
  }

  std::size_t total = 1;
  for (const auto& ax : sw.axes) total *= ax.values.size();
  if (total > sw.max_points)
    constraint("sweep would evaluate " + std::to_string(total) + " points, above max_points " +
               std::to_string(sw.max_points));
  return sw;
}

}  // namespace

Config config_from_json(const json& j) {
  if (!j.is_object()) constraint("config root must be a JSON object");
  reject_unknown_keys(j,
                      {"n", "e0", "m", "a", "g", "production", "delta", "a_coef", "t_max",
                       "conv_tol", "a_blowup", "alpha", "p_tot", "sweep"},
                      "config");
  for (const char* key : {"n", "e0", "m", "a", "g"})
    if (!j.contains(key)) constraint(std::string("missing required key '") + key + "'");
  if (!j.contains("production")) constraint("missing required key 'production'");

  Config cfg;
  cfg.game.n = number_at(j, "n");
  cfg.game.e0 = number_at(j, "e0");
  cfg.game.m = number_at(j, "m");
  cfg.game.a = number_at(j, "a");
  cfg.game.g = number_at(j, "g");
  cfg.game.production = parse_production(j.at("production"));

  cfg.delta = number_or(j, "delta", cfg.delta);
  cfg.a_coef = number_or(j, "a_coef", cfg.a_coef);
  cfg.t_max = integer_or(j, "t_max", cfg.t_max);
  cfg.conv_tol = number_or(j, "conv_tol", cfg.conv_tol);
  cfg.a_blowup = number_or(j, "a_blowup", cfg.a_blowup);
  cfg.alpha = number_or(j, "alpha", cfg.alpha);
  cfg.p_tot = number_or(j, "p_tot", cfg.p_tot);

  if (j.contains("sweep")) {
    cfg.sweep = parse_sweep(j.at("sweep"));
    cfg.has_sweep = true;
  }

  // Full validation through the library checks; re-branded as config errors.
  try {
    validate(cfg.dyn_params());
    validate(cfg.identity_params());
  } catch (const error& e) {
    constraint(e.what());
  }
  cfg.no_commitment_warning = cfg.game.e0 >= 1.0 / cfg.game.g;
  return cfg;
}

json load_config_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::config_missing_file, "cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw error(errc::config_parse_error, std::string("config is not valid JSON: ") + e.what());
  }
}

Config parse_config(const std::string& path) { return config_from_json(load_config_json(path)); }

ordered_json resolved_config_json(const Config& cfg) {
  ordered_json j;
  j["n"] = cfg.game.n;
  j["e0"] = cfg.game.e0;
  j["m"] = cfg.game.m;
  j["a"] = cfg.game.a;
  j["g"] = cfg.game.g;
  j["production"] = {{"family", family_name(cfg.game.production.family)},
                     {"beta", cfg.game.production.beta},
                     {"kappa", cfg.game.production.kappa}};
  j["delta"] = cfg.delta;
  j["a_coef"] = cfg.a_coef;
  j["t_max"] = cfg.t_max;
  j["conv_tol"] = cfg.conv_tol;
  j["a_blowup"] = cfg.a_blowup;
  j["alpha"] = cfg.alpha;
  j["p_tot"] = cfg.p_tot;
  if (cfg.has_sweep) {
    ordered_json sw;
    sw["target"] = sweep_target_name(cfg.sweep.target);
    sw["axes"] = ordered_json::array();
    for (const auto& ax : cfg.sweep.axes)
      sw["axes"].push_back({{"param", ax.param}, {"values", ax.values}});
    sw["max_points"] = cfg.sweep.max_points;
    sw["format"] = output_format_name(cfg.sweep.format);
    sw["output"] = cfg.sweep.output;
    j["sweep"] = std::move(sw);
  }
  return j;
}

void apply_override(json& j, const std::string& key_eq_value) {
  const auto eq = key_eq_value.find('=');
  if (eq == std::string::npos || eq == 0)
    constraint("--set expects key=value; got '" + key_eq_value + "'");
  const std::string key = key_eq_value.substr(0, eq);
  const std::string raw = key_eq_value.substr(eq + 1);

  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // bare strings (e.g. production.family=log)
  }

  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? dot : dot - start);
    if (part.empty()) constraint("--set key has an empty path segment: '" + key + "'");
    if (dot == std::string::npos) {
      (*node)[part] = std::move(value);
      return;
    }
    node = &(*node)[part];
    if (!node->is_object() && !node->is_null()) constraint("--set cannot descend into '" + part + "'");
    start = dot + 1;
  }
}

bool is_sweep_param(const std::string& name) {
  static const std::set<std::string> params = {"n",     "e0",    "m",     "a",     "g",    "beta",
                                              "kappa", "delta", "a_coef", "alpha", "p_tot"};
  return params.count(name) > 0;
}

void set_config_param(Config& cfg, const std::string& name, double value) {
  if (name == "n") cfg.game.n = value;
  else if (name == "e0") cfg.game.e0 = value;
  else if (name == "m") cfg.game.m = value;
  else if (name == "a") cfg.game.a = value;
  else if (name == "g") cfg.game.g = value;
  else if (name == "beta") cfg.game.production.beta = value;
  else if (name == "kappa") cfg.game.production.kappa = value;
  else if (name == "delta") cfg.delta = value;
  else if (name == "a_coef") cfg.a_coef = value;
  else if (name == "alpha") cfg.alpha = value;
  else if (name == "p_tot") cfg.p_tot = value;
  else throw_domain("'" + name + "' is not a sweepable parameter");
}

}  // namespace franchise
