#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "franchise/dynamics.hpp"
#include "franchise/game.hpp"
#include "franchise/identity.hpp"

namespace franchise {

struct SweepAxis {
  std::string param;
  std::vector<double> values;
};

enum class SweepTarget { Solve, Identity, Classify };
enum class OutputFormat { Csv, Json, PlotData };

const char* sweep_target_name(SweepTarget t);
const char* output_format_name(OutputFormat f);

struct SweepSettings {
  SweepTarget target = SweepTarget::Solve;
  std::vector<SweepAxis> axes;  // at most two
  std::size_t max_points = 1000000;
  OutputFormat format = OutputFormat::Csv;
  std::string output;  // empty = stdout (PlotData requires a path prefix)
};

// Fully resolved run configuration: required game parameters plus defaulted
// dynamics/identity settings and an optional sweep block.
struct Config {
  GameParams game;
  double delta = 0.2;
  double a_coef = 0.5;
  long t_max = 100000;
  double conv_tol = 1e-10;
  double a_blowup = 1e9;
  double alpha = 0.5;
  double p_tot = 1.0;
  SweepSettings sweep;
  bool has_sweep = false;
  bool no_commitment_warning = false;  // e0 >= 1/g: accepted, but flagged

  DynParams dyn_params() const;
  IdentityParams identity_params() const;
};

// File variant distinguishes missing-file / parse / constraint errors by code.
Config parse_config(const std::string& path);
nlohmann::json load_config_json(const std::string& path);
Config config_from_json(const nlohmann::json& j);

// Resolved configuration as JSON; config_from_json of the result reproduces
// every field exactly (doubles serialize losslessly).
nlohmann::ordered_json resolved_config_json(const Config& cfg);

// --set key=value: dotted keys navigate into nested objects; the value is
// parsed as JSON when possible and kept as a raw string otherwise.
void apply_override(nlohmann::json& j, const std::string& key_eq_value);

// Numeric parameters a sweep axis may range over.
bool is_sweep_param(const std::string& name);
void set_config_param(Config& cfg, const std::string& name, double value);

}  // namespace franchise
