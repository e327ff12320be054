#pragma once

#include <set>
#include <string>
#include <vector>

#include "sfctl/gains.hpp"
#include "sfctl/math_util.hpp"
#include "sfctl/variant.hpp"

namespace sfctl {

// Parsed key=value text grouped into [sections]; line numbers kept for
// error reporting. Values stay raw strings until resolve().
struct RawConfig {
  struct Entry {
    std::string key, value;
    int line = 0;
  };
  struct Section {
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
  };
  std::vector<Section> sections;

  // Adds or replaces section.key; used by CLI overrides and sweeps.
  void set(const std::string& section, const std::string& key,
           const std::string& value);
  const std::string* find(const std::string& section,
                          const std::string& key) const;
};

// Throws ConfigError on malformed lines or duplicate keys.
RawConfig parse_raw(const std::string& text);

// Fully resolved experiment description.
struct ExperimentConfig {
  // [plant]
  std::string plant_type = "pendulum";  // pendulum | integrators
  int order = 2;
  double gravity = 9.81, cart_mass = 1.0, pole_mass = 0.1, pole_length = 0.5;
  std::string disturbance = "sine";  // none | sine, acts on the last row
  double dist_amplitude = 0.1, dist_omega = 2.0;
  std::vector<double> rho0;

  // [reference]
  std::string ref_type = "sine";  // zero | sine
  double ref_amplitude = 0.2, ref_omega = 1.0;

  // [controller]
  ControllerVariant variant;
  GainSet gains;
  std::vector<std::string> H_exprs;

  // [rbf]
  int nodes_per_dim = 11;
  double box_min = -0.25, box_max = 0.25, width = 2.0;

  // [switch]
  SwitchForm form = SwitchForm::Squared;
  std::vector<double> c1, c2;

  // [sim]
  double dt = 1e-3, horizon = 20.0;
  int decimation = 10;
  double window_start = 5.0, settle_band = 0.05;

  // [ablation]
  bool composite = true;
  bool switching_frozen_on = false;

  // [output]
  std::string stem = "run";

  std::set<std::string> defaulted;  // "section.key" for values not given
};

// Validates every key and value; collects all problems into one ConfigError.
ExperimentConfig resolve(const RawConfig& raw, const std::string& default_stem);

ExperimentConfig load_config_file(const std::string& path);

// Canonical text listing every resolved key. Reparses to an identical config;
// mark_defaults appends a trailing comment to values the user did not set.
std::vector<std::string> render_echo(const ExperimentConfig& cfg,
                                     bool mark_defaults);

// %.17g, enough digits to round-trip a double exactly.
std::string format_double(double v);

}  // namespace sfctl
