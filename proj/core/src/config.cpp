#include "sfctl/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sfctl/errors.hpp"
#include "sfctl/expr.hpp"

namespace sfctl {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void RawConfig::set(const std::string& section, const std::string& key,
                    const std::string& value) {
  for (auto& sec : sections) {
    if (sec.name != section) continue;
    for (auto& e : sec.entries) {
      if (e.key == key) {
        e.value = value;
        return;
      }
    }
    sec.entries.push_back({key, value, 0});
    return;
  }
  sections.push_back({section, 0, {{key, value, 0}}});
}

const std::string* RawConfig::find(const std::string& section,
                                   const std::string& key) const {
  for (const auto& sec : sections) {
    if (sec.name != section) continue;
    for (const auto& e : sec.entries)
      if (e.key == key) return &e.value;
  }
  return nullptr;
}

RawConfig parse_raw(const std::string& text) {
  RawConfig raw;
  std::vector<std::string> errors;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  RawConfig::Section* cur = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::string s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        errors.push_back("line " + std::to_string(lineno) +
                         ": malformed section header");
        continue;
      }
      std::string name = trim(std::string_view(s).substr(1, s.size() - 2));
      raw.sections.push_back({name, lineno, {}});
      cur = &raw.sections.back();
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) +
                       ": expected 'key = value'");
      continue;
    }
    if (!cur) {
      errors.push_back("line " + std::to_string(lineno) +
                       ": key outside any [section]");
      continue;
    }
    std::string key = trim(std::string_view(s).substr(0, eq));
    std::string value = trim(std::string_view(s).substr(eq + 1));
    if (key.empty()) {
      errors.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    for (const auto& e : cur->entries)
      if (e.key == key)
        errors.push_back("line " + std::to_string(lineno) + ": duplicate key '" +
                         key + "' in [" + cur->name + "]");
    cur->entries.push_back({key, value, lineno});
  }
  if (!errors.empty()) {
    std::string all;
    for (const auto& e : errors) all += e + "\n";
    throw ConfigError(all);
  }
  return raw;
}

namespace {

// Tracks which raw entries were consumed and accumulates all complaints.
struct Resolver {
  const RawConfig& raw;
  ExperimentConfig& cfg;
  std::vector<std::string> errors;
  std::vector<std::vector<bool>> used;

  Resolver(const RawConfig& r, ExperimentConfig& c) : raw(r), cfg(c) {
    used.resize(r.sections.size());
    for (size_t i = 0; i < r.sections.size(); ++i)
      used[i].assign(r.sections[i].entries.size(), false);
  }

  void err(const std::string& msg) { errors.push_back(msg); }

  const RawConfig::Entry* take(const std::string& section,
                               const std::string& key) {
    const RawConfig::Entry* found = nullptr;
    for (size_t i = 0; i < raw.sections.size(); ++i) {
      if (raw.sections[i].name != section) continue;
      for (size_t j = 0; j < raw.sections[i].entries.size(); ++j) {
        if (raw.sections[i].entries[j].key == key) {
          used[i][j] = true;
          found = &raw.sections[i].entries[j];
        }
      }
    }
    if (!found) cfg.defaulted.insert(section + "." + key);
    return found;
  }

  bool to_double(const RawConfig::Entry& e, double* out) {
    const char* b = e.value.c_str();
    char* end = nullptr;
    double v = std::strtod(b, &end);
    if (end == b || *end != '\0' || !std::isfinite(v)) {
      err("line " + std::to_string(e.line) + ": '" + e.value +
          "' is not a number");
      return false;
    }
    *out = v;
    return true;
  }

  double num(const std::string& sec, const std::string& key, double dflt) {
    const auto* e = take(sec, key);
    if (!e) return dflt;
    double v = dflt;
    to_double(*e, &v);
    return v;
  }

  int integer(const std::string& sec, const std::string& key, int dflt) {
    double v = num(sec, key, dflt);
    if (v != std::floor(v))
      err(sec + "." + key + " must be an integer");
    return static_cast<int>(v);
  }

  std::string word(const std::string& sec, const std::string& key,
                   const std::string& dflt,
                   std::initializer_list<const char*> allowed) {
    const auto* e = take(sec, key);
    std::string v = e ? e->value : dflt;
    bool ok = false;
    for (const char* a : allowed)
      if (v == a) ok = true;
    if (!ok) {
      std::string opts;
      for (const char* a : allowed) opts += std::string(opts.empty() ? "" : ", ") + a;
      err((e ? "line " + std::to_string(e->line) + ": " : "") + sec + "." + key +
          " must be one of: " + opts);
      return dflt;
    }
    return v;
  }

  bool flag(const std::string& sec, const std::string& key, bool dflt) {
    const auto* e = take(sec, key);
    if (!e) return dflt;
    if (e->value == "on" || e->value == "true") return true;
    if (e->value == "off" || e->value == "false") return false;
    err("line " + std::to_string(e->line) + ": " + sec + "." + key +
        " must be on/off or true/false");
    return dflt;
  }

  std::string text(const std::string& sec, const std::string& key,
                   const std::string& dflt) {
    const auto* e = take(sec, key);
    return e ? e->value : dflt;
  }

  // Comma list of doubles; a single value broadcasts to n entries.
  std::vector<double> list(const std::string& sec, const std::string& key,
                           std::vector<double> dflt, int n) {
    const auto* e = take(sec, key);
    if (!e) return dflt;
    std::vector<double> out;
    std::stringstream ss(e->value);
    std::string item;
    bool bad = false;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      const char* b = item.c_str();
      char* end = nullptr;
      double v = std::strtod(b, &end);
      if (item.empty() || end == b || *end != '\0' || !std::isfinite(v)) {
        bad = true;
        break;
      }
      out.push_back(v);
    }
    if (bad || out.empty()) {
      err("line " + std::to_string(e->line) + ": " + sec + "." + key +
          " must be a comma-separated list of numbers");
      return dflt;
    }
    if (out.size() == 1) out.assign(static_cast<size_t>(n), out[0]);
    if (out.size() != static_cast<size_t>(n)) {
      err("line " + std::to_string(e->line) + ": " + sec + "." + key + " needs " +
          std::to_string(n) + " entries (or one to broadcast), got " +
          std::to_string(out.size()));
      out.resize(static_cast<size_t>(n), out.empty() ? 0.0 : out[0]);
    }
    return out;
  }

  void require_positive(const std::string& name, std::span<const double> v) {
    for (double x : v)
      if (!(x > 0.0)) {
        err(name + " entries must be positive");
        return;
      }
  }

  void finish_unknown_keys() {
    static const char* known_sections[] = {"plant",  "reference", "controller",
                                           "rbf",    "switch",    "sim",
                                           "ablation", "output"};
    for (size_t i = 0; i < raw.sections.size(); ++i) {
      const auto& sec = raw.sections[i];
      bool known = false;
      for (const char* s : known_sections)
        if (sec.name == s) known = true;
      if (!known) {
        err("line " + std::to_string(sec.line) + ": unknown section [" +
            sec.name + "]");
        continue;
      }
      for (size_t j = 0; j < sec.entries.size(); ++j)
        if (!used[i][j])
          err("line " + std::to_string(sec.entries[j].line) +
              ": unknown key '" + sec.entries[j].key + "' in [" + sec.name +
              "]");
    }
  }
};

}  // namespace

ExperimentConfig resolve(const RawConfig& raw, const std::string& default_stem) {
  ExperimentConfig cfg;
  Resolver R(raw, cfg);

  // plant first; everything else sizes off the order
  cfg.plant_type = R.word("plant", "type", "pendulum", {"pendulum", "integrators"});
  cfg.order = R.integer("plant", "order", 2);
  if (cfg.plant_type == "pendulum" && cfg.order != 2)
    R.err("plant.order must be 2 for the pendulum");
  if (cfg.order < 1 || cfg.order > 8)
    R.err("plant.order must lie in [1, 8]");
  int n = std::clamp(cfg.order, 1, 8);
  cfg.order = n;

  cfg.gravity = R.num("plant", "gravity", 9.81);
  cfg.cart_mass = R.num("plant", "cart_mass", 1.0);
  cfg.pole_mass = R.num("plant", "pole_mass", 0.1);
  cfg.pole_length = R.num("plant", "pole_length", 0.5);
  if (cfg.plant_type == "pendulum" &&
      (!(cfg.gravity > 0) || !(cfg.cart_mass > 0) || !(cfg.pole_mass > 0) ||
       !(cfg.pole_length > 0)))
    R.err("pendulum parameters must be positive");
  cfg.disturbance = R.word("plant", "disturbance", "sine", {"none", "sine"});
  cfg.dist_amplitude = R.num("plant", "disturbance_amplitude", 0.1);
  cfg.dist_omega = R.num("plant", "disturbance_omega", 2.0);
  cfg.rho0.assign(static_cast<size_t>(n), 0.0);
  if (cfg.plant_type == "pendulum") cfg.rho0[0] = -0.1;
  for (int i = 0; i < n; ++i)
    cfg.rho0[static_cast<size_t>(i)] =
        R.num("plant", "rho" + std::to_string(i + 1) + "_0",
              cfg.rho0[static_cast<size_t>(i)]);

  cfg.ref_type = R.word("reference", "type", "sine", {"zero", "sine"});
  cfg.ref_amplitude = R.num("reference", "amplitude", 0.2);
  cfg.ref_omega = R.num("reference", "omega", 1.0);

  std::string vname = R.text("controller", "variant", "fnt-m1");
  if (auto v = ControllerVariant::from_name(vname)) {
    cfg.variant = *v;
  } else {
    int count = 0;
    const char* const* names = ControllerVariant::all_names(&count);
    std::string opts;
    for (int i = 0; i < count; ++i)
      opts += std::string(i ? ", " : "") + names[i];
    R.err("controller.variant '" + vname + "' unknown; expected one of: " + opts);
  }

  GainSet G = default_gains(n);
  auto L = [&](const char* key, std::vector<double>& dst) {
    dst = R.list("controller", key, dst, n);
    R.require_positive(std::string("controller.") + key, dst);
  };
  L("k", G.k);
  L("p", G.p);
  L("gamma", G.gamma);
  L("k1", G.k1);
  L("k2", G.k2);
  L("a", G.a);
  L("mu", G.mu);
  L("kappa", G.kappa);
  L("eta", G.eta);
  L("eta_d", G.eta_d);
  L("eta_N", G.eta_N);
  L("eta_dN", G.eta_dN);
  L("eta_theta", G.eta_theta);
  L("eta_thetaN", G.eta_thetaN);
  L("beta_h", G.beta_h);
  L("beta_z", G.beta_z);
  L("beta_1", G.beta_1);
  L("beta_2", G.beta_2);
  L("delta_1", G.delta_1);
  L("delta_2", G.delta_2);
  L("delta_3", G.delta_3);
  L("delta_1N", G.delta_1N);
  L("delta_2N", G.delta_2N);
  L("delta_3N", G.delta_3N);
  L("q_1", G.q_1);
  L("q_2", G.q_2);
  L("q_3", G.q_3);
  L("q_1N", G.q_1N);
  L("q_2N", G.q_2N);
  L("q_3N", G.q_3N);
  L("r_1", G.r_1);
  L("r_2", G.r_2);
  G.m = R.num("controller", "m", G.m);
  if (!(G.m > 0.5 && G.m < 1.0)) R.err("controller.m must lie in (1/2, 1)");
  G.r = R.num("controller", "r", G.r);
  if (!(G.r > 1.0)) R.err("controller.r must be greater than 1");
  G.filter_omega = R.num("controller", "filter_omega", G.filter_omega);
  if (!(G.filter_omega > 0)) R.err("controller.filter_omega must be positive");
  G.g_floor = R.num("controller", "g_floor", G.g_floor);
  if (!(G.g_floor > 0)) R.err("controller.g_floor must be positive");
  cfg.gains = G;

  cfg.H_exprs.assign(static_cast<size_t>(n), "1");
  for (int i = 0; i < n; ++i) {
    std::string key = "H" + std::to_string(i + 1);
    cfg.H_exprs[static_cast<size_t>(i)] =
        R.text("controller", key, cfg.H_exprs[static_cast<size_t>(i)]);
    try {
      Expr::parse(cfg.H_exprs[static_cast<size_t>(i)], i + 1);
    } catch (const std::invalid_argument& e) {
      R.err("controller." + key + ": " + e.what());
    }
  }

  cfg.nodes_per_dim = R.integer("rbf", "nodes_per_dim", 11);
  if (cfg.nodes_per_dim < 1) R.err("rbf.nodes_per_dim must be at least 1");
  cfg.box_min = R.num("rbf", "box_min", -0.25);
  cfg.box_max = R.num("rbf", "box_max", 0.25);
  if (!(cfg.box_min < cfg.box_max)) R.err("rbf.box_min must be below rbf.box_max");
  cfg.width = R.num("rbf", "width", 2.0);
  if (!(cfg.width > 0)) R.err("rbf.width must be positive");

  cfg.form = R.word("switch", "form", "squared", {"squared", "absolute"}) ==
                     "absolute"
                 ? SwitchForm::Absolute
                 : SwitchForm::Squared;
  cfg.c1 = R.list("switch", "c1", std::vector<double>(static_cast<size_t>(n), 0.25), n);
  cfg.c2 = R.list("switch", "c2", std::vector<double>(static_cast<size_t>(n), 0.35), n);
  R.require_positive("switch.c1", cfg.c1);
  for (int i = 0; i < n; ++i)
    if (!(cfg.c1[static_cast<size_t>(i)] < cfg.c2[static_cast<size_t>(i)]))
      R.err("switch.c1 must be strictly below switch.c2 entrywise");

  cfg.dt = R.num("sim", "dt", 1e-3);
  if (!(cfg.dt > 0)) R.err("sim.dt must be positive");
  cfg.horizon = R.num("sim", "horizon", 20.0);
  if (!(cfg.horizon >= cfg.dt)) R.err("sim.horizon must be at least one step");
  cfg.decimation = R.integer("sim", "decimation", 10);
  if (cfg.decimation < 1) R.err("sim.decimation must be at least 1");
  cfg.window_start = R.num("sim", "window_start", 5.0);
  if (!(cfg.window_start >= 0)) R.err("sim.window_start must be nonnegative");
  cfg.settle_band = R.num("sim", "settle_band", 0.05);
  if (!(cfg.settle_band > 0)) R.err("sim.settle_band must be positive");

  cfg.composite = R.flag("ablation", "composite", true);
  cfg.switching_frozen_on = R.flag("ablation", "switching_frozen_on", false);

  cfg.stem = R.text("output", "stem", default_stem);
  if (cfg.stem.empty()) cfg.stem = "run";

  R.finish_unknown_keys();
  if (!R.errors.empty()) {
    std::string all;
    for (const auto& e : R.errors) all += e + "\n";
    throw ConfigError(all);
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (auto pos = stem.find_last_of('/'); pos != std::string::npos)
    stem.erase(0, pos + 1);
  if (auto pos = stem.rfind('.'); pos != std::string::npos && pos > 0)
    stem.erase(pos);
  return resolve(parse_raw(ss.str()), stem);
}

namespace {

struct EchoWriter {
  const ExperimentConfig& cfg;
  bool mark;
  std::vector<std::string> lines;
  std::string section;

  void sec(const std::string& s) {
    section = s;
    lines.push_back("[" + s + "]");
  }
  void emit(const std::string& key, const std::string& value) {
    std::string line = key + " = " + value;
    if (mark && cfg.defaulted.count(section + "." + key)) line += "  # default";
    lines.push_back(line);
  }
  void emit(const std::string& key, double v) { emit(key, format_double(v)); }
  void emit(const std::string& key, int v) { emit(key, std::to_string(v)); }
  void emit(const std::string& key, std::span<const double> v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i)
      s += (i ? ", " : "") + format_double(v[i]);
    emit(key, s);
  }
};

}  // namespace

std::vector<std::string> render_echo(const ExperimentConfig& cfg,
                                     bool mark_defaults) {
  EchoWriter w{cfg, mark_defaults, {}, ""};
  const GainSet& G = cfg.gains;
  int n = cfg.order;

  w.sec("plant");
  w.emit("type", cfg.plant_type);
  w.emit("order", n);
  w.emit("gravity", cfg.gravity);
  w.emit("cart_mass", cfg.cart_mass);
  w.emit("pole_mass", cfg.pole_mass);
  w.emit("pole_length", cfg.pole_length);
  w.emit("disturbance", cfg.disturbance);
  w.emit("disturbance_amplitude", cfg.dist_amplitude);
  w.emit("disturbance_omega", cfg.dist_omega);
  for (int i = 0; i < n; ++i)
    w.emit("rho" + std::to_string(i + 1) + "_0", cfg.rho0[static_cast<size_t>(i)]);

  w.sec("reference");
  w.emit("type", cfg.ref_type);
  w.emit("amplitude", cfg.ref_amplitude);
  w.emit("omega", cfg.ref_omega);

  w.sec("controller");
  w.emit("variant", cfg.variant.name());
  w.emit("k", G.k);
  w.emit("p", G.p);
  w.emit("gamma", G.gamma);
  w.emit("k1", G.k1);
  w.emit("k2", G.k2);
  w.emit("m", G.m);
  w.emit("r", G.r);
  w.emit("a", G.a);
  w.emit("mu", G.mu);
  w.emit("kappa", G.kappa);
  w.emit("eta", G.eta);
  w.emit("eta_d", G.eta_d);
  w.emit("eta_N", G.eta_N);
  w.emit("eta_dN", G.eta_dN);
  w.emit("eta_theta", G.eta_theta);
  w.emit("eta_thetaN", G.eta_thetaN);
  w.emit("beta_h", G.beta_h);
  w.emit("beta_z", G.beta_z);
  w.emit("beta_1", G.beta_1);
  w.emit("beta_2", G.beta_2);
  w.emit("delta_1", G.delta_1);
  w.emit("delta_2", G.delta_2);
  w.emit("delta_3", G.delta_3);
  w.emit("delta_1N", G.delta_1N);
  w.emit("delta_2N", G.delta_2N);
  w.emit("delta_3N", G.delta_3N);
  w.emit("q_1", G.q_1);
  w.emit("q_2", G.q_2);
  w.emit("q_3", G.q_3);
  w.emit("q_1N", G.q_1N);
  w.emit("q_2N", G.q_2N);
  w.emit("q_3N", G.q_3N);
  w.emit("r_1", G.r_1);
  w.emit("r_2", G.r_2);
  for (int i = 0; i < n; ++i)
    w.emit("H" + std::to_string(i + 1), cfg.H_exprs[static_cast<size_t>(i)]);
  w.emit("filter_omega", G.filter_omega);
  w.emit("g_floor", G.g_floor);

  w.sec("rbf");
  w.emit("nodes_per_dim", cfg.nodes_per_dim);
  w.emit("box_min", cfg.box_min);
  w.emit("box_max", cfg.box_max);
  w.emit("width", cfg.width);

  w.sec("switch");
  w.emit("form", cfg.form == SwitchForm::Squared ? "squared" : "absolute");
  w.emit("c1", cfg.c1);
  w.emit("c2", cfg.c2);

  w.sec("sim");
  w.emit("dt", cfg.dt);
  w.emit("horizon", cfg.horizon);
  w.emit("decimation", cfg.decimation);
  w.emit("window_start", cfg.window_start);
  w.emit("settle_band", cfg.settle_band);

  w.sec("ablation");
  w.emit("composite", cfg.composite ? "on" : "off");
  w.emit("switching_frozen_on", cfg.switching_frozen_on ? "on" : "off");

  w.sec("output");
  w.emit("stem", cfg.stem);

  return w.lines;
}

}  // namespace sfctl
