// sfctl: closed-loop simulation runner for switched adaptive backstepping
// controllers on strict-feedback plants.

#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "sfctl/config.hpp"
#include "sfctl/errors.hpp"
#include "sfctl/log.hpp"
#include "sfctl/sim.hpp"

namespace fs = std::filesystem;
using namespace sfctl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

struct Overrides {
  double dt = 0.0, horizon = 0.0;
  bool has_dt = false, has_horizon = false;

  void apply(RawConfig& raw) const {
    if (has_dt) raw.set("sim", "dt", format_double(dt));
    if (has_horizon) raw.set("sim", "horizon", format_double(horizon));
  }
};

ExperimentConfig load_with_overrides(const std::string& path,
                                     const Overrides& ov) {
  RawConfig raw = parse_raw(read_file(path));
  ov.apply(raw);
  return resolve(raw, stem_of(path));
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

// Writes trajectory and metrics; returns false if the run diverged.
bool emit_run(const fs::path& dir, const ExperimentConfig& cfg,
              const RunResult& result) {
  std::ostringstream csv, met;
  write_csv(csv, cfg, result.log);
  write_metrics(met, cfg, result);
  fs::path traj = dir / (cfg.stem + ".csv");
  fs::path metrics = dir / (cfg.stem + "_metrics.txt");
  write_file(traj, csv.str());
  write_file(metrics, met.str());
  std::ostringstream line;
  line << cfg.stem << ": "
       << (result.status == RunStatus::Ok ? "ok" : "DIVERGED")
       << " rms=" << format_double(result.metrics.rms_tracking_error)
       << " settle=" << format_double(result.metrics.settle_time)
       << " max|z|=" << format_double(result.metrics.max_abs_prediction_error)
       << " -> " << traj.string();
  log_info(line.str());
  return result.status == RunStatus::Ok;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-')
               ? c
               : '_';
  return out;
}

int cmd_run(const std::string& path, const std::string& out_dir,
            const Overrides& ov) {
  ExperimentConfig cfg = load_with_overrides(path, ov);
  fs::create_directories(out_dir);
  RunResult result = run_experiment(cfg);
  bool ok = emit_run(out_dir, cfg, result);
  if (!ok) {
    log_error("run diverged: " + result.divergence_info);
    return kExitDiverged;
  }
  return kExitOk;
}

int cmd_compare(const std::vector<std::string>& paths,
                const std::string& out_dir, const Overrides& ov) {
  std::vector<ExperimentConfig> cfgs;
  for (const auto& p : paths) cfgs.push_back(load_with_overrides(p, ov));
  fs::create_directories(out_dir);
  CompareResult cr = compare_runs(cfgs);
  bool all_ok = true;
  for (size_t i = 0; i < cr.runs.size(); ++i)
    all_ok = emit_run(out_dir, cfgs[i], cr.runs[i]) && all_ok;
  std::ostringstream table;
  write_compare(table, cr);
  fs::path out = fs::path(out_dir) / "compare.txt";
  write_file(out, table.str());
  log_info("comparison table -> " + out.string());
  return all_ok ? kExitOk : kExitDiverged;
}

int cmd_sweep(const std::string& path, const std::string& param,
              const std::string& values, const std::string& out_dir,
              const Overrides& ov) {
  auto dot = param.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == param.size())
    throw ConfigError("--param must look like section.key, got '" + param + "'");
  std::string section = param.substr(0, dot), key = param.substr(dot + 1);

  std::vector<std::string> vals;
  std::stringstream ss(values);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // trim
    size_t b = item.find_first_not_of(" \t");
    size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    vals.push_back(item.substr(b, e - b + 1));
  }
  if (vals.empty()) throw ConfigError("--values is empty");

  std::string text = read_file(path);
  std::string base_stem = stem_of(path);
  fs::create_directories(out_dir);

  std::ostringstream summary;
  summary << "# sweep of " << param << " over " << values << "\n";
  summary << "value  rms_tracking_error  max_abs_error  settle_time  "
             "control_energy  switch_activity  max_abs_prediction_error  "
             "status\n";
  bool all_ok = true;
  for (const auto& v : vals) {
    RawConfig raw = parse_raw(text);
    ov.apply(raw);
    raw.set(section, key, v);
    raw.set("output", "stem", base_stem + "_" + sanitize(v));
    ExperimentConfig cfg = resolve(raw, base_stem);
    RunResult result = run_experiment(cfg);
    all_ok = emit_run(out_dir, cfg, result) && all_ok;
    const RunMetrics& met = result.metrics;
    summary << v << "  " << format_double(met.rms_tracking_error) << "  "
            << format_double(met.max_abs_error) << "  "
            << format_double(met.settle_time) << "  "
            << format_double(met.control_energy) << "  "
            << format_double(met.switch_activity) << "  "
            << format_double(met.max_abs_prediction_error) << "  "
            << (result.status == RunStatus::Ok ? "ok" : "diverged") << "\n";
  }
  fs::path out = fs::path(out_dir) / (base_stem + "_sweep.txt");
  write_file(out, summary.str());
  log_info("sweep summary -> " + out.string());
  return all_ok ? kExitOk : kExitDiverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-loop lab for switched adaptive backstepping controllers"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  Overrides ov;
  long seed = 0;  // reserved: all runs are deterministic today
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  auto* dt_opt = app.add_option("--dt", ov.dt, "override sim.dt");
  auto* hz_opt = app.add_option("--horizon", ov.horizon, "override sim.horizon");
  app.add_option("--seed", seed,
                 "reserved for future stochastic features; ignored");

  std::string run_cfg;
  auto* run = app.add_subcommand("run", "simulate one configuration");
  run->fallthrough();
  run->add_option("config", run_cfg, "config file")->required();

  std::vector<std::string> cmp_cfgs;
  auto* cmp = app.add_subcommand("compare",
                                 "run several configurations on one scenario");
  cmp->fallthrough();
  cmp->add_option("configs", cmp_cfgs, "config files (at least two)")
      ->required()
      ->expected(-2);

  std::string sweep_cfg, sweep_param, sweep_values;
  auto* swp = app.add_subcommand("sweep", "vary one key across runs");
  swp->fallthrough();
  swp->add_option("config", sweep_cfg, "config file")->required();
  swp->add_option("--param", sweep_param, "key to vary, as section.key")
      ->required();
  swp->add_option("--values", sweep_values, "comma-separated values")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  ov.has_dt = dt_opt->count() > 0;
  ov.has_horizon = hz_opt->count() > 0;

  try {
    if (run->parsed()) return cmd_run(run_cfg, out_dir, ov);
    if (cmp->parsed()) return cmd_compare(cmp_cfgs, out_dir, ov);
    if (swp->parsed())
      return cmd_sweep(sweep_cfg, sweep_param, sweep_values, out_dir, ov);
  } catch (const ConfigError& e) {
    log_error(std::string("config error:\n") + e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    log_error(std::string("error: ") + e.what());
    return kExitConfig;
  }
  return kExitOk;
}
