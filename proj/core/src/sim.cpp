#include "sfctl/sim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sfctl/errors.hpp"
#include "sfctl/log.hpp"

namespace sfctl {

int TrajectoryLog::column(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

PlantModel make_plant(const ExperimentConfig& cfg) {
  std::function<double(double)> dist;
  if (cfg.disturbance == "sine") {
    double amp = cfg.dist_amplitude, om = cfg.dist_omega;
    dist = [amp, om](double t) { return amp * std::sin(om * t); };
  } else {
    dist = [](double) { return 0.0; };
  }
  if (cfg.plant_type == "pendulum") {
    PendulumParams p;
    p.gravity = cfg.gravity;
    p.cart_mass = cfg.cart_mass;
    p.pole_mass = cfg.pole_mass;
    p.pole_length = cfg.pole_length;
    return pendulum_model(p, std::move(dist));
  }
  PlantModel m = integrator_chain(cfg.order);
  m.d.back() = std::move(dist);
  return m;
}

Reference make_reference(const ExperimentConfig& cfg) {
  Reference r;
  r.type = cfg.ref_type == "zero" ? Reference::Type::Zero : Reference::Type::Sine;
  r.amplitude = cfg.ref_amplitude;
  r.omega = cfg.ref_omega;
  return r;
}

Controller make_controller(const ExperimentConfig& cfg, const PlantModel& plant) {
  Controller C;
  C.variant = cfg.variant;
  C.gains = cfg.gains;
  int n = cfg.order;
  C.bounds.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    C.bounds.push_back({cfg.c1[static_cast<size_t>(i)],
                        cfg.c2[static_cast<size_t>(i)], n, cfg.form});
  C.nets.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    C.nets.push_back(grid_network(i + 1, cfg.nodes_per_dim, cfg.box_min,
                                  cfg.box_max, cfg.width));
  C.H.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    C.H.push_back(Expr::parse(cfg.H_exprs[static_cast<size_t>(i)], i + 1));
  C.known = plant.known();
  C.switching_frozen_on = cfg.switching_frozen_on;
  C.composite = cfg.composite;
  return C;
}

namespace {

std::vector<std::string> log_columns(const StateLayout& L) {
  int n = L.n;
  std::vector<std::string> cols;
  cols.push_back("t");
  for (int i = 0; i < n; ++i) cols.push_back("rho" + std::to_string(i + 1));
  cols.push_back("zeta1");
  for (int i = 0; i < n; ++i) cols.push_back("lambda" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) cols.push_back("sigma" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) cols.push_back("w" + std::to_string(i + 1));
  cols.push_back("u");
  for (int s = 0; s < L.theta_count(); ++s) cols.push_back(L.theta_name(s));
  for (int i = 0; i < n; ++i) cols.push_back("tau_hat" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) cols.push_back("d_hat" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) cols.push_back("tau_hatN" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) cols.push_back("d_hatN" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) cols.push_back("z" + std::to_string(i + 1) + "N");
  return cols;
}

// Streaming metric state over the dense grid.
struct MetricAccum {
  double window_start, band, dt;
  double sum_sq = 0.0;
  long count = 0;
  double max_abs = 0.0, max_pred = 0.0;
  double last_violation = -1.0;
  double energy = 0.0, prev_u = 0.0;
  long sw_count = 0, total = 0;
  double min_est = 0.0;
  bool have_prev = false;

  void add(double t, const StepEval& ev, std::span<const double> x,
           const StateLayout& L) {
    double z1 = ev.zeta[0];
    ++total;
    if (ev.w[static_cast<size_t>(L.n - 1)] < 1.0) ++sw_count;
    if (std::abs(z1) > band) last_violation = t;
    if (t >= window_start - 1e-12) {
      sum_sq += z1 * z1;
      ++count;
      max_abs = std::max(max_abs, std::abs(z1));
      for (double zi : ev.z) max_pred = std::max(max_pred, std::abs(zi));
    }
    if (have_prev) energy += 0.5 * (prev_u * prev_u + ev.u * ev.u) * dt;
    prev_u = ev.u;
    have_prev = true;
    for (int i = L.theta(); i < L.size(); ++i)
      min_est = std::min(min_est, x[static_cast<size_t>(i)]);
  }

  RunMetrics finish(double t_end) const {
    RunMetrics m;
    m.rms_tracking_error = count > 0 ? std::sqrt(sum_sq / count) : 0.0;
    m.max_abs_error = max_abs;
    if (last_violation < 0.0) {
      m.settled = true;
      m.settle_time = 0.0;
    } else if (last_violation >= t_end - 0.5 * dt) {
      m.settled = false;
    } else {
      m.settled = true;
      m.settle_time = last_violation + dt;
    }
    m.control_energy = energy;
    m.switch_activity = total > 0 ? static_cast<double>(sw_count) / total : 0.0;
    m.max_abs_prediction_error = max_pred;
    m.min_estimate = min_est;
    return m;
  }
};

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
  PlantModel plant = make_plant(cfg);
  Reference ref = make_reference(cfg);
  Controller C = make_controller(cfg, plant);
  StateLayout L{cfg.order, C.variant.sharing, C.variant.neural};
  const int n = L.n;
  const double dt = cfg.dt;
  const long steps = std::lround(cfg.horizon / dt);

  std::vector<double> x = init_state(L, cfg.rho0);
  const size_t nx = x.size();
  std::vector<double> k1(nx), work(4 * nx);
  StepEval ev;
  ev.resize(n);

  auto rate = [&](double t, std::span<const double> xs, std::span<double> dxs) {
    controller_step(C, L, t, xs, ref, ev, dxs);
    plant_rhs(plant, xs.subspan(0, static_cast<size_t>(n)), ev.u, t,
              dxs.subspan(0, static_cast<size_t>(n)));
  };

  RunResult result;
  result.log.columns = log_columns(L);
  MetricAccum acc{cfg.window_start, cfg.settle_band, dt};

  auto log_row = [&](double t) {
    auto& d = result.log.data;
    d.push_back(t);
    for (int i = 0; i < n; ++i) d.push_back(x[static_cast<size_t>(L.rho() + i)]);
    d.push_back(ev.zeta[0]);
    for (int i = 0; i < n; ++i) d.push_back(ev.lambda[static_cast<size_t>(i)]);
    for (int i = 0; i < n; ++i) d.push_back(x[static_cast<size_t>(L.sigma() + i)]);
    for (int i = 0; i < n; ++i) d.push_back(ev.w[static_cast<size_t>(i)]);
    d.push_back(ev.u);
    for (int s = 0; s < L.theta_count(); ++s)
      d.push_back(x[static_cast<size_t>(L.theta() + s)]);
    for (int i = 0; i < n; ++i) d.push_back(x[static_cast<size_t>(L.tau() + i)]);
    for (int i = 0; i < n; ++i) d.push_back(x[static_cast<size_t>(L.d_hat() + i)]);
    for (int i = 0; i < n; ++i) d.push_back(x[static_cast<size_t>(L.tau_N() + i)]);
    for (int i = 0; i < n; ++i)
      d.push_back(x[static_cast<size_t>(L.d_hat_N() + i)]);
    for (int i = 0; i < n; ++i) d.push_back(ev.z[static_cast<size_t>(i)]);
  };

  double t_end = 0.0;
  try {
    for (long k = 0;; ++k) {
      double t = static_cast<double>(k) * dt;
      rate(t, x, k1);
      acc.add(t, ev, x, L);
      if (k % cfg.decimation == 0 || k == steps) log_row(t);
      t_end = t;
      if (k == steps) break;
      rk4_step_from_k1(rate, t, dt, x, k1, work);
      for (size_t i = 0; i < nx; ++i) {
        if (!std::isfinite(x[i]))
          throw DivergenceError(
              t + dt, L.component_name(static_cast<int>(i)) +
                          " became non-finite at t = " + format_double(t + dt));
      }
    }
    result.status = RunStatus::Ok;
  } catch (const DivergenceError& e) {
    result.status = RunStatus::Diverged;
    result.divergence_info = e.what();
    t_end = e.t;
    log_error(std::string("diverged: ") + e.what());
  }
  result.t_end = t_end;
  result.metrics = acc.finish(t_end);
  return result;
}

void write_csv(std::ostream& out, const ExperimentConfig& cfg,
               const TrajectoryLog& log) {
  for (const auto& line : render_echo(cfg, true)) out << "# " << line << "\n";
  for (size_t i = 0; i < log.columns.size(); ++i)
    out << (i ? "," : "") << log.columns[i];
  out << "\n";
  for (size_t r = 0; r < log.rows(); ++r) {
    auto row = log.row(r);
    for (size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
}

void write_metrics(std::ostream& out, const ExperimentConfig& cfg,
                   const RunResult& result) {
  for (const auto& line : render_echo(cfg, true)) out << "# " << line << "\n";
  const RunMetrics& m = result.metrics;
  out << "status = " << (result.status == RunStatus::Ok ? "ok" : "diverged")
      << "\n";
  if (!result.divergence_info.empty())
    out << "divergence_info = " << result.divergence_info << "\n";
  out << "t_end = " << format_double(result.t_end) << "\n";
  out << "rms_tracking_error = " << format_double(m.rms_tracking_error) << "\n";
  out << "max_abs_error = " << format_double(m.max_abs_error) << "\n";
  out << "settled = " << (m.settled ? "true" : "false") << "\n";
  out << "settle_time = " << format_double(m.settle_time) << "\n";
  out << "control_energy = " << format_double(m.control_energy) << "\n";
  out << "switch_activity = " << format_double(m.switch_activity) << "\n";
  out << "max_abs_prediction_error = "
      << format_double(m.max_abs_prediction_error) << "\n";
  out << "min_estimate = " << format_double(m.min_estimate) << "\n";
}

namespace {

std::string shared_signature(const ExperimentConfig& c) {
  std::string s = c.plant_type + "|" + std::to_string(c.order);
  for (double v :
       {c.gravity, c.cart_mass, c.pole_mass, c.pole_length, c.dist_amplitude,
        c.dist_omega, c.ref_amplitude, c.ref_omega})
    s += "|" + format_double(v);
  s += "|" + c.disturbance + "|" + c.ref_type;
  for (double v : c.rho0) s += "|" + format_double(v);
  return s;
}

}  // namespace

CompareResult compare_runs(std::span<const ExperimentConfig> cfgs) {
  if (cfgs.size() < 2)
    throw ConfigError("compare needs at least two configurations");
  std::string sig = shared_signature(cfgs[0]);
  for (size_t i = 1; i < cfgs.size(); ++i)
    if (shared_signature(cfgs[i]) != sig)
      throw ConfigError(
          "compared configurations must share the plant and reference "
          "sections (mismatch between '" +
          cfgs[0].stem + "' and '" + cfgs[i].stem + "')");
  CompareResult cr;
  for (const auto& cfg : cfgs) {
    log_info("running " + cfg.stem + " (" + cfg.variant.name() + ")");
    cr.names.push_back(cfg.stem);
    cr.runs.push_back(run_experiment(cfg));
  }
  return cr;
}

void write_compare(std::ostream& out, const CompareResult& cr) {
  struct Col {
    const char* name;
    double (*get)(const RunMetrics&);
  };
  static const Col cols[] = {
      {"rms_tracking_error", [](const RunMetrics& m) { return m.rms_tracking_error; }},
      {"max_abs_error", [](const RunMetrics& m) { return m.max_abs_error; }},
      {"settle_time", [](const RunMetrics& m) { return m.settle_time; }},
      {"control_energy", [](const RunMetrics& m) { return m.control_energy; }},
      {"switch_activity", [](const RunMetrics& m) { return m.switch_activity; }},
      {"max_abs_prediction_error",
       [](const RunMetrics& m) { return m.max_abs_prediction_error; }},
  };
  size_t name_w = 4;
  for (const auto& n : cr.names) name_w = std::max(name_w, n.size());
  out << "run";
  for (size_t p = 3; p < name_w + 2; ++p) out << ' ';
  for (const auto& c : cols) out << "  " << c.name;
  out << "  status\n";
  for (size_t i = 0; i < cr.runs.size(); ++i) {
    const auto& m = cr.runs[i].metrics;
    out << cr.names[i];
    for (size_t p = cr.names[i].size(); p < name_w + 2; ++p) out << ' ';
    for (const auto& c : cols) {
      std::string v = format_double(c.get(m));
      out << "  " << v;
      for (size_t p = v.size(); p < std::string(c.name).size(); ++p) out << ' ';
    }
    out << "  " << (cr.runs[i].status == RunStatus::Ok ? "ok" : "diverged")
        << "\n";
  }
  out << "\n";
  for (const auto& c : cols) {
    std::vector<size_t> order(cr.runs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return c.get(cr.runs[a].metrics) < c.get(cr.runs[b].metrics);
    });
    out << "ranking " << c.name << " (best first):";
    for (size_t i : order)
      out << " " << cr.names[i] << " (" << format_double(c.get(cr.runs[i].metrics))
          << ")";
    out << "\n";
  }
}

}  // namespace sfctl
