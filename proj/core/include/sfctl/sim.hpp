#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sfctl/config.hpp"
#include "sfctl/controller.hpp"
#include "sfctl/plant.hpp"

namespace sfctl {

// RK4 stage completion reusing an already-evaluated first stage; work needs
// 4 * x.size().
template <class F>
void rk4_step_from_k1(F&& f, double t, double dt, std::span<double> x,
                      std::span<const double> k1, std::span<double> work) {
  size_t n = x.size();
  auto k2 = work.subspan(0, n), k3 = work.subspan(n, n),
       k4 = work.subspan(2 * n, n), xt = work.subspan(3 * n, n);
  for (size_t i = 0; i < n; ++i) xt[i] = x[i] + 0.5 * dt * k1[i];
  f(t + 0.5 * dt, xt, k2);
  for (size_t i = 0; i < n; ++i) xt[i] = x[i] + 0.5 * dt * k2[i];
  f(t + 0.5 * dt, xt, k3);
  for (size_t i = 0; i < n; ++i) xt[i] = x[i] + dt * k3[i];
  f(t + dt, xt, k4);
  for (size_t i = 0; i < n; ++i)
    x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

// Classical fixed-step RK4 on dx/dt = f(t, x); work needs 5 * x.size().
template <class F>
void rk4_step(F&& f, double t, double dt, std::span<double> x,
              std::span<double> work) {
  size_t n = x.size();
  auto k1 = work.subspan(0, n);
  f(t, x, k1);
  rk4_step_from_k1(f, t, dt, x, k1, work.subspan(n));
}

struct RunMetrics {
  double rms_tracking_error = 0.0;  // rms of zeta1 over [window_start, horizon]
  double max_abs_error = 0.0;       // max |zeta1| over the window
  bool settled = false;
  double settle_time = std::numeric_limits<double>::infinity();
  double control_energy = 0.0;            // integral of u^2 dt, whole run
  double switch_activity = 0.0;           // fraction of samples with w_n < 1
  double max_abs_prediction_error = 0.0;  // max_i max |z_i| over the window
  double min_estimate = 0.0;              // most negative estimate seen
};

struct TrajectoryLog {
  std::vector<std::string> columns;
  std::vector<double> data;  // row-major

  size_t rows() const { return columns.empty() ? 0 : data.size() / columns.size(); }
  std::span<const double> row(size_t r) const {
    return {data.data() + r * columns.size(), columns.size()};
  }
  int column(const std::string& name) const;  // -1 if absent
  double at(size_t r, int col) const { return row(r)[static_cast<size_t>(col)]; }
};

enum class RunStatus { Ok, Diverged };

struct RunResult {
  RunStatus status = RunStatus::Ok;
  std::string divergence_info;
  double t_end = 0.0;
  TrajectoryLog log;
  RunMetrics metrics;
};

// Closed-loop assembly from a resolved config.
PlantModel make_plant(const ExperimentConfig& cfg);
Reference make_reference(const ExperimentConfig& cfg);
Controller make_controller(const ExperimentConfig& cfg, const PlantModel& plant);

// Integrates the coupled system; metrics accumulate on the dense grid, the
// log keeps every decimation-th sample. Divergence yields a partial result.
RunResult run_experiment(const ExperimentConfig& cfg);

// CSV with the resolved config echoed as '#' comment lines up front.
void write_csv(std::ostream& out, const ExperimentConfig& cfg,
               const TrajectoryLog& log);
void write_metrics(std::ostream& out, const ExperimentConfig& cfg,
                   const RunResult& result);

struct CompareResult {
  std::vector<std::string> names;
  std::vector<RunResult> runs;
};

// Runs each config; they must agree on plant and reference sections.
CompareResult compare_runs(std::span<const ExperimentConfig> cfgs);
void write_compare(std::ostream& out, const CompareResult& cr);

}  // namespace sfctl
