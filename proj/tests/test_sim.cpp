#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "sfctl/errors.hpp"
#include "sfctl/sim.hpp"

using namespace sfctl;

namespace {

ExperimentConfig pendulum_cfg(const char* variant, double horizon) {
  RawConfig raw;
  raw.set("controller", "variant", variant);
  raw.set("sim", "horizon", format_double(horizon));
  return resolve(raw, variant);
}

}  // namespace

TEST_CASE("rk4 integrates exp to fourth order") {
  auto f = [](double, std::span<const double> x, std::span<double> dx) {
    dx[0] = x[0];
  };
  auto err_at = [&](double dt) {
    std::vector<double> x{1.0}, work(5);
    long steps = std::lround(1.0 / dt);
    for (long k = 0; k < steps; ++k)
      rk4_step(f, static_cast<double>(k) * dt, dt, x, work);
    return std::abs(x[0] - std::exp(1.0));
  };
  double e1 = err_at(0.1), e2 = err_at(0.05);
  CHECK(e1 / e2 > 14.0);  // halving the step cuts the error ~16x
  CHECK(e1 / e2 < 18.0);
  CHECK(err_at(1e-3) < 1e-12);
}

TEST_CASE("rk4_step_from_k1 matches rk4_step given the same first stage") {
  auto f = [](double t, std::span<const double> x, std::span<double> dx) {
    dx[0] = std::cos(t) - 0.3 * x[0];
    dx[1] = x[0] - x[1] * x[1];
  };
  std::vector<double> xa{0.4, -0.2}, xb{0.4, -0.2};
  std::vector<double> work(10), k1(2), work4(8);
  rk4_step(f, 0.7, 0.01, xa, work);
  f(0.7, xb, k1);
  rk4_step_from_k1(f, 0.7, 0.01, xb, k1, work4);
  CHECK_EQ(xa[0], xb[0]);
  CHECK_EQ(xa[1], xb[1]);
}

TEST_CASE("a run at rest stays at rest") {
  RawConfig raw;
  raw.set("plant", "rho1_0", "0");
  raw.set("plant", "disturbance", "none");
  raw.set("reference", "type", "zero");
  raw.set("sim", "horizon", "2.0");
  auto cfg = resolve(raw, "rest");
  auto result = run_experiment(cfg);
  REQUIRE(result.status == RunStatus::Ok);
  CHECK_EQ(result.t_end, 2.0);
  CHECK_EQ(result.metrics.rms_tracking_error, 0.0);
  CHECK_EQ(result.metrics.max_abs_error, 0.0);
  CHECK(result.metrics.settled);
  CHECK_EQ(result.metrics.settle_time, 0.0);
  CHECK_EQ(result.metrics.control_energy, 0.0);
  CHECK_EQ(result.metrics.switch_activity, 0.0);
  CHECK_EQ(result.metrics.max_abs_prediction_error, 0.0);
  CHECK_EQ(result.metrics.min_estimate, 0.0);

  int u = result.log.column("u");
  REQUIRE(u >= 0);
  for (size_t r = 0; r < result.log.rows(); ++r)
    CHECK_EQ(result.log.at(r, u), 0.0);
}

TEST_CASE("log keeps every decimation-th sample plus the final one") {
  auto cfg = pendulum_cfg("fnt-m1", 2.0);
  auto result = run_experiment(cfg);
  REQUIRE(result.status == RunStatus::Ok);
  CHECK_EQ(result.log.rows(), 201u);
  CHECK_EQ(result.log.at(0, 0), 0.0);
  CHECK(result.log.at(1, 0) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(result.log.at(200, 0) == doctest::Approx(2.0).epsilon(1e-12));

  RawConfig raw;
  raw.set("sim", "horizon", "0.025");
  raw.set("sim", "decimation", "10");
  auto odd = run_experiment(resolve(raw, "odd"));
  // samples at k = 0, 10, 20 plus the final k = 25
  CHECK_EQ(odd.log.rows(), 4u);
  CHECK(odd.log.at(3, 0) == doctest::Approx(0.025).epsilon(1e-12));
}

TEST_CASE("column names cover the whole controller state") {
  auto result = run_experiment(pendulum_cfg("fnt-m1", 0.1));
  for (const char* name :
       {"t", "rho1", "rho2", "zeta1", "lambda1", "lambda2", "sigma1", "sigma2",
        "w1", "w2", "u", "L_hat1", "L_hat2", "tau_hat1", "tau_hat2", "d_hat1",
        "d_hat2", "tau_hatN1", "tau_hatN2", "d_hatN1", "d_hatN2", "z1N", "z2N"})
    CHECK(result.log.column(name) >= 0);
  CHECK_EQ(result.log.columns.size(), 23u);

  auto shared = run_experiment(pendulum_cfg("fnt-m3s", 0.1));
  CHECK(shared.log.column("N_hat") >= 0);
  CHECK_EQ(shared.log.column("L_hat1"), -1);
  CHECK_EQ(shared.log.columns.size(), 22u);
}

TEST_CASE("identical configs give byte-identical csv") {
  auto cfg = pendulum_cfg("fxt-m4", 2.0);
  std::ostringstream a, b;
  auto ra = run_experiment(cfg);
  auto rb = run_experiment(cfg);
  write_csv(a, cfg, ra.log);
  write_csv(b, cfg, rb.log);
  CHECK_EQ(a.str(), b.str());
  CHECK(a.str().find("# [plant]") != std::string::npos);
  CHECK(a.str().find("# default") != std::string::npos);
}

TEST_CASE("divergence yields a partial result and an explanation") {
  // the gain floor is crossed immediately at a large initial angle
  RawConfig raw;
  raw.set("plant", "rho1_0", "1.5");
  raw.set("controller", "g_floor", "0.2");
  auto cfg = resolve(raw, "div");
  auto result = run_experiment(cfg);
  CHECK(result.status == RunStatus::Diverged);
  CHECK_EQ(result.t_end, 0.0);
  CHECK(result.divergence_info.find("g2") != std::string::npos);

  std::ostringstream os;
  write_metrics(os, cfg, result);
  CHECK(os.str().find("status = diverged") != std::string::npos);
  CHECK(os.str().find("divergence_info") != std::string::npos);
}

TEST_CASE("non-finite states are caught and named") {
  RawConfig raw;
  raw.set("plant", "type", "integrators");
  raw.set("plant", "disturbance_amplitude", "1e308");
  raw.set("sim", "horizon", "1.0");
  auto cfg = resolve(raw, "blow");
  auto result = run_experiment(cfg);
  CHECK(result.status == RunStatus::Diverged);
  CHECK(result.log.rows() >= 1u);
  CHECK(result.divergence_info.find("non-finite") != std::string::npos);
}

TEST_CASE("metrics window starts at window_start") {
  // a horizon shorter than the window leaves the window empty
  RawConfig raw;
  raw.set("sim", "horizon", "2.0");
  raw.set("sim", "window_start", "5.0");
  auto cfg = resolve(raw, "w");
  auto result = run_experiment(cfg);
  CHECK_EQ(result.metrics.rms_tracking_error, 0.0);
  CHECK_EQ(result.metrics.max_abs_error, 0.0);
}

TEST_CASE("nominal pendulum run settles and tracks") {
  auto result = run_experiment(pendulum_cfg("fnt-m1", 20.0));
  REQUIRE(result.status == RunStatus::Ok);
  CHECK(result.metrics.settled);
  CHECK(result.metrics.settle_time > 0.0);
  CHECK(result.metrics.settle_time < 2.0);
  CHECK(result.metrics.rms_tracking_error > 0.0);
  CHECK(result.metrics.rms_tracking_error < 0.05);
  CHECK(result.metrics.max_abs_error < 0.05);
  CHECK(result.metrics.max_abs_prediction_error < 0.05);
  CHECK(result.metrics.switch_activity > 0.0);
  CHECK(result.metrics.switch_activity < 0.5);
  CHECK(result.metrics.min_estimate >= -1e-9);
  CHECK(result.metrics.control_energy > 0.0);
}

TEST_CASE("comparison requires matching plant and reference") {
  auto a = pendulum_cfg("fnt-m1", 1.0);
  auto b = pendulum_cfg("fxt-m4", 1.0);
  std::vector<ExperimentConfig> cfgs{a, b};
  auto cr = compare_runs(cfgs);
  REQUIRE_EQ(cr.runs.size(), 2u);
  CHECK_EQ(cr.names[0], "fnt-m1");
  CHECK_EQ(cr.names[1], "fxt-m4");

  std::ostringstream os;
  write_compare(os, cr);
  CHECK(os.str().find("rms_tracking_error") != std::string::npos);
  CHECK(os.str().find("ranking") != std::string::npos);

  b.rho0[0] = 0.3;
  std::vector<ExperimentConfig> bad{a, b};
  CHECK_THROWS_AS(compare_runs(bad), ConfigError);
}
