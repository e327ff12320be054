#include <cmath>
#include <vector>

#include "doctest.h"
#include "sfctl/config.hpp"
#include "sfctl/observer.hpp"
#include "sfctl/sim.hpp"

using namespace sfctl;

TEST_CASE("prediction-model rate, frozen values") {
  auto G = default_gains(1);

  SUBCASE("finite-time correction") {
    G.r_1[0] = 1.0;  // r1*z + r2*z^m + g*rho_next, everything else zero
    double rate = spem_rate(G, NeuralForm::SquaredNorm, Timing::FiniteTime, 0,
                            1.0, 0.1, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.1);
    CHECK(rate == doctest::Approx(0.451188643150958).epsilon(1e-12));
  }

  SUBCASE("default correction gains") {
    double rate = spem_rate(G, NeuralForm::SquaredNorm, Timing::FiniteTime, 0,
                            1.0, 0.1, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.1);
    CHECK(rate == doctest::Approx(0.851188643150958).epsilon(1e-12));
  }

  SUBCASE("fixed-time correction") {
    G.r_1[0] = 1.0;
    double rate = spem_rate(G, NeuralForm::SquaredNorm, Timing::FixedTime, 0,
                            1.0, 0.1, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.1);
    CHECK(rate == doctest::Approx(0.37273299005127686).epsilon(1e-12));
  }

  SUBCASE("neural and robust channels enter as weighted") {
    // w = 1: neural only; w = 0: robust only
    double with_neural =
        spem_rate(G, NeuralForm::SquaredNorm, Timing::FiniteTime, 0, 1.0, 0.1,
                  2.0, 5.0, 0.0, 1.0, 3.0, 0.0, 0.0);
    double base = spem_rate(G, NeuralForm::SquaredNorm, Timing::FiniteTime, 0,
                            1.0, 0.1, 0.0, 5.0, 0.0, 1.0, 3.0, 0.0, 0.0);
    // theta*z*psi_sq/(2a^2) = 2*0.1*3/2 = 0.3
    CHECK(with_neural - base == doctest::Approx(0.3).epsilon(1e-12));

    double with_robust =
        spem_rate(G, NeuralForm::SquaredNorm, Timing::FiniteTime, 0, 0.0, 0.1,
                  2.0, 5.0, 0.0, 1.0, 3.0, 0.0, 0.0);
    double base_r = spem_rate(G, NeuralForm::SquaredNorm, Timing::FiniteTime,
                              0, 0.0, 0.1, 2.0, 0.0, 0.0, 1.0, 3.0, 0.0, 0.0);
    // tau_N*H*tanh(H*z/eta_N) = 5*tanh(1)
    CHECK(with_robust - base_r ==
          doctest::Approx(5.0 * std::tanh(1.0)).epsilon(1e-12));
  }
}

TEST_CASE("prediction-side bound estimate rates, frozen values") {
  auto G = default_gains(1);
  double dtn = 0.0, ddn = 0.0;
  observer_adapt_rates(G, Timing::FiniteTime, 0, 0.0, 0.1, 1.0, 0.0, 0.0,
                       &dtn, &ddn);
  CHECK(dtn == doctest::Approx(0.7615941559557649).epsilon(1e-12));
  CHECK(ddn == doctest::Approx(0.3807970779778824).epsilon(1e-12));

  // fully neural region: no robust-bound push, disturbance push unchanged
  observer_adapt_rates(G, Timing::FiniteTime, 0, 1.0, 0.1, 1.0, 0.0, 0.0,
                       &dtn, &ddn);
  CHECK_EQ(dtn, 0.0);
  CHECK(ddn == doctest::Approx(0.3807970779778824).epsilon(1e-12));
}

TEST_CASE("prediction error stays at zero on an exactly known plant") {
  RawConfig raw;
  raw.set("plant", "type", "integrators");
  raw.set("plant", "order", "2");
  raw.set("plant", "disturbance", "none");
  raw.set("plant", "rho1_0", "0.05");
  raw.set("sim", "horizon", "1.0");
  auto cfg = resolve(raw, "exact");
  auto result = run_experiment(cfg);
  REQUIRE(result.status == RunStatus::Ok);

  int z1 = result.log.column("z1N"), z2 = result.log.column("z2N");
  REQUIRE(z1 >= 0);
  REQUIRE(z2 >= 0);
  for (size_t r = 0; r < result.log.rows(); ++r) {
    CHECK(std::abs(result.log.at(r, z1)) <= 1e-12);
    CHECK(std::abs(result.log.at(r, z2)) <= 1e-12);
  }
}
