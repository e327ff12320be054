#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "sfctl/adaptive_law.hpp"
#include "sfctl/sim.hpp"
#include "sfctl/variant.hpp"

using namespace sfctl;

TEST_CASE("leakage frozen values") {
  double m = 0.6, r = 5.0 / 3.0;
  CHECK(leakage(1.0, 0.1, 0.1, m, r, Timing::FiniteTime) ==
        doctest::Approx(0.2).epsilon(1e-15));
  CHECK(leakage(0.5, 0.1, 0.1, m, r, Timing::FiniteTime) ==
        doctest::Approx(0.11597539553864471).epsilon(1e-12));
  CHECK(leakage(0.5, 0.1, 0.1, m, r, Timing::FixedTime) ==
        doctest::Approx(0.09747342178601655).epsilon(1e-12));
  CHECK_EQ(leakage(0.0, 0.1, 0.1, m, r, Timing::FixedTime), 0.0);
}

TEST_CASE("leakage is odd and dissipative") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> uv(-5.0, 5.0);
  for (auto timing : {Timing::FiniteTime, Timing::FixedTime}) {
    for (int i = 0; i < 5000; ++i) {
      double v = uv(rng);
      double l = leakage(v, 0.1, 0.1, 0.6, 5.0 / 3.0, timing);
      CHECK_EQ(leakage(-v, 0.1, 0.1, 0.6, 5.0 / 3.0, timing), -l);
      CHECK(l * v >= 0.0);  // always pulls toward 0
    }
  }
}

TEST_CASE("pure leakage decays an estimate to zero monotonically") {
  for (auto timing : {Timing::FiniteTime, Timing::FixedTime}) {
    std::vector<double> v{1.0}, work(5);
    auto f = [&](double, std::span<const double> x, std::span<double> dx) {
      dx[0] = -leakage(x[0], 0.1, 0.1, 0.6, 5.0 / 3.0, timing);
    };
    double prev = v[0];
    int steps = 0;
    while (v[0] > 1e-9 && steps < 60000) {
      rk4_step(f, steps * 1e-3, 1e-3, v, work);
      CHECK(v[0] <= prev + 1e-15);
      prev = v[0];
      ++steps;
    }
    CHECK(v[0] <= 1e-9);  // the fractional term closes the gap in finite time
  }
}

TEST_CASE("drive_L frozen value and sharing factor") {
  // shared-law summand carries the extra 1/(2 a^2)
  CHECK(drive_L(1.0, 0.1, 0.1, 1.0, 5.0, 1.0, Sharing::Single) ==
        doctest::Approx(0.05).epsilon(1e-12));
  CHECK(drive_L(1.0, 0.1, 0.1, 1.0, 5.0, 1.0, Sharing::PerSubsystem) ==
        doctest::Approx(0.1).epsilon(1e-12));
  CHECK(drive_L(1.0, 0.3, 0.2, 1.0, 2.0, 2.0, Sharing::Single) ==
        doctest::Approx(drive_L(1.0, 0.3, 0.2, 1.0, 2.0, 2.0,
                                Sharing::PerSubsystem) /
                        8.0)
            .epsilon(1e-12));
  CHECK_EQ(drive_L(0.0, 0.3, 0.2, 1.0, 2.0, 1.0, Sharing::PerSubsystem), 0.0);
  // composite ablation: beta_z = 0 removes the prediction channel
  CHECK(drive_L(1.0, 0.3, 0.7, 0.0, 2.0, 1.0, Sharing::PerSubsystem) ==
        doctest::Approx(0.18).epsilon(1e-12));
}

TEST_CASE("drive_N frozen value") {
  CHECK(drive_N(1.0, 0.1, 0.1, 1.0, 1.5, 0.1, 0.1) ==
        doctest::Approx(0.27154447609345994).epsilon(1e-12));
  CHECK_EQ(drive_N(0.0, 0.1, 0.1, 1.0, 1.5, 0.1, 0.1), 0.0);
}

TEST_CASE("drive_tau and drive_d frozen values") {
  CHECK(drive_tau(0.0, 2.0, 0.3, 0.1) ==
        doctest::Approx(0.5999926269904774).epsilon(1e-12));
  CHECK_EQ(drive_tau(1.0, 2.0, 0.3, 0.1), 0.0);  // fully neural: no robust push
  CHECK(drive_d(0.3, 0.1) ==
        doctest::Approx(0.29851642610601914).epsilon(1e-12));
}

TEST_CASE("all drives are nonnegative") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ue(-2.0, 2.0), uw(0.0, 1.0),
      up(0.0, 10.0), ua(0.2, 3.0);
  for (int i = 0; i < 10000; ++i) {
    double w = uw(rng), lam = ue(rng), z = ue(rng);
    CHECK(drive_L(w, lam, z, uw(rng), up(rng), ua(rng),
                  Sharing::PerSubsystem) >= 0.0);
    CHECK(drive_N(w, lam, z, uw(rng), up(rng), 0.1, 0.1) >= 0.0);
    CHECK(drive_tau(w, up(rng), lam, 0.1) >= 0.0);
    CHECK(drive_d(lam, 0.1) >= 0.0);
  }
}
