#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "sfctl/bounds_check.hpp"
#include "sfctl/math_util.hpp"

using namespace sfctl;

namespace {
constexpr double kTol = 1e-12;

double rel(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}
}  // namespace

TEST_CASE("signed_pow basics") {
  CHECK_EQ(signed_pow(0.0, 0.6), 0.0);
  CHECK_EQ(signed_pow(4.0, 0.5), 2.0);
  CHECK_EQ(signed_pow(1.0, 5.0 / 3.0), 1.0);
  CHECK(signed_pow(-8.0, 0.6) ==
        doctest::Approx(-3.4822022531844965).epsilon(kTol));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-10.0, 10.0), up(0.1, 3.0);
  for (int i = 0; i < 5000; ++i) {
    double x = ux(rng), p = up(rng);
    CHECK_EQ(signed_pow(-x, p), -signed_pow(x, p));  // odd, exactly
    CHECK(signed_pow(x, 1.0) == doctest::Approx(x).epsilon(kTol));
  }
}

TEST_CASE("tanh_gap value and bound") {
  CHECK(tanh_gap(1.0, 1.0) ==
        doctest::Approx(0.23840584404423512).epsilon(kTol));
  CHECK_EQ(tanh_gap(0.0, 0.1), 0.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uw(-50.0, 50.0), ue(1e-3, 5.0);
  for (int i = 0; i < 10000; ++i) {
    double w = uw(rng), eta = ue(rng);
    double gap = tanh_gap(w, eta);
    CHECK(gap >= -kTol);
    CHECK(gap <= kTanhGapBound * eta + kTol);
    CHECK(tanh_gap(-w, eta) == doctest::Approx(gap).epsilon(kTol));  // even
  }
}

TEST_CASE("phi frozen values and oddness") {
  CHECK(phi(1.0, 0.1, 0.1, 0.6) ==
        doctest::Approx(0.9999509839962454).epsilon(kTol));
  CHECK(phi(0.1, 0.1, 0.1, 0.6) ==
        doctest::Approx(0.08524861167455858).epsilon(kTol));
  CHECK(phi(0.5, 0.1, 0.1, 0.6) ==
        doctest::Approx(0.6574132183148239).epsilon(kTol));
  CHECK_EQ(phi(0.0, 0.1, 0.1, 0.6), 0.0);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ul(-5.0, 5.0);
  for (int i = 0; i < 5000; ++i) {
    double lam = ul(rng);
    CHECK_EQ(phi(-lam, 0.1, 0.1, 0.6), -phi(lam, 0.1, 0.1, 0.6));
  }
}

TEST_CASE("phi underestimates the fractional power by a fixed margin") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ul(-5.0, 5.0), um(0.51, 0.99),
      us(0.01, 0.5);
  for (int i = 0; i < 10000; ++i) {
    double mu = us(rng), kap = us(rng), m = um(rng);
    auto g = bounds::phi_residual(ul(rng), mu, kap, m);
    CHECK(g.gap >= -kTol);
    CHECK(g.gap <= g.upper + kTol);
  }
}

TEST_CASE("power-sum inequalities") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), uq(0.05, 1.0),
      ur(1.0, 3.0);
  std::uniform_int_distribution<int> un(1, 6);
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> xs(static_cast<size_t>(un(rng)));
    for (auto& x : xs) x = ux(rng);
    auto c = bounds::sum_abs_pow_concave(xs, uq(rng));
    CHECK(c.lhs <= c.rhs + kTol * std::max(1.0, std::abs(c.rhs)));
    auto v = bounds::sum_abs_pow_convex(xs, ur(rng));
    CHECK(v.lhs <= v.rhs + kTol * std::max(1.0, std::abs(v.rhs)));
  }
}

TEST_CASE("fractional product inequality") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uu(-4.0, 4.0), us(0.1, 3.0);
  for (int i = 0; i < 10000; ++i) {
    auto s = bounds::fractional_product(uu(rng), uu(rng), us(rng), us(rng));
    CHECK(s.lhs <= s.rhs + kTol * std::max(1.0, std::abs(s.rhs)));
  }
}

TEST_CASE("sqrt-ratio residual stays inside its band") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> uv(-10.0, 10.0), us(0.01, 1.0);
  for (int i = 0; i < 10000; ++i) {
    auto g = bounds::sqrt_ratio_residual(uv(rng), us(rng), us(rng));
    CHECK(g.gap >= -kTol);
    CHECK(g.gap <= g.upper + kTol);
  }
}

TEST_CASE("smooth_switch gating is exact at the boundaries") {
  for (auto form : {SwitchForm::Squared, SwitchForm::Absolute}) {
    SwitchBoundaries b{0.25, 0.35, 2, form};
    CHECK_EQ(smooth_switch(0.0, b), 1.0);
    CHECK_EQ(smooth_switch(0.1, b), 1.0);
    CHECK_EQ(smooth_switch(0.25, b), 1.0);
    CHECK_EQ(smooth_switch(-0.25, b), 1.0);
    CHECK_EQ(smooth_switch(0.35, b), 0.0);
    CHECK_EQ(smooth_switch(-0.5, b), 0.0);
    CHECK_EQ(smooth_switch(10.0, b), 0.0);
  }
}

TEST_CASE("smooth_switch mid-blend frozen values") {
  // both forms hit cos^3(pi/8) where the normalized argument equals 1/2
  SwitchBoundaries sq{0.25, 0.35, 2, SwitchForm::Squared};
  CHECK(smooth_switch(0.304138126514911, sq) ==
        doctest::Approx(0.7885805074747375).epsilon(1e-9));
  SwitchBoundaries ab{0.25, 0.35, 2, SwitchForm::Absolute};
  CHECK(smooth_switch(0.30, ab) ==
        doctest::Approx(0.7885805074747375).epsilon(kTol));
}

TEST_CASE("smooth_switch is even, monotone, and continuous") {
  for (auto form : {SwitchForm::Squared, SwitchForm::Absolute}) {
    SwitchBoundaries b{0.25, 0.35, 2, form};
    double prev = 1.0;
    for (int i = 0; i <= 100000; ++i) {
      double rho = 0.5 * i / 100000.0;
      double s = smooth_switch(rho, b);
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
      CHECK(s <= prev + 1e-15);
      CHECK_EQ(smooth_switch(-rho, b), s);
      prev = s;
    }
    // value and slope both vanish into the boundaries (C^2 blend)
    for (double c : {0.25, 0.35}) {
      double eps = 1e-6;
      CHECK(std::abs(smooth_switch(c + eps, b) - smooth_switch(c - eps, b)) <
            1e-9);
      double slope_in = (smooth_switch(c, b) - smooth_switch(c - eps, b)) / eps;
      double slope_out =
          (smooth_switch(c + eps, b) - smooth_switch(c, b)) / eps;
      CHECK(std::abs(slope_in) < 1e-4);
      CHECK(std::abs(slope_out) < 1e-4);
    }
  }
}

TEST_CASE("switch_indicator multiplies the per-state weights") {
  std::vector<SwitchBoundaries> b(2);
  std::vector<double> rho{0.304138126514911, 0.304138126514911};
  CHECK(switch_indicator(rho, b) ==
        doctest::Approx(0.6218592167691145).epsilon(1e-9));

  rho = {0.1, 0.304138126514911};
  CHECK(switch_indicator(rho, b) ==
        doctest::Approx(0.7885805074747375).epsilon(1e-9));

  rho = {0.1, 0.5};
  CHECK_EQ(switch_indicator(rho, b), 0.0);
  rho = {0.1, 0.2};
  CHECK_EQ(switch_indicator(rho, b), 1.0);

  // leading-entry products: one inside, head of size 1
  std::vector<double> head{0.1};
  CHECK_EQ(switch_indicator(head, std::span(b.data(), 1)), 1.0);

  CHECK(rel(switch_indicator(rho, b),
            smooth_switch(rho[0], b[0]) * smooth_switch(rho[1], b[1])) < kTol);
}
