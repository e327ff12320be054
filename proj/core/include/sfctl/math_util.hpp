#pragma once

#include <span>

namespace sfctl {

// sign(x) * |x|^p; exactly 0 at x = 0.
double signed_pow(double x, double p);

// |w| - w*tanh(w/eta); nonnegative and bounded by 0.2785*eta.
double tanh_gap(double w, double eta);
inline constexpr double kTanhGapBound = 0.2785;

// Odd fractional-power stabilizer: signed_pow(lam, 1+2m) scaled so that
// lam*phi(lam) underestimates |signed_pow(lam, 1+m)| by at most
// mu*kappa/sqrt(mu^2+kappa^2).
double phi(double lam, double mu, double kappa, double m);

enum class SwitchForm { Squared, Absolute };

struct SwitchBoundaries {
  double c1 = 0.25;  // inner radius, full neural authority inside
  double c2 = 0.35;  // outer radius, full robust authority outside
  int n = 2;         // blend smoothness order (C^n across the boundaries)
  SwitchForm form = SwitchForm::Squared;
};

// Blend weight in [0,1]: 1 for |rho| <= c1, 0 for |rho| >= c2,
// cos^(n+1)((pi/2) * arg^n) in between.
double smooth_switch(double rho, const SwitchBoundaries& b);

// Cumulative product of smooth_switch over the leading state entries.
double switch_indicator(std::span<const double> rho,
                        std::span<const SwitchBoundaries> b);

}  // namespace sfctl
