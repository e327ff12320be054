#include "sfctl/math_util.hpp"

#include <cassert>
#include <cmath>

namespace sfctl {

double signed_pow(double x, double p) {
  if (x == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(x), p), x);
}

double tanh_gap(double w, double eta) {
  return std::abs(w) - w * std::tanh(w / eta);
}

double phi(double lam, double mu, double kappa, double m) {
  double p22 = std::pow(std::abs(lam), 2.0 + 2.0 * m);
  double m2 = mu * mu, k2 = kappa * kappa;
  double core = std::sqrt((p22 + m2 + k2) / ((p22 + m2) * (p22 + k2)));
  return signed_pow(lam, 1.0 + 2.0 * m) * core;
}

double smooth_switch(double rho, const SwitchBoundaries& b) {
  double a = std::abs(rho);
  if (a <= b.c1) return 1.0;
  if (a >= b.c2) return 0.0;
  double arg;
  if (b.form == SwitchForm::Squared)
    arg = (rho * rho - b.c1 * b.c1) / (b.c2 * b.c2 - b.c1 * b.c1);
  else
    arg = (a - b.c1) / (b.c2 - b.c1);
  double c = std::cos(0.5 * M_PI * std::pow(arg, b.n));
  return std::pow(c, b.n + 1);
}

double switch_indicator(std::span<const double> rho,
                        std::span<const SwitchBoundaries> b) {
  assert(rho.size() <= b.size());
  double w = 1.0;
  for (size_t j = 0; j < rho.size(); ++j) w *= smooth_switch(rho[j], b[j]);
  return w;
}

}  // namespace sfctl
