#pragma once

// Evaluators for the algebraic inequalities the control terms rely on.
// Each returns both sides (or a residual plus its bound) so tests can
// assert the ordering at an explicit tolerance. Test-suite support only.

#include <cmath>
#include <span>

#include "sfctl/math_util.hpp"

namespace sfctl::bounds {

struct Sides {
  double lhs = 0.0, rhs = 0.0;  // claim: lhs <= rhs
};

struct Gap {
  double gap = 0.0, upper = 0.0;  // claim: 0 <= gap <= upper
};

// (sum |x|)^q <= sum |x|^q for 0 < q <= 1.
inline Sides sum_abs_pow_concave(std::span<const double> xs, double q) {
  double s = 0.0, sp = 0.0;
  for (double x : xs) {
    s += std::abs(x);
    sp += std::pow(std::abs(x), q);
  }
  return {std::pow(s, q), sp};
}

// p^(1-q) * (sum |x|)^q <= sum |x|^q for q > 1, p = element count.
inline Sides sum_abs_pow_convex(std::span<const double> xs, double q) {
  double s = 0.0, sp = 0.0;
  for (double x : xs) {
    s += std::abs(x);
    sp += std::pow(std::abs(x), q);
  }
  double p = static_cast<double>(xs.size());
  return {std::pow(p, 1.0 - q) * std::pow(s, q), sp};
}

// 0 <= |w| - w*tanh(w/eta) <= 0.2785*eta.
inline Gap tanh_residual(double w, double eta) {
  return {tanh_gap(w, eta), kTanhGapBound * eta};
}

// |u1|^s1 * |u2|^s2 <= s1/(s1+s2)*|u1|^(s1+s2) + s2/(s1+s2)*|u2|^(s1+s2).
inline Sides fractional_product(double u1, double u2, double s1, double s2) {
  double a1 = std::abs(u1), a2 = std::abs(u2), s = s1 + s2;
  return {std::pow(a1, s1) * std::pow(a2, s2),
          s1 / s * std::pow(a1, s) + s2 / s * std::pow(a2, s)};
}

// 0 <= |v| - v^2*sqrt((v^2+mu^2+kap^2)/((v^2+mu^2)(v^2+kap^2)))
//   <  mu*kap/sqrt(mu^2+kap^2).
inline Gap sqrt_ratio_residual(double v, double mu, double kap) {
  double v2 = v * v, m2 = mu * mu, k2 = kap * kap;
  double core = std::sqrt((v2 + m2 + k2) / ((v2 + m2) * (v2 + k2)));
  return {std::abs(v) - v2 * core, mu * kap / std::sqrt(m2 + k2)};
}

// Same residual realized through phi: 0 <= |signed_pow(lam,1+m)| - lam*phi(lam).
inline Gap phi_residual(double lam, double mu, double kap, double m) {
  return {std::abs(signed_pow(lam, 1.0 + m)) - lam * phi(lam, mu, kap, m),
          mu * kap / std::sqrt(mu * mu + kap * kap)};
}

}  // namespace sfctl::bounds
