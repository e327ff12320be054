#pragma once

// Scalar building blocks of the adaptive laws. Every estimate evolves as
//   d/dt v = gain * drive - leakage(v)
// with a nonnegative drive and an odd leakage, so estimates started at 0
// stay (numerically) nonnegative.

#include <cmath>

#include "sfctl/math_util.hpp"
#include "sfctl/variant.hpp"

namespace sfctl {

// Finite-time: b1*v + b2*v^m. Fixed-time: b1*v^r + b2*v^m. Odd in v.
inline double leakage(double v, double b1, double b2, double m, double r,
                      Timing timing) {
  double lin = timing == Timing::FiniteTime ? b1 * v : b1 * signed_pow(v, r);
  return lin + b2 * signed_pow(v, m);
}

// Drive of the squared-norm neural estimate. PerSubsystem keeps the plain
// composite quadratic; Single returns the per-subsystem summand of the shared
// law, which carries the extra 1/(2a^2). The beta_h gain is applied by the
// caller in both cases.
inline double drive_L(double w, double lam, double z, double beta_z,
                      double psi_sq, double a, Sharing sharing) {
  double quad = (lam * lam + beta_z * z * z) * psi_sq;
  if (sharing == Sharing::Single) quad *= 1.0 / (2.0 * a * a);
  return w * quad;
}

// Drive of the norm-form neural estimate (both the tracking-error and
// prediction-error channels). beta_h applied by the caller.
inline double drive_N(double w, double lam, double z, double beta_z,
                      double psi_h, double eta_theta, double eta_thetaN) {
  double s1 = lam * psi_h, s2 = z * psi_h;
  return w * (s1 * std::tanh(s1 / eta_theta) +
              beta_z * s2 * std::tanh(s2 / eta_thetaN));
}

// Drive of the robust-bound estimate; s is the error the bound acts on.
inline double drive_tau(double w, double H, double s, double eta) {
  double hs = H * s;
  return (1.0 - w) * hs * std::tanh(hs / eta);
}

// Drive of the disturbance-bound estimate.
inline double drive_d(double s, double eta) {
  return s * std::tanh(s / eta);
}

}  // namespace sfctl
