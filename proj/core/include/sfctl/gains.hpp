#pragma once

#include <vector>

namespace sfctl {

// Per-subsystem design parameters (vectors sized n) plus shared exponents.
// Names follow the adaptive-law roles: beta_* drive the neural estimate,
// delta_* the model-error bound, q_* the disturbance bound; the *_N families
// belong to the prediction-error side.
struct GainSet {
  int n = 2;

  std::vector<double> k;      // finite-time proportional gains
  std::vector<double> p;      // finite-time fractional stabilizer gains
  std::vector<double> gamma;  // finite-time compensation fractional gains
  std::vector<double> k1;     // fixed-time fractional stabilizer gains
  std::vector<double> k2;     // fixed-time high-power gains

  double m = 0.6;        // fractional exponent, (1/2, 1)
  double r = 5.0 / 3.0;  // high-power exponent, > 1

  std::vector<double> a;          // neural-term scaling (squared-norm form)
  std::vector<double> mu, kappa;  // fractional stabilizer smoothing radii

  std::vector<double> eta, eta_d, eta_N, eta_dN, eta_theta, eta_thetaN;

  std::vector<double> beta_h, beta_z, beta_1, beta_2;
  std::vector<double> delta_1, delta_2, delta_3;
  std::vector<double> delta_1N, delta_2N, delta_3N;
  std::vector<double> q_1, q_2, q_3;
  std::vector<double> q_1N, q_2N, q_3N;
  std::vector<double> r_1, r_2;  // prediction-model correction gains

  double filter_omega = 50.0;
  double g_floor = 0.05;  // abort if any control gain g_i drops below this
};

GainSet default_gains(int n);

}  // namespace sfctl
