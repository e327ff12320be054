#pragma once

// Serial-parallel prediction model. Built only from measurable quantities:
// plant state, control, switch indicators, basis reductions, and estimates.

#include <cmath>

#include "sfctl/adaptive_law.hpp"
#include "sfctl/gains.hpp"
#include "sfctl/math_util.hpp"
#include "sfctl/variant.hpp"

namespace sfctl {

// Rate of the i-th prediction state. z = rho_i - rho_hat_i, g_rho_next is
// g_i * rho_{i+1} (g_n * u on the last row), theta the neural scalar in force
// for subsystem i.
inline double spem_rate(const GainSet& G, NeuralForm form, Timing timing,
                        int i, double w, double z, double theta, double tau_N,
                        double d_N, double H, double psi_sq, double psi_h,
                        double g_rho_next) {
  size_t s = static_cast<size_t>(i);
  double neural;
  if (form == NeuralForm::SquaredNorm)
    neural = w / (2.0 * G.a[s] * G.a[s]) * theta * z * psi_sq;
  else
    neural = w * theta * psi_h * std::tanh(psi_h * z / G.eta_thetaN[s]);
  double robust = (1.0 - w) * tau_N * H * std::tanh(H * z / G.eta_N[s]);
  double corr = timing == Timing::FiniteTime
                    ? G.r_1[s] * z + G.r_2[s] * signed_pow(z, G.m)
                    : G.r_1[s] * signed_pow(z, G.r) + G.r_2[s] * signed_pow(z, G.m);
  return neural + robust + g_rho_next + corr + d_N * std::tanh(z / G.eta_dN[s]);
}

// Rates of the prediction-side bound estimates for subsystem i.
inline void observer_adapt_rates(const GainSet& G, Timing timing, int i,
                                 double w, double z, double H, double tau_N,
                                 double d_N, double* dtau_N, double* dd_N) {
  size_t s = static_cast<size_t>(i);
  *dtau_N = G.delta_1N[s] * drive_tau(w, H, z, G.eta_N[s]) -
            leakage(tau_N, G.delta_2N[s], G.delta_3N[s], G.m, G.r, timing);
  *dd_N = G.q_1N[s] * drive_d(z, G.eta_dN[s]) -
          leakage(d_N, G.q_2N[s], G.q_3N[s], G.m, G.r, timing);
}

}  // namespace sfctl
