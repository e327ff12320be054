#include "sfctl/gains.hpp"

namespace sfctl {

GainSet default_gains(int n) {
  GainSet g;
  g.n = n;
  auto fill = [n](double v) { return std::vector<double>(static_cast<size_t>(n), v); };
  g.k = fill(2.0);
  if (n == 2) g.k[1] = 4.0;
  g.p = fill(0.5);
  g.gamma = fill(1.0);
  g.k1 = fill(2.0);
  g.k2 = fill(4.0);
  g.a = fill(1.0);
  g.mu = fill(0.1);
  g.kappa = fill(0.1);
  g.eta = fill(0.1);
  g.eta_d = fill(0.1);
  g.eta_N = fill(0.1);
  g.eta_dN = fill(0.1);
  g.eta_theta = fill(0.1);
  g.eta_thetaN = fill(0.1);
  g.beta_h = fill(10.0);
  g.beta_z = fill(1.0);
  g.beta_1 = fill(0.1);
  g.beta_2 = fill(0.1);
  g.delta_1 = fill(10.0);
  g.delta_2 = fill(0.1);
  g.delta_3 = fill(0.1);
  g.delta_1N = fill(10.0);
  g.delta_2N = fill(0.1);
  g.delta_3N = fill(0.1);
  g.q_1 = fill(5.0);
  g.q_2 = fill(0.1);
  g.q_3 = fill(0.1);
  g.q_1N = fill(5.0);
  g.q_2N = fill(0.1);
  g.q_3N = fill(0.1);
  g.r_1 = fill(5.0);
  g.r_2 = fill(1.0);
  return g;
}

}  // namespace sfctl
