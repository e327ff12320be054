#include "sfctl/controller.hpp"

#include <cassert>
#include <cmath>

#include "sfctl/adaptive_law.hpp"
#include "sfctl/errors.hpp"
#include "sfctl/observer.hpp"

namespace sfctl {

double Reference::y(double t) const {
  return type == Type::Zero ? 0.0 : amplitude * std::sin(omega * t);
}

double Reference::dy(double t) const {
  return type == Type::Zero ? 0.0 : amplitude * omega * std::cos(omega * t);
}

std::string StateLayout::theta_name(int slot) const {
  const char* base = neural == NeuralForm::SquaredNorm ? "L_hat" : "N_hat";
  if (sharing == Sharing::Single) return base;
  return base + std::to_string(slot + 1);
}

std::string StateLayout::component_name(int idx) const {
  auto num = [](const char* base, int i) {
    return std::string(base) + std::to_string(i + 1);
  };
  if (idx < sigma()) return num("rho", idx - rho());
  if (idx < rho_hat()) return num("sigma", idx - sigma());
  if (idx < filter()) return num("rho_hat", idx - rho_hat());
  if (idx < theta()) {
    int pair = (idx - filter()) / 2, level = pair + 2;
    bool vel = (idx - filter()) % 2 != 0;
    return "rho" + std::to_string(level) + (vel ? "_c_dot" : "_c");
  }
  if (idx < tau()) return theta_name(idx - theta());
  if (idx < d_hat()) return num("tau_hat", idx - tau());
  if (idx < tau_N()) return num("d_hat", idx - d_hat());
  if (idx < d_hat_N()) return num("tau_hatN", idx - tau_N());
  return num("d_hatN", idx - d_hat_N());
}

void StepEval::resize(int n) {
  size_t sn = static_cast<size_t>(n);
  w.assign(sn, 0.0);
  zeta.assign(sn, 0.0);
  lambda.assign(sn, 0.0);
  z.assign(sn, 0.0);
  g.assign(sn, 0.0);
  alpha.assign(sn, 0.0);
}

std::vector<double> init_state(const StateLayout& L,
                               std::span<const double> rho0) {
  assert(static_cast<int>(rho0.size()) == L.n);
  std::vector<double> x(static_cast<size_t>(L.size()), 0.0);
  for (int i = 0; i < L.n; ++i) {
    x[static_cast<size_t>(L.rho() + i)] = rho0[static_cast<size_t>(i)];
    x[static_cast<size_t>(L.rho_hat() + i)] = rho0[static_cast<size_t>(i)];
  }
  return x;
}

void filter_rates(double pos, double vel, double input, double omega, double m,
                  double r, Timing timing, double* dpos, double* dvel) {
  auto satp = [&](double e) {
    return signed_pow(e, m) +
           (timing == Timing::FiniteTime ? e : signed_pow(e, r));
  };
  *dpos = vel;
  *dvel = -2.0 * omega * satp(vel) - omega * omega * satp(pos - input);
}

void controller_step(const Controller& C, const StateLayout& L, double t,
                     std::span<const double> x, const Reference& ref,
                     StepEval& ev, std::span<double> dx) {
  const GainSet& G = C.gains;
  const int n = L.n;
  const Timing timing = C.variant.timing;
  const bool fnt = timing == Timing::FiniteTime;
  const bool squared = C.variant.neural == NeuralForm::SquaredNorm;
  const bool shared = C.variant.sharing == Sharing::Single;
  const double m = G.m, r = G.r;

  auto rho = x.subspan(static_cast<size_t>(L.rho()), static_cast<size_t>(n));
  auto sig = x.subspan(static_cast<size_t>(L.sigma()), static_cast<size_t>(n));
  auto rhat = x.subspan(static_cast<size_t>(L.rho_hat()), static_cast<size_t>(n));
  auto tau = x.subspan(static_cast<size_t>(L.tau()), static_cast<size_t>(n));
  auto dh = x.subspan(static_cast<size_t>(L.d_hat()), static_cast<size_t>(n));
  auto tauN = x.subspan(static_cast<size_t>(L.tau_N()), static_cast<size_t>(n));
  auto dN = x.subspan(static_cast<size_t>(L.d_hat_N()), static_cast<size_t>(n));

  auto head = [&rho](int i) {
    return rho.subspan(0, static_cast<size_t>(i) + 1);
  };
  auto theta_of = [&](int i) {
    return x[static_cast<size_t>(L.theta() + (shared ? 0 : i))];
  };

  // known control gains, with the validity-floor monitor
  for (int i = 0; i < n; ++i) {
    double gi = C.known.g[static_cast<size_t>(i)](head(i));
    if (gi < G.g_floor)
      throw DivergenceError(t, "control gain g" + std::to_string(i + 1) +
                                   " = " + std::to_string(gi) +
                                   " fell below the floor " +
                                   std::to_string(G.g_floor));
    ev.g[static_cast<size_t>(i)] = gi;
  }

  // switch indicators (cumulative products of per-state blend weights)
  if (C.switching_frozen_on) {
    for (int i = 0; i < n; ++i) ev.w[static_cast<size_t>(i)] = 1.0;
  } else {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      prod *= smooth_switch(rho[static_cast<size_t>(i)],
                            C.bounds[static_cast<size_t>(i)]);
      ev.w[static_cast<size_t>(i)] = prod;
    }
  }

  // basis reductions and bound shapes
  double psi_sq[8], psi_hn[8], H[8];
  assert(n <= 8);
  for (int i = 0; i < n; ++i) {
    double q = C.nets[static_cast<size_t>(i)].basis_norm_sq(head(i));
    psi_sq[i] = q;
    psi_hn[i] = std::sqrt(q) +
                (C.variant.neural == NeuralForm::NormPlusOne ? 1.0 : 0.0);
    H[i] = C.H[static_cast<size_t>(i)].eval(head(i));
  }

  // tracking errors and their compensated versions
  for (int i = 0; i < n; ++i) {
    double cmd = i == 0 ? ref.y(t)
                        : x[static_cast<size_t>(L.filter_pos(i + 1))];
    ev.zeta[static_cast<size_t>(i)] = rho[static_cast<size_t>(i)] - cmd;
    ev.lambda[static_cast<size_t>(i)] =
        ev.zeta[static_cast<size_t>(i)] - sig[static_cast<size_t>(i)];
    ev.z[static_cast<size_t>(i)] =
        rho[static_cast<size_t>(i)] - rhat[static_cast<size_t>(i)];
  }

  // virtual controls; the last one is the control
  for (int i = 0; i < n; ++i) {
    size_t s = static_cast<size_t>(i);
    double lam = ev.lambda[s], wi = ev.w[s];
    double ff = i == 0 ? ref.dy(t)
                       : x[static_cast<size_t>(L.filter_vel(i + 1))] -
                             ev.g[s - 1] * ev.zeta[s - 1];
    double stab = fnt ? -G.k[s] * ev.zeta[s] -
                            G.p[s] * phi(lam, G.mu[s], G.kappa[s], m)
                      : -G.k2[s] * signed_pow(lam, r) -
                            G.k1[s] * phi(lam, G.mu[s], G.kappa[s], m);
    double neural =
        squared ? wi * lam / (2.0 * G.a[s] * G.a[s]) * theta_of(i) * psi_sq[i]
                : wi * theta_of(i) * psi_hn[i] *
                      std::tanh(psi_hn[i] * lam / G.eta_theta[s]);
    double robust =
        (1.0 - wi) * tau[s] * H[i] * std::tanh(H[i] * lam / G.eta[s]);
    double dist = dh[s] * std::tanh(lam / G.eta_d[s]);
    ev.alpha[s] = (stab + ff - dist - neural - robust) / ev.g[s];
  }
  ev.u = ev.alpha[static_cast<size_t>(n - 1)];

  // command-filter rates
  for (int level = 2; level <= n; ++level) {
    double pos = x[static_cast<size_t>(L.filter_pos(level))];
    double vel = x[static_cast<size_t>(L.filter_vel(level))];
    double in = ev.alpha[static_cast<size_t>(level - 2)];
    filter_rates(pos, vel, in, G.filter_omega, m, r, timing,
                 &dx[static_cast<size_t>(L.filter_pos(level))],
                 &dx[static_cast<size_t>(L.filter_vel(level))]);
  }

  // compensation rates
  for (int i = 0; i < n; ++i) {
    size_t s = static_cast<size_t>(i);
    double ds = fnt ? -G.k[s] * sig[s] - G.gamma[s] * signed_pow(sig[s], m)
                    : -G.k1[s] * signed_pow(sig[s], m) -
                          G.k2[s] * signed_pow(sig[s], r);
    if (i + 1 < n) {
      double next_cmd = x[static_cast<size_t>(L.filter_pos(i + 2))];
      ds += ev.g[s] * (next_cmd - ev.alpha[s]) + ev.g[s] * sig[s + 1];
    }
    if (i > 0) ds -= ev.g[s - 1] * sig[s - 1];
    dx[static_cast<size_t>(L.sigma() + i)] = ds;
  }

  // neural estimate rates
  {
    auto bz = [&](int i) {
      return C.composite ? G.beta_z[static_cast<size_t>(i)] : 0.0;
    };
    if (shared) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        size_t s = static_cast<size_t>(i);
        sum += squared ? drive_L(ev.w[s], ev.lambda[s], ev.z[s], bz(i),
                                 psi_sq[i], G.a[s], Sharing::Single)
                       : drive_N(ev.w[s], ev.lambda[s], ev.z[s], bz(i),
                                 psi_hn[i], G.eta_theta[s], G.eta_thetaN[s]);
      }
      dx[static_cast<size_t>(L.theta())] =
          G.beta_h[0] * sum -
          leakage(theta_of(0), G.beta_1[0], G.beta_2[0], m, r, timing);
    } else {
      for (int i = 0; i < n; ++i) {
        size_t s = static_cast<size_t>(i);
        double dr = squared
                        ? drive_L(ev.w[s], ev.lambda[s], ev.z[s], bz(i),
                                  psi_sq[i], G.a[s], Sharing::PerSubsystem)
                        : drive_N(ev.w[s], ev.lambda[s], ev.z[s], bz(i),
                                  psi_hn[i], G.eta_theta[s], G.eta_thetaN[s]);
        dx[static_cast<size_t>(L.theta() + i)] =
            G.beta_h[s] * dr -
            leakage(theta_of(i), G.beta_1[s], G.beta_2[s], m, r, timing);
      }
    }
  }

  // robust and disturbance bound estimates, both error channels
  for (int i = 0; i < n; ++i) {
    size_t s = static_cast<size_t>(i);
    dx[static_cast<size_t>(L.tau() + i)] =
        G.delta_1[s] * drive_tau(ev.w[s], H[i], ev.lambda[s], G.eta[s]) -
        leakage(tau[s], G.delta_2[s], G.delta_3[s], m, r, timing);
    dx[static_cast<size_t>(L.d_hat() + i)] =
        G.q_1[s] * drive_d(ev.lambda[s], G.eta_d[s]) -
        leakage(dh[s], G.q_2[s], G.q_3[s], m, r, timing);
    double dtn, ddn;
    observer_adapt_rates(G, timing, i, ev.w[s], ev.z[s], H[i], tauN[s], dN[s],
                         &dtn, &ddn);
    dx[static_cast<size_t>(L.tau_N() + i)] = dtn;
    dx[static_cast<size_t>(L.d_hat_N() + i)] = ddn;
  }

  // prediction-model rates
  for (int i = 0; i < n; ++i) {
    size_t s = static_cast<size_t>(i);
    double rho_next = i + 1 < n ? rho[s + 1] : ev.u;
    dx[static_cast<size_t>(L.rho_hat() + i)] =
        spem_rate(G, C.variant.neural, timing, i, ev.w[s], ev.z[s],
                  theta_of(i), tauN[s], dN[s], H[i], psi_sq[i], psi_hn[i],
                  ev.g[s] * rho_next);
  }
}

}  // namespace sfctl
