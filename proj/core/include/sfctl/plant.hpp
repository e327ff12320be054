#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sfctl {

// Scalar field over the leading state entries rho_1..rho_i.
using StateFn = std::function<double(std::span<const double>)>;

// The part of the plant the control side is allowed to know: the control
// gain functions g_i only. Drift and disturbances stay private to the plant.
struct KnownGains {
  std::vector<StateFn> g;
};

// Strict-feedback chain: d/dt rho_i = h_i(rho_1..i) + g_i(rho_1..i)*rho_{i+1}
// + d_i(t), with u in place of rho_{n+1} on the last row.
struct PlantModel {
  std::string name;
  int n = 2;
  std::vector<StateFn> h;
  std::vector<StateFn> g;
  std::vector<std::function<double(double)>> d;

  KnownGains known() const { return {g}; }
};

void plant_rhs(const PlantModel& plant, std::span<const double> rho, double u,
               double t, std::span<double> drho);

struct PendulumParams {
  double gravity = 9.81;
  double cart_mass = 1.0;
  double pole_mass = 0.1;
  double pole_length = 0.5;
};

// Pole-angle dynamics of a cart-pole in strict-feedback form (n = 2);
// disturbance enters the acceleration row.
PlantModel pendulum_model(const PendulumParams& p,
                          std::function<double(double)> d2);

// Pure integrator chain (h = 0, g = 1, d = 0), exact for prediction tests.
PlantModel integrator_chain(int n);

}  // namespace sfctl
