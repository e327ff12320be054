#include "sfctl/plant.hpp"

#include <cassert>
#include <cmath>

namespace sfctl {

void plant_rhs(const PlantModel& plant, std::span<const double> rho, double u,
               double t, std::span<double> drho) {
  int n = plant.n;
  assert(static_cast<int>(rho.size()) == n && static_cast<int>(drho.size()) == n);
  for (int i = 0; i < n; ++i) {
    auto head = rho.subspan(0, static_cast<size_t>(i) + 1);
    double next = i + 1 < n ? rho[static_cast<size_t>(i) + 1] : u;
    drho[static_cast<size_t>(i)] =
        plant.h[static_cast<size_t>(i)](head) +
        plant.g[static_cast<size_t>(i)](head) * next +
        plant.d[static_cast<size_t>(i)](t);
  }
}

PlantModel pendulum_model(const PendulumParams& p,
                          std::function<double(double)> d2) {
  PlantModel m;
  m.name = "pendulum";
  m.n = 2;
  double mt = p.cart_mass + p.pole_mass;
  double ge = p.gravity, ma = p.pole_mass, la = p.pole_length;
  auto den = [la, ma, mt](double r1) {
    double c = std::cos(r1);
    return la * (4.0 / 3.0 - ma * c * c / mt);
  };
  m.h.push_back([](std::span<const double>) { return 0.0; });
  m.h.push_back([ge, ma, la, mt, den](std::span<const double> r) {
    double r1 = r[0], r2 = r[1];
    double num = ge * std::sin(r1) -
                 ma * la * r2 * r2 * std::cos(r1) * std::sin(r1) / mt;
    return num / den(r1);
  });
  m.g.push_back([](std::span<const double>) { return 1.0; });
  m.g.push_back([mt, den](std::span<const double> r) {
    return (std::cos(r[0]) / mt) / den(r[0]);
  });
  m.d.push_back([](double) { return 0.0; });
  if (!d2) d2 = [](double) { return 0.0; };
  m.d.push_back(std::move(d2));
  return m;
}

PlantModel integrator_chain(int n) {
  PlantModel m;
  m.name = "integrators";
  m.n = n;
  for (int i = 0; i < n; ++i) {
    m.h.push_back([](std::span<const double>) { return 0.0; });
    m.g.push_back([](std::span<const double>) { return 1.0; });
    m.d.push_back([](double) { return 0.0; });
  }
  return m;
}

}  // namespace sfctl
