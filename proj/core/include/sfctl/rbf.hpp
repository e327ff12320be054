#pragma once

#include <span>
#include <vector>

#include "sfctl/variant.hpp"

namespace sfctl {

// Gaussian radial basis network over a box; only the basis vector is owned
// here, the adaptive scalar weights live with the controller state.
struct RbfNetwork {
  int dim = 1;
  std::vector<double> centers;  // nodes x dim, row-major
  double width = 2.0;
  double box_min = -0.25, box_max = 0.25;

  int nodes() const { return static_cast<int>(centers.size()) / dim; }

  // psi_k = exp(-||x - c_k||^2 / width^2)
  void basis(std::span<const double> x, std::span<double> out) const;
  std::vector<double> basis(std::span<const double> x) const;

  // sum_k psi_k^2 without materializing the basis vector
  double basis_norm_sq(std::span<const double> x) const;
};

// Evenly spaced grid of nodes_per_dim^dim centers on [lo, hi]^dim, row-major.
RbfNetwork grid_network(int dim, int nodes_per_dim, double lo, double hi,
                        double width);

double psi_norm_sq(std::span<const double> psi);

// ||psi|| (Norm) or ||psi||+1 (NormPlusOne); SquaredNorm variants do not use it.
double psi_h(std::span<const double> psi, NeuralForm form);

}  // namespace sfctl
