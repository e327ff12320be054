#include "sfctl/rbf.hpp"

#include <cassert>
#include <cmath>

namespace sfctl {

void RbfNetwork::basis(std::span<const double> x, std::span<double> out) const {
  assert(static_cast<int>(x.size()) == dim);
  assert(out.size() == static_cast<size_t>(nodes()));
  double w2 = width * width;
  const double* c = centers.data();
  for (int k = 0; k < nodes(); ++k, c += dim) {
    double d2 = 0.0;
    for (int j = 0; j < dim; ++j) {
      double d = x[static_cast<size_t>(j)] - c[j];
      d2 += d * d;
    }
    out[static_cast<size_t>(k)] = std::exp(-d2 / w2);
  }
}

std::vector<double> RbfNetwork::basis(std::span<const double> x) const {
  std::vector<double> out(static_cast<size_t>(nodes()));
  basis(x, out);
  return out;
}

double RbfNetwork::basis_norm_sq(std::span<const double> x) const {
  assert(static_cast<int>(x.size()) == dim);
  double w2 = width * width, sum = 0.0;
  const double* c = centers.data();
  for (int k = 0; k < nodes(); ++k, c += dim) {
    double d2 = 0.0;
    for (int j = 0; j < dim; ++j) {
      double d = x[static_cast<size_t>(j)] - c[j];
      d2 += d * d;
    }
    double p = std::exp(-d2 / w2);
    sum += p * p;
  }
  return sum;
}

RbfNetwork grid_network(int dim, int nodes_per_dim, double lo, double hi,
                        double width) {
  assert(dim >= 1 && nodes_per_dim >= 1 && hi > lo && width > 0.0);
  RbfNetwork net;
  net.dim = dim;
  net.width = width;
  net.box_min = lo;
  net.box_max = hi;
  int total = 1;
  for (int j = 0; j < dim; ++j) total *= nodes_per_dim;
  net.centers.resize(static_cast<size_t>(total) * static_cast<size_t>(dim));
  double step = nodes_per_dim > 1 ? (hi - lo) / (nodes_per_dim - 1) : 0.0;
  double mid = 0.5 * (lo + hi);
  for (int k = 0; k < total; ++k) {
    int rem = k;
    // row-major: last axis varies fastest
    for (int j = dim - 1; j >= 0; --j) {
      int idx = rem % nodes_per_dim;
      rem /= nodes_per_dim;
      net.centers[static_cast<size_t>(k) * dim + static_cast<size_t>(j)] =
          nodes_per_dim > 1 ? lo + step * idx : mid;
    }
  }
  return net;
}

double psi_norm_sq(std::span<const double> psi) {
  double s = 0.0;
  for (double p : psi) s += p * p;
  return s;
}

double psi_h(std::span<const double> psi, NeuralForm form) {
  double nrm = std::sqrt(psi_norm_sq(psi));
  return form == NeuralForm::NormPlusOne ? nrm + 1.0 : nrm;
}

}  // namespace sfctl
