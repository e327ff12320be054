#pragma once

#include <span>
#include <string>
#include <vector>

#include "sfctl/expr.hpp"
#include "sfctl/gains.hpp"
#include "sfctl/math_util.hpp"
#include "sfctl/plant.hpp"
#include "sfctl/rbf.hpp"
#include "sfctl/variant.hpp"

namespace sfctl {

struct Reference {
  enum class Type { Zero, Sine };
  Type type = Type::Sine;
  double amplitude = 0.2;
  double omega = 1.0;

  double y(double t) const;
  double dy(double t) const;
};

// Offsets into the flat coupled state vector:
//   rho | sigma | rho_hat | filter (pos,vel per level 2..n) | theta |
//   tau_hat | d_hat | tau_hatN | d_hatN
struct StateLayout {
  int n = 2;
  Sharing sharing = Sharing::PerSubsystem;
  NeuralForm neural = NeuralForm::SquaredNorm;

  int theta_count() const { return sharing == Sharing::Single ? 1 : n; }
  int rho() const { return 0; }
  int sigma() const { return n; }
  int rho_hat() const { return 2 * n; }
  int filter() const { return 3 * n; }
  int theta() const { return 3 * n + 2 * (n - 1); }
  int tau() const { return theta() + theta_count(); }
  int d_hat() const { return tau() + n; }
  int tau_N() const { return d_hat() + n; }
  int d_hat_N() const { return tau_N() + n; }
  int size() const { return d_hat_N() + n; }

  // level in 2..n (1-based subsystem whose command the filter produces)
  int filter_pos(int level) const { return filter() + 2 * (level - 2); }
  int filter_vel(int level) const { return filter_pos(level) + 1; }

  std::string component_name(int idx) const;
  std::string theta_name(int slot) const;  // L_hat / N_hat naming
};

// Everything the control side is built from. Holds only the known control
// gains of the plant; drift and disturbances are not reachable from here.
struct Controller {
  ControllerVariant variant;
  GainSet gains;
  std::vector<SwitchBoundaries> bounds;  // per state entry
  std::vector<RbfNetwork> nets;          // net i spans rho_1..rho_{i+1}
  std::vector<Expr> H;                   // model-error bound shapes
  KnownGains known;
  bool switching_frozen_on = false;  // ablation: hold every w at 1
  bool composite = true;             // ablation off: beta_z treated as 0
};

// Per-evaluation diagnostics; buffers are reused across calls.
struct StepEval {
  double u = 0.0;
  std::vector<double> w, zeta, lambda, z, g, alpha;

  void resize(int n);
};

// Second-order command-filter rates. The fractional feedback terms make the
// filter output reach a constant input in finite (fixed) time.
void filter_rates(double pos, double vel, double input, double omega, double m,
                  double r, Timing timing, double* dpos, double* dvel);

// Evaluates the full control side at (t, x): switch indicators, bases,
// errors, virtual controls through the filters, the control u, and the rates
// of every control-side state (compensation, filters, estimates, prediction
// model). Plant slots of dx are left untouched. Throws DivergenceError if a
// known gain drops below gains.g_floor.
void controller_step(const Controller& C, const StateLayout& L, double t,
                     std::span<const double> x, const Reference& ref,
                     StepEval& ev, std::span<double> dx);

// Plant at rho0, prediction model at rho0 (zero initial prediction error),
// every other component 0.
std::vector<double> init_state(const StateLayout& L,
                               std::span<const double> rho0);

}  // namespace sfctl
