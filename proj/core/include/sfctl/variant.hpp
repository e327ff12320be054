#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace sfctl {

// Convergence shape of the stabilizing and leakage terms.
enum class Timing { FiniteTime, FixedTime };

// Shape of the neural compensation term in the control law.
//   SquaredNorm: lambda/(2a^2) * theta * psi'psi
//   NormPlusOne: theta * (||psi||+1) * tanh(...)
//   Norm:        theta * ||psi||    * tanh(...)
enum class NeuralForm { SquaredNorm, NormPlusOne, Norm };

// One adaptive neural scalar per subsystem, or a single shared one.
enum class Sharing { PerSubsystem, Single };

struct ControllerVariant {
  Timing timing = Timing::FiniteTime;
  NeuralForm neural = NeuralForm::SquaredNorm;
  Sharing sharing = Sharing::PerSubsystem;

  std::string name() const;
  static std::optional<ControllerVariant> from_name(std::string_view s);
  static const char* const* all_names(int* count);

  bool operator==(const ControllerVariant&) const = default;
};

}  // namespace sfctl
