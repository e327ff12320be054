#include "sfctl/variant.hpp"

#include <array>

namespace sfctl {
namespace {

constexpr std::array<const char*, 12> kNames = {
    "fnt-m1", "fnt-m2", "fnt-m3", "fnt-m1s", "fnt-m2s", "fnt-m3s",
    "fxt-m4", "fxt-m5", "fxt-m6", "fxt-m4s", "fxt-m5s", "fxt-m6s",
};

ControllerVariant decode(int idx) {
  ControllerVariant v;
  v.timing = idx < 6 ? Timing::FiniteTime : Timing::FixedTime;
  v.sharing = (idx % 6) < 3 ? Sharing::PerSubsystem : Sharing::Single;
  switch (idx % 3) {
    case 0: v.neural = NeuralForm::SquaredNorm; break;
    case 1: v.neural = NeuralForm::NormPlusOne; break;
    default: v.neural = NeuralForm::Norm; break;
  }
  return v;
}

}  // namespace

std::string ControllerVariant::name() const {
  int idx = (timing == Timing::FixedTime ? 6 : 0) +
            (sharing == Sharing::Single ? 3 : 0);
  switch (neural) {
    case NeuralForm::SquaredNorm: break;
    case NeuralForm::NormPlusOne: idx += 1; break;
    case NeuralForm::Norm: idx += 2; break;
  }
  return kNames[static_cast<size_t>(idx)];
}

std::optional<ControllerVariant> ControllerVariant::from_name(std::string_view s) {
  for (int i = 0; i < static_cast<int>(kNames.size()); ++i)
    if (s == kNames[static_cast<size_t>(i)]) return decode(i);
  return std::nullopt;
}

const char* const* ControllerVariant::all_names(int* count) {
  *count = static_cast<int>(kNames.size());
  return kNames.data();
}

}  // namespace sfctl
