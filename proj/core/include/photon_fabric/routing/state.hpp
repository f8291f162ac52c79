// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "photon_fabric/fabric/layout.hpp"

namespace pf::routing {

enum class Actuation { cross, bar };

// Index shift that moves a resonator off its color: two linewidths at Q = 4500 with n_g = 6.75.
inline constexpr double kBarDeltaN = 0.003;

struct ControlValue {
  Actuation act = Actuation::cross;
  std::optional<double> delta_n;  // analog override for resonators
};

struct SwitchState {
  std::map<std::string, ControlValue> values;

  [[nodiscard]] const ControlValue& at(const std::string& control) const;  // throws UnresolvedControl
  void set(const std::string& control, Actuation a) { values[control] = ControlValue{a, std::nullopt}; }
};

// Unactuated state: cross for resonators, bar for interferometers.
[[nodiscard]] Actuation ambient(fabric::ElementKind k);
[[nodiscard]] SwitchState ambient_state(const fabric::CircuitLayout& layout);

// Number of controls whose actuation differs from the element's ambient state.
[[nodiscard]] int non_ambient_count(const fabric::CircuitLayout& layout, const SwitchState& state);
[[nodiscard]] int count_in(const SwitchState& state, Actuation a);

// Resonator index shift implied by a control value.
[[nodiscard]] double delta_n_of(const ControlValue& v);

[[nodiscard]] nlohmann::ordered_json to_json(const SwitchState& s);
[[nodiscard]] SwitchState state_from_json(const nlohmann::json& j);

}  // namespace pf::routing
