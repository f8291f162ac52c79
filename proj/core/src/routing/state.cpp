// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/routing/state.hpp"

#include "photon_fabric/errors.hpp"

namespace pf::routing {

using fabric::ElementKind;

const ControlValue& SwitchState::at(const std::string& control) const {
  const auto it = values.find(control);
  if (it == values.end()) throw UnresolvedControl("no state for control '" + control + "'");
  return it->second;
}

Actuation ambient(ElementKind k) { return k == ElementKind::mzi ? Actuation::bar : Actuation::cross; }

SwitchState ambient_state(const fabric::CircuitLayout& layout) {
  SwitchState s;
  for (const auto& col : layout.columns)
    for (const auto& p : col.placements)
      if (!p.control.empty()) s.set(p.control, ambient(p.kind));
  return s;
}

int non_ambient_count(const fabric::CircuitLayout& layout, const SwitchState& state) {
  int n = 0;
  for (const auto& col : layout.columns)
    for (const auto& p : col.placements)
      if (!p.control.empty() && state.at(p.control).act != ambient(p.kind)) ++n;
  return n;
}

int count_in(const SwitchState& state, Actuation a) {
  int n = 0;
  for (const auto& [k, v] : state.values)
    if (v.act == a) ++n;
  return n;
}

double delta_n_of(const ControlValue& v) {
  if (v.delta_n) return *v.delta_n;
  return v.act == Actuation::bar ? kBarDeltaN : 0.0;
}

nlohmann::ordered_json to_json(const SwitchState& s) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.values) {
    nlohmann::ordered_json e;
    e["state"] = v.act == Actuation::cross ? "cross" : "bar";
    if (v.delta_n) e["delta_n"] = *v.delta_n;
    j[k] = std::move(e);
  }
  return j;
}

SwitchState state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("switch state must be a JSON object");
  SwitchState s;
  for (const auto& [k, e] : j.items()) {
    ControlValue v;
    const std::string a = e.is_string() ? e.get<std::string>() : e.value("state", std::string{});
    if (a == "cross")
      v.act = Actuation::cross;
    else if (a == "bar")
      v.act = Actuation::bar;
    else
      throw InvalidArgument("control '" + k + "' must be cross or bar");
    if (e.is_object() && e.contains("delta_n")) v.delta_n = e["delta_n"].get<double>();
    s.values[k] = v;
  }
  return s;
}

}  // namespace pf::routing
