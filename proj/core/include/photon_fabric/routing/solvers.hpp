// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "photon_fabric/fabric/layout.hpp"
#include "photon_fabric/routing/state.hpp"
#include "photon_fabric/routing/trace.hpp"

namespace pf::routing {

inline constexpr int kAnyOutput = -1;

// request[i]: logical output for logical input i, or kAnyOutput when input i is unconstrained
// (dark, or blocked as in the selectors).
using PortMap = std::vector<int>;

[[nodiscard]] bool is_permutation(const PortMap& m);

struct WavelengthEntry {
  int input = 0;
  double color = 0;  // m
  int output = 0;
};

struct WavelengthRequest {
  std::vector<WavelengthEntry> entries;
};

// Switch state realizing `request` on the layout, verified with trace_paths before returning.
// Dedicated algorithms: row-column addressing (crosspoint), odd-even transposition
// (spanke_benes), looping with banyan middle blocks (clos_benes_16); every other kind uses a
// depth-first search over element states with reachability pruning. Throws Unroutable.
[[nodiscard]] SwitchState solve_state(const fabric::CircuitLayout& layout, const PortMap& request,
                                      std::optional<double> color = std::nullopt);

// Per-color routing on color-dedicated fabrics. Throws Unroutable for colliding requests or
// when a color's sub-request has no realization.
[[nodiscard]] SwitchState solve_wavelength_routing(const fabric::CircuitLayout& layout,
                                                   const WavelengthRequest& request);

// Sub-request of one color as a PortMap over the layout's logical inputs.
[[nodiscard]] PortMap color_request(const fabric::CircuitLayout& layout, const WavelengthRequest& request,
                                    double color);

// True when trace_paths at `color` realizes every constrained entry of `request`.
[[nodiscard]] bool verify(const fabric::CircuitLayout& layout, const SwitchState& state, const PortMap& request,
                          std::optional<double> color = std::nullopt);

[[nodiscard]] PortMap request_from_json(const nlohmann::json& j);
[[nodiscard]] WavelengthRequest wavelength_request_from_json(const nlohmann::json& j);

}  // namespace pf::routing
