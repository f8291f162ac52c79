// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "photon_fabric/fabric/layout.hpp"
#include "photon_fabric/routing/state.hpp"

namespace pf::routing {

inline constexpr int kAbsorbed = -1;    // ended in a terminator
inline constexpr int kStranded = -2;    // left on a rail that is not a logical output

struct TraceOptions {
  double q = 4500;  // colored elements act within half a linewidth (lambda_r / q / 2) of their color
};

struct TraceResult {
  std::vector<int> output;      // logical output index per logical input, or kAbsorbed / kStranded
  std::vector<int> final_rail;  // rail after the last column, or the rail where it was absorbed
  std::vector<int> terminator;  // index into layout.terminators, or -1
  std::vector<int> active_traversed;
  std::vector<int> crossovers_traversed;
  std::vector<std::vector<const fabric::Placement*>> path;  // elements met, in order

  [[nodiscard]] int absorbing_terminators() const;  // distinct terminators that received a signal
};

// True when the element exchanges its rails for the given color and state.
[[nodiscard]] bool element_crosses(const fabric::Placement& p, const SwitchState& state, std::optional<double> color,
                                   const TraceOptions& opts = {});

// Pure topological trace of every logical input through the columns.
[[nodiscard]] TraceResult trace_paths(const fabric::CircuitLayout& layout, const SwitchState& state,
                                      std::optional<double> color = std::nullopt, const TraceOptions& opts = {});

}  // namespace pf::routing
