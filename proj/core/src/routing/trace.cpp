// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/routing/trace.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "photon_fabric/errors.hpp"

namespace pf::routing {

using fabric::ElementKind;

int TraceResult::absorbing_terminators() const {
  std::set<int> hit;
  for (int t : terminator)
    if (t >= 0) hit.insert(t);
  return static_cast<int>(hit.size());
}

bool element_crosses(const fabric::Placement& p, const SwitchState& state, std::optional<double> color,
                     const TraceOptions& opts) {
  const auto at_color = [&] {
    if (!p.color) return true;
    if (!color) return false;
    return std::abs(*color - *p.color) < *p.color / opts.q / 2;
  };
  switch (p.kind) {
    case ElementKind::crossover: return true;
    case ElementKind::coupler: return false;
    case ElementKind::block: return false;
    case ElementKind::add_drop: return color && at_color();
    case ElementKind::mzi: return state.at(p.control).act == Actuation::cross;
    case ElementKind::resonator: return state.at(p.control).act == Actuation::cross && at_color();
  }
  return false;
}

TraceResult trace_paths(const fabric::CircuitLayout& layout, const SwitchState& state, std::optional<double> color,
                        const TraceOptions& opts) {
  const size_t n_in = layout.inputs.size();
  TraceResult res;
  res.output.assign(n_in, kStranded);
  res.final_rail = layout.inputs;
  res.terminator.assign(n_in, -1);
  res.active_traversed.assign(n_in, 0);
  res.crossovers_traversed.assign(n_in, 0);
  res.path.assign(n_in, {});

  // occupant[r]: logical input currently on rail r, or -1.
  std::vector<int> occupant(static_cast<size_t>(layout.n_rails), -1);
  for (size_t i = 0; i < n_in; ++i) occupant[static_cast<size_t>(layout.inputs[i])] = static_cast<int>(i);

  std::vector<std::vector<int>> terms_after(layout.columns.size() + 1);
  for (size_t t = 0; t < layout.terminators.size(); ++t)
    terms_after[static_cast<size_t>(layout.terminators[t].column)].push_back(static_cast<int>(t));

  for (size_t c = 0; c < layout.columns.size(); ++c) {
    for (const auto& p : layout.columns[c].placements) {
      // Resolve controls even on dark elements so incomplete states are always reported.
      const bool cross = element_crosses(p, state, color, opts);
      const auto r = static_cast<size_t>(p.rail);
      for (int k = 0; k < p.span(); ++k) {
        const int who = occupant[r + static_cast<size_t>(k)];
        if (who < 0) continue;
        res.path[static_cast<size_t>(who)].push_back(&p);
        if (fabric::is_active(p.kind)) ++res.active_traversed[static_cast<size_t>(who)];
        if (p.kind == ElementKind::crossover) ++res.crossovers_traversed[static_cast<size_t>(who)];
      }
      if (p.kind == ElementKind::block) {
        std::vector<int> moved(p.perm.size(), -1);
        for (size_t k = 0; k < p.perm.size(); ++k) moved[static_cast<size_t>(p.perm[k])] = occupant[r + k];
        for (size_t k = 0; k < p.perm.size(); ++k) occupant[r + k] = moved[k];
      } else if (cross) {
        std::swap(occupant[r], occupant[r + 1]);
      }
    }
    for (int t : terms_after[c]) {
      const auto r = static_cast<size_t>(layout.terminators[static_cast<size_t>(t)].rail);
      const int who = occupant[r];
      if (who < 0) continue;
      res.terminator[static_cast<size_t>(who)] = t;
      res.output[static_cast<size_t>(who)] = kAbsorbed;
      res.final_rail[static_cast<size_t>(who)] = static_cast<int>(r);
      occupant[r] = -1;
    }
  }

  for (size_t r = 0; r < occupant.size(); ++r) {
    const int who = occupant[r];
    if (who < 0) continue;
    res.final_rail[static_cast<size_t>(who)] = static_cast<int>(r);
    const auto it = std::find(layout.outputs.begin(), layout.outputs.end(), static_cast<int>(r));
    res.output[static_cast<size_t>(who)] =
        it == layout.outputs.end() ? kStranded : static_cast<int>(it - layout.outputs.begin());
  }
  return res;
}

}  // namespace pf::routing
