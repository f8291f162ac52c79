// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/routing/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>

#include "photon_fabric/errors.hpp"
#include "photon_fabric/units.hpp"
#include "photon_fabric/fabric/generators.hpp"

namespace pf::routing {

using fabric::CircuitLayout;
using fabric::ElementKind;
using fabric::Placement;

bool is_permutation(const PortMap& m) {
  std::vector<bool> seen(m.size(), false);
  for (int v : m) {
    if (v < 0 || v >= static_cast<int>(m.size()) || seen[static_cast<size_t>(v)]) return false;
    seen[static_cast<size_t>(v)] = true;
  }
  return true;
}

bool verify(const CircuitLayout& layout, const SwitchState& state, const PortMap& request,
            std::optional<double> color) {
  if (request.size() != layout.inputs.size()) return false;
  const TraceResult tr = trace_paths(layout, state, color);
  for (size_t i = 0; i < request.size(); ++i)
    if (request[i] != kAnyOutput && tr.output[i] != request[i]) return false;
  return true;
}

namespace {

void check_request(const CircuitLayout& layout, const PortMap& request) {
  if (request.size() != layout.inputs.size())
    throw InvalidArgument("request covers " + std::to_string(request.size()) + " inputs, layout has " +
                          std::to_string(layout.inputs.size()));
  std::set<int> used;
  for (int v : request) {
    if (v == kAnyOutput) continue;
    if (v < 0 || v >= static_cast<int>(layout.outputs.size())) throw InvalidArgument("requested output out of range");
    if (!used.insert(v).second) throw Unroutable("two inputs requested on output " + std::to_string(v));
  }
}

std::string rail_control(const std::string& stage, int rail) { return stage + "_r" + std::to_string(rail); }

// ---------------------------------------------------------------------------------------------
// Depth-first search over element states with per-rail reachability pruning.

class SearchRouter {
 public:
  SearchRouter(const CircuitLayout& layout, std::optional<double> color, const SwitchState& fixed)
      : layout_(layout), n_(layout.n_rails) {
    if (n_ > 64) throw UnsupportedSize("search routing supports at most 64 rails");
    const size_t cols = layout.columns.size();
    terminated_.assign(cols, {});
    for (const auto& t : layout.terminators) terminated_[static_cast<size_t>(t.column)].push_back(t.rail);

    for (size_t c = 0; c < cols; ++c) {
      for (const auto& p : layout.columns[c].placements) {
        Step s;
        s.column = c;
        s.rail = p.rail;
        s.placement = &p;
        if (p.kind == ElementKind::block) {
          s.kind = Step::block;
        } else if (fabric::is_active(p.kind) && responds(p, color) && !fixed.values.count(p.control)) {
          s.kind = Step::free;
        } else {
          s.kind = element_crosses(p, fixed_or_ambient(p, fixed), color) ? Step::swap : Step::bar;
        }
        if (s.kind != Step::bar) steps_.push_back(s);
      }
      Step t;
      t.kind = Step::terminate;
      t.column = c;
      steps_.push_back(t);
    }

    // post_[c][r]: output rails reachable from rail r once column c (and its terminators) is done.
    post_.assign(cols, std::vector<uint64_t>(static_cast<size_t>(n_), 0));
    std::vector<uint64_t> next(static_cast<size_t>(n_));
    for (int r = 0; r < n_; ++r) next[static_cast<size_t>(r)] = uint64_t{1} << r;
    std::vector<std::vector<const Step*>> by_column(cols);
    for (const auto& s : steps_)
      if (s.kind != Step::terminate) by_column[s.column].push_back(&s);
    for (size_t c = cols; c-- > 0;) {
      std::vector<uint64_t> after = next;
      for (int r : terminated_[c]) after[static_cast<size_t>(r)] = 0;
      post_[c] = after;
      std::vector<uint64_t> before = after;
      for (const Step* s : by_column[c]) {
        const auto a = static_cast<size_t>(s->rail);
        if (s->kind == Step::swap) {
          before[a] = after[a + 1];
          before[a + 1] = after[a];
        } else if (s->kind == Step::free) {
          before[a] = before[a + 1] = after[a] | after[a + 1];
        } else if (s->kind == Step::block) {
          const auto& perm = s->placement->perm;
          for (size_t k = 0; k < perm.size(); ++k) before[a + k] = after[a + static_cast<size_t>(perm[k])];
        }
      }
      next = before;
    }
    start_ = next;
  }

  bool solve(const PortMap& request, SwitchState& out) {
    target_.assign(request.size(), -1);
    std::vector<int> occ(static_cast<size_t>(n_), -1);
    for (size_t i = 0; i < request.size(); ++i) {
      if (request[i] == kAnyOutput) continue;
      const int in = layout_.inputs[i];
      target_[i] = layout_.outputs[static_cast<size_t>(request[i])];
      if (!(start_[static_cast<size_t>(in)] >> target_[i] & 1)) return false;
      occ[static_cast<size_t>(in)] = static_cast<int>(i);
    }
    choice_.clear();
    if (!go(0, occ)) return false;
    for (const auto& [id, a] : choice_) out.values[id] = ControlValue{a, std::nullopt};
    return true;
  }

 private:
  struct Step {
    enum Kind { swap, bar, free, block, terminate } kind = bar;
    size_t column = 0;
    int rail = 0;
    const Placement* placement = nullptr;
  };

  static bool responds(const Placement& p, std::optional<double> color) {
    if (!p.color) return true;
    if (!color) return false;
    return std::abs(*color - *p.color) < *p.color / TraceOptions{}.q / 2;
  }

  static SwitchState fixed_or_ambient(const Placement& p, const SwitchState& fixed) {
    SwitchState s;
    if (!p.control.empty()) {
      const auto it = fixed.values.find(p.control);
      s.values[p.control] = it != fixed.values.end() ? it->second : ControlValue{ambient(p.kind), std::nullopt};
    }
    return s;
  }

  bool feasible(int who, int rail, size_t column) const {
    if (who < 0) return true;
    return post_[column][static_cast<size_t>(rail)] >> target_[static_cast<size_t>(who)] & 1;
  }

  bool go(size_t k, std::vector<int> occ) {
    for (; k < steps_.size(); ++k) {
      const Step& s = steps_[k];
      const auto a = static_cast<size_t>(s.rail);
      switch (s.kind) {
        case Step::terminate:
          for (int r : terminated_[s.column])
            if (occ[static_cast<size_t>(r)] >= 0) return false;
          break;
        case Step::swap: std::swap(occ[a], occ[a + 1]); break;
        case Step::bar: break;
        case Step::block: {
          const auto& perm = s.placement->perm;
          std::vector<int> moved(perm.size(), -1);
          for (size_t q = 0; q < perm.size(); ++q) moved[static_cast<size_t>(perm[q])] = occ[a + q];
          for (size_t q = 0; q < perm.size(); ++q) occ[a + q] = moved[q];
          break;
        }
        case Step::free: {
          const Actuation amb = ambient(s.placement->kind);
          const int u = occ[a];
          const int v = occ[a + 1];
          if (u < 0 && v < 0) {
            choice_[s.placement->control] = amb;
            if (amb == Actuation::cross) std::swap(occ[a], occ[a + 1]);
            break;
          }
          for (const Actuation opt : {amb, amb == Actuation::cross ? Actuation::bar : Actuation::cross}) {
            const bool cross = opt == Actuation::cross;
            const int up = cross ? v : u;
            const int down = cross ? u : v;
            if (!feasible(up, s.rail, s.column) || !feasible(down, s.rail + 1, s.column)) continue;
            std::vector<int> branch = occ;
            branch[a] = up;
            branch[a + 1] = down;
            choice_[s.placement->control] = opt;
            if (go(k + 1, std::move(branch))) return true;
          }
          return false;
        }
      }
    }
    return true;
  }

  const CircuitLayout& layout_;
  int n_;
  std::vector<Step> steps_;
  std::vector<std::vector<int>> terminated_;
  std::vector<std::vector<uint64_t>> post_;
  std::vector<uint64_t> start_;
  std::vector<int> target_;
  std::map<std::string, Actuation> choice_;
};

// ---------------------------------------------------------------------------------------------
// Dedicated algorithms.

SwitchState solve_crosspoint(const CircuitLayout& layout, const PortMap& req) {
  SwitchState s = ambient_state(layout);
  for (size_t i = 0; i < req.size(); ++i) {
    if (req[i] == kAnyOutput) continue;
    const std::string id = "xp_i" + std::to_string(i) + "_o" + std::to_string(req[i]);
    if (!s.values.count(id)) throw InvalidArgument("layout lacks crosspoint " + id);
    s.set(id, Actuation::bar);
  }
  return s;
}

SwitchState solve_spanke_benes(const CircuitLayout& layout, const PortMap& req) {
  if (!is_permutation(req)) throw InvalidArgument("spanke_benes routing needs a full permutation");
  SwitchState s;
  std::vector<int> key(static_cast<size_t>(layout.n_rails));
  for (size_t i = 0; i < req.size(); ++i) key[static_cast<size_t>(layout.inputs[i])] = req[i];
  for (const auto& col : layout.columns)
    for (const auto& p : col.placements) {
      const auto r = static_cast<size_t>(p.rail);
      const bool exchange = key[r] > key[r + 1];
      if (exchange) std::swap(key[r], key[r + 1]);
      s.set(p.control, exchange ? Actuation::cross : Actuation::bar);
    }
  return s;
}

// Banyan half of a Benes block: self-routing by destination bits, most significant first.
bool route_banyan(int level, int base, int size, const std::vector<std::pair<int, int>>& signals, SwitchState& s) {
  const std::string stage = "cb" + std::to_string(1 + level);
  std::vector<int> at(static_cast<size_t>(size), -1);  // local rail -> local destination
  for (const auto& [rail, dest] : signals) at[static_cast<size_t>(rail)] = dest;
  const int half = size / 2;
  std::vector<std::pair<int, int>> upper;
  std::vector<std::pair<int, int>> lower;
  for (int q = 0; q < half; ++q) {
    const int d0 = at[static_cast<size_t>(2 * q)];
    const int d1 = at[static_cast<size_t>(2 * q + 1)];
    const bool low0 = d0 >= half;
    const bool low1 = d1 >= half;
    if (d0 >= 0 && d1 >= 0 && low0 == low1) return false;
    bool cross = true;  // ambient when dark
    if (d0 >= 0)
      cross = low0;
    else if (d1 >= 0)
      cross = !low1;
    s.set(rail_control(stage, base + 2 * q), cross ? Actuation::cross : Actuation::bar);
    const int top = cross ? d1 : d0;
    const int bottom = cross ? d0 : d1;
    if (size == 2) continue;
    if (top >= 0) upper.emplace_back(q, top);
    if (bottom >= 0) lower.emplace_back(q, bottom - half);
  }
  if (size == 2) return true;
  return route_banyan(level + 1, base, half, upper, s) && route_banyan(level + 1, base + half, half, lower, s);
}

SwitchState solve_clos(const CircuitLayout& layout, const PortMap& req) {
  if (layout.n_rails != 16 || !is_permutation(req)) throw InvalidArgument("clos_benes_16 routing needs a 16-port permutation");
  std::vector<int> inv(16);
  for (int i = 0; i < 16; ++i) inv[static_cast<size_t>(req[static_cast<size_t>(i)])] = i;

  // Loops of the looping algorithm: rel[i] is input i's block relative to its loop's first input.
  std::vector<int> loop_of(16, -1);
  std::vector<int> rel(16, 0);
  int loops = 0;
  for (int start = 0; start < 16; ++start) {
    if (loop_of[static_cast<size_t>(start)] >= 0) continue;
    int cur = start;
    int r = 0;
    while (loop_of[static_cast<size_t>(cur)] < 0) {
      loop_of[static_cast<size_t>(cur)] = loops;
      rel[static_cast<size_t>(cur)] = r;
      const int partner = cur ^ 1;  // shares the first-stage switch
      loop_of[static_cast<size_t>(partner)] = loops;
      rel[static_cast<size_t>(partner)] = r ^ 1;
      cur = inv[static_cast<size_t>(req[static_cast<size_t>(partner)] ^ 1)];  // shares partner's last-stage switch
    }
    ++loops;
  }

  for (uint32_t bits = 0; bits < (1u << loops); ++bits) {
    SwitchState s;
    std::vector<std::pair<int, int>> block[2];
    std::vector<int> from_block(16, -1);  // output -> block that delivers it
    for (int i = 0; i < 16; ++i) {
      const int b = rel[static_cast<size_t>(i)] ^ static_cast<int>(bits >> loop_of[static_cast<size_t>(i)] & 1);
      const int t = req[static_cast<size_t>(i)] / 2;
      block[b].emplace_back(i / 2, ((t & 1) << 2) | (t & 2) | (t >> 2));  // physical middle output
      from_block[static_cast<size_t>(req[static_cast<size_t>(i)])] = b;
      if (i % 2 == 0) s.set(rail_control("cb0", i), b == 0 ? Actuation::bar : Actuation::cross);
    }
    for (int t = 0; t < 8; ++t)
      s.set(rail_control("cb4", 2 * t), from_block[static_cast<size_t>(2 * t)] == 0 ? Actuation::bar : Actuation::cross);
    if (route_banyan(0, 0, 8, block[0], s) && route_banyan(0, 8, 8, block[1], s)) return s;
  }
  throw Unroutable("permutation is not realizable on the 40-switch Clos-Benes network");
}

SwitchState solve_search(const CircuitLayout& layout, const PortMap& req, std::optional<double> color,
                         const SwitchState& fixed = {}) {
  SearchRouter router(layout, color, fixed);
  SwitchState out;
  if (!router.solve(req, out)) throw Unroutable("no element state realizes the request on " + layout.kind);
  return out;
}

SwitchState with_ambient_defaults(const CircuitLayout& layout, SwitchState s) {
  for (const auto& col : layout.columns)
    for (const auto& p : col.placements)
      if (!p.control.empty() && !s.values.count(p.control)) s.set(p.control, ambient(p.kind));
  return s;
}

}  // namespace

SwitchState solve_state(const CircuitLayout& layout, const PortMap& request, std::optional<double> color) {
  layout.validate();
  check_request(layout, request);
  SwitchState s;
  if (layout.kind == "crosspoint")
    s = solve_crosspoint(layout, request);
  else if (layout.kind == "spanke_benes")
    s = solve_spanke_benes(layout, request);
  else if (layout.kind == "clos_benes_16")
    s = solve_clos(layout, request);
  else
    s = solve_search(layout, request, color);
  s = with_ambient_defaults(layout, std::move(s));
  if (!verify(layout, s, request, color)) throw std::logic_error("router produced a state that fails the trace check");
  return s;
}

PortMap color_request(const CircuitLayout& layout, const WavelengthRequest& request, double color) {
  PortMap m(layout.inputs.size(), kAnyOutput);
  for (const auto& e : request.entries)
    if (std::abs(e.color - color) < color / TraceOptions{}.q / 2) m[static_cast<size_t>(e.input)] = e.output;
  return m;
}

SwitchState solve_wavelength_routing(const CircuitLayout& layout, const WavelengthRequest& request) {
  layout.validate();
  const std::vector<double> colors = fabric::layout_colors(layout);
  if (colors.empty()) throw InvalidArgument("layout has no color-dedicated elements");
  auto match = [&](double c) {
    for (double x : colors)
      if (std::abs(x - c) < x / TraceOptions{}.q / 2) return x;
    throw InvalidArgument("requested color is not in the layout's palette");
  };

  std::set<std::pair<int, double>> in_used;
  std::set<std::pair<int, double>> out_used;
  for (const auto& e : request.entries) {
    if (e.input < 0 || e.input >= static_cast<int>(layout.inputs.size())) throw InvalidArgument("request input out of range");
    if (e.output < 0 || e.output >= static_cast<int>(layout.outputs.size()))
      throw InvalidArgument("request output out of range");
    const double c = match(e.color);
    if (!in_used.insert({e.input, c}).second) throw Unroutable("input requested twice at one color");
    if (!out_used.insert({e.output, c}).second) throw Unroutable("two signals of one color requested on one output");
  }

  SwitchState acc;
  for (double c : colors) {
    const PortMap sub = color_request(layout, request, c);
    if (std::all_of(sub.begin(), sub.end(), [](int v) { return v == kAnyOutput; })) continue;
    const SwitchState part = solve_search(layout, sub, c, acc);
    for (const auto& [id, v] : part.values) acc.values[id] = v;
  }
  acc = with_ambient_defaults(layout, std::move(acc));
  for (double c : colors)
    if (!verify(layout, acc, color_request(layout, request, c), c))
      throw std::logic_error("wavelength router produced a state that fails the trace check");
  return acc;
}

PortMap request_from_json(const nlohmann::json& j) {
  try {
    const nlohmann::json& arr = j.is_object() ? j.at("permutation") : j;
    PortMap m;
    for (const auto& v : arr) m.push_back(v.is_null() ? kAnyOutput : v.get<int>());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed request: ") + e.what());
  }
}

WavelengthRequest wavelength_request_from_json(const nlohmann::json& j) {
  try {
    WavelengthRequest r;
    for (const auto& e : j.at("entries"))
      r.entries.push_back({e.at("input").get<int>(), from_nm(e.at("color_nm").get<double>()), e.at("output").get<int>()});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed wavelength request: ") + e.what());
  }
}

}  // namespace pf::routing
