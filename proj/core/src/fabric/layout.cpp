// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/fabric/layout.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "photon_fabric/errors.hpp"
#include "photon_fabric/units.hpp"

namespace pf::fabric {

namespace {

constexpr struct {
  ElementKind kind;
  const char* name;
} kKindNames[] = {
    {ElementKind::resonator, "resonator"}, {ElementKind::mzi, "mzi"},         {ElementKind::crossover, "crossover"},
    {ElementKind::add_drop, "add_drop"},   {ElementKind::coupler, "coupler"}, {ElementKind::block, "block"},
};

}  // namespace

const char* kind_name(ElementKind k) {
  for (const auto& e : kKindNames)
    if (e.kind == k) return e.name;
  return "?";
}

ElementKind kind_from_name(const std::string& s) {
  for (const auto& e : kKindNames)
    if (s == e.name) return e.kind;
  throw InvalidArgument("unknown element kind '" + s + "'");
}

bool is_active(ElementKind k) { return k == ElementKind::resonator || k == ElementKind::mzi; }

void CircuitLayout::validate() const {
  if (n_rails < 0) throw InvalidArgument("negative rail count");
  std::set<std::string> seen;
  for (size_t c = 0; c < columns.size(); ++c) {
    std::vector<bool> used(static_cast<size_t>(n_rails), false);
    for (const auto& p : columns[c].placements) {
      const int span = p.span();
      if (span < 2) throw InvalidArgument("element spans fewer than two rails");
      if (p.rail < 0 || p.rail + span > n_rails)
        throw InvalidArgument("placement in column " + std::to_string(c) + " leaves the rail range");
      for (int r = p.rail; r < p.rail + span; ++r) {
        if (used[static_cast<size_t>(r)])
          throw InvalidArgument("overlapping placements on rail " + std::to_string(r) + " in column " +
                                std::to_string(c));
        used[static_cast<size_t>(r)] = true;
      }
      if (is_active(p.kind) == p.control.empty())
        throw InvalidArgument("active elements need a control id and passive ones must not have one");
      if (!p.control.empty() && !seen.insert(p.control).second)
        throw InvalidArgument("duplicate control id '" + p.control + "'");
      if (p.kind == ElementKind::add_drop && !p.color) throw InvalidArgument("add-drop without a color");
      if (p.kind == ElementKind::block) {
        std::vector<int> s = p.perm;
        std::sort(s.begin(), s.end());
        for (int k = 0; k < span; ++k)
          if (s[static_cast<size_t>(k)] != k) throw InvalidArgument("block permutation is not a bijection");
      }
    }
  }
  for (const auto& t : terminators)
    if (t.rail < 0 || t.rail >= n_rails || t.column < 0 || t.column >= static_cast<int>(columns.size()))
      throw InvalidArgument("terminator outside the layout");
  for (int r : inputs)
    if (r < 0 || r >= n_rails) throw InvalidArgument("input rail out of range");
  for (int r : outputs)
    if (r < 0 || r >= n_rails) throw InvalidArgument("output rail out of range");
}

std::vector<std::string> CircuitLayout::controls() const {
  std::vector<std::string> out;
  for (const auto& col : columns)
    for (const auto& p : col.placements)
      if (!p.control.empty()) out.push_back(p.control);
  return out;
}

const Placement* CircuitLayout::find(const std::string& control) const {
  for (const auto& col : columns)
    for (const auto& p : col.placements)
      if (p.control == control) return &p;
  return nullptr;
}

ComponentCounts count_components(const CircuitLayout& layout) {
  ComponentCounts c;
  c.rails = layout.n_rails;
  c.columns = static_cast<int>(layout.columns.size());
  c.terminators = static_cast<int>(layout.terminators.size());
  for (const auto& col : layout.columns)
    for (const auto& p : col.placements) {
      switch (p.kind) {
        case ElementKind::resonator:
        case ElementKind::mzi: ++c.active; break;
        case ElementKind::crossover: ++c.passive_crossovers; break;
        case ElementKind::add_drop:
        case ElementKind::coupler: ++c.passive_resonators; break;
        case ElementKind::block: ++c.blocks; break;
      }
    }
  return c;
}

nlohmann::ordered_json to_json(const CircuitLayout& layout) {
  nlohmann::ordered_json j;
  j["kind"] = layout.kind;
  j["n_rails"] = layout.n_rails;
  j["rail_pitch_um"] = kRailPitch * 1e6;
  j["column_pitch_um"] = kColumnPitch * 1e6;
  j["inputs"] = layout.inputs;
  j["outputs"] = layout.outputs;
  auto cols = nlohmann::ordered_json::array();
  for (const auto& col : layout.columns) {
    auto ps = nlohmann::ordered_json::array();
    for (const auto& p : col.placements) {
      nlohmann::ordered_json e;
      e["rail"] = p.rail;
      e["kind"] = kind_name(p.kind);
      e["control"] = p.control.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(p.control);
      e["color_nm"] = p.color ? nlohmann::ordered_json(to_nm(*p.color)) : nlohmann::ordered_json(nullptr);
      e["color_index"] = p.color_index >= 0 ? nlohmann::ordered_json(p.color_index) : nlohmann::ordered_json(nullptr);
      if (p.kind == ElementKind::block) e["perm"] = p.perm;
      ps.push_back(std::move(e));
    }
    nlohmann::ordered_json cj;
    cj["placements"] = std::move(ps);
    cols.push_back(std::move(cj));
  }
  j["columns"] = std::move(cols);
  auto terms = nlohmann::ordered_json::array();
  for (const auto& t : layout.terminators) terms.push_back({{"rail", t.rail}, {"column", t.column}});
  j["terminators"] = std::move(terms);
  return j;
}

CircuitLayout layout_from_json(const nlohmann::json& j) {
  try {
    CircuitLayout L;
    L.kind = j.value("kind", std::string{"custom"});
    L.n_rails = j.at("n_rails").get<int>();
    if (j.contains("inputs")) L.inputs = j.at("inputs").get<std::vector<int>>();
    if (j.contains("outputs")) L.outputs = j.at("outputs").get<std::vector<int>>();
    for (const auto& cj : j.at("columns")) {
      Column col;
      for (const auto& e : cj.at("placements")) {
        Placement p;
        p.rail = e.at("rail").get<int>();
        p.kind = kind_from_name(e.at("kind").get<std::string>());
        if (e.contains("control") && !e["control"].is_null()) p.control = e["control"].get<std::string>();
        if (e.contains("color_nm") && !e["color_nm"].is_null()) p.color = from_nm(e["color_nm"].get<double>());
        if (e.contains("color_index") && !e["color_index"].is_null()) p.color_index = e["color_index"].get<int>();
        if (e.contains("perm")) p.perm = e["perm"].get<std::vector<int>>();
        col.placements.push_back(std::move(p));
      }
      L.columns.push_back(std::move(col));
    }
    if (j.contains("terminators"))
      for (const auto& t : j["terminators"]) L.terminators.push_back({t.at("rail").get<int>(), t.at("column").get<int>()});
    if (L.inputs.empty())
      for (int r = 0; r < L.n_rails; ++r) L.inputs.push_back(r);
    if (L.outputs.empty()) L.outputs = L.inputs;
    L.validate();
    return L;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed layout JSON: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const ComponentCounts& c) {
  nlohmann::ordered_json j;
  j["active"] = c.active;
  j["crossovers"] = c.passive_crossovers;
  j["passive_resonators"] = c.passive_resonators;
  j["blocks"] = c.blocks;
  j["terminators"] = c.terminators;
  j["rails"] = c.rails;
  j["columns"] = c.columns;
  return j;
}

}  // namespace pf::fabric
