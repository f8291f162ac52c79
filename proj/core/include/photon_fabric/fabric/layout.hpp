// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pf::fabric {

enum class ElementKind {
  resonator,  // electro-optic add-drop switch; ambient cross at its color
  mzi,        // interferometric switch; ambient bar
  crossover,  // passive broadband exchange
  add_drop,   // passive add-drop dedicated to one color
  coupler,    // passive 3 dB splitter/combiner
  block,      // abstract multi-rail permutation (multi-crossed waveguide region)
};

[[nodiscard]] const char* kind_name(ElementKind k);
[[nodiscard]] ElementKind kind_from_name(const std::string& s);
[[nodiscard]] bool is_active(ElementKind k);

struct Placement {
  int rail = 0;  // lowest occupied rail
  ElementKind kind = ElementKind::crossover;
  std::string control;                 // empty for passive elements
  std::optional<double> color;         // resonance wavelength (m) for color-dedicated elements
  int color_index = -1;                // channel index within the layout's palette, -1 if uncolored
  std::vector<int> perm;               // block only: input offset k leaves on offset perm[k]

  [[nodiscard]] int span() const { return kind == ElementKind::block ? static_cast<int>(perm.size()) : 2; }
};

struct Column {
  std::vector<Placement> placements;
};

// Absorber placed on a rail after the given column.
struct Terminator {
  int rail = 0;
  int column = 0;
  bool operator<(const Terminator& o) const { return column != o.column ? column < o.column : rail < o.rail; }
  bool operator==(const Terminator& o) const { return rail == o.rail && column == o.column; }
};

struct CircuitLayout {
  std::string kind;  // generator name, informational
  int n_rails = 0;
  std::vector<Column> columns;
  std::vector<Terminator> terminators;
  std::vector<int> inputs;   // rail of each logical input
  std::vector<int> outputs;  // rail of each logical output

  // Throws InvalidArgument on overlap, out-of-range rails, duplicate controls or malformed blocks.
  void validate() const;
  [[nodiscard]] std::vector<std::string> controls() const;
  [[nodiscard]] const Placement* find(const std::string& control) const;
};

struct ComponentCounts {
  int active = 0;
  int passive_crossovers = 0;
  int passive_resonators = 0;  // color-dedicated add-drops and couplers
  int blocks = 0;
  int terminators = 0;
  int rails = 0;
  int columns = 0;
};

[[nodiscard]] ComponentCounts count_components(const CircuitLayout& layout);

// Stable key order for golden files.
[[nodiscard]] nlohmann::ordered_json to_json(const CircuitLayout& layout);
[[nodiscard]] CircuitLayout layout_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::ordered_json to_json(const ComponentCounts& c);

// Physical pitches recorded in serialized layouts.
inline constexpr double kRailPitch = 9e-6;
inline constexpr double kColumnPitch = 12e-6;

}  // namespace pf::fabric
