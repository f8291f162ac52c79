// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "photon_fabric/em/fdfd.hpp"
#include "photon_fabric/topopt/problem.hpp"

namespace pf::devices {

enum class Scale { desk, full };
enum class Port { in_top, in_bottom, out_top, out_bottom };  // top = larger y

[[nodiscard]] const char* port_name(Port p);

// Two straight 500 nm rails entering and leaving a square design region.
struct DeviceGeometry {
  double region = 10e-6;
  double wg_width = 500e-9;
  double rail_spacing = 9e-6;  // centre to centre
  double lead = 1.5e-6;        // straight guide on each side of the region
  double margin = 0.6e-6;      // cladding between region and absorbing layer, top and bottom
  double dx = 20e-9;
  double pitch = 20e-9;
  int pml_cells = 15;
  double film = 220e-9;  // silicon film thickness, metadata only

  static DeviceGeometry full();
  static DeviceGeometry desk();
  static DeviceGeometry preset(Scale s);
  void validate() const;
};

// Discretized geometry: background permittivity with leads, the design rectangle, port cuts.
struct DeviceLayout {
  DeviceGeometry geom;
  em::SimulationGrid background;
  int region_i0 = 0;
  int region_j0 = 0;
  int px = 0;
  int py = 0;
  int cells_per_pixel = 1;
  em::Cut cuts[4];

  [[nodiscard]] const em::Cut& cut(Port p) const { return cuts[static_cast<int>(p)]; }
  [[nodiscard]] bool is_input(Port p) const { return p == Port::in_top || p == Port::in_bottom; }
  [[nodiscard]] em::PortSpec source(Port p, double wavelength, double phase = 0.0, double weight = 1.0) const;
  [[nodiscard]] em::PortSpec monitor(Port p, double wavelength) const;
};

[[nodiscard]] DeviceLayout build_layout(const DeviceGeometry& geom);

struct SourceSpec {
  Port port;
  double phase = 0.0;
  double weight = 1.0;
};

struct TargetSpec {
  Port port;
  double goal = 0.0;
  double weight = 1.0;
};

[[nodiscard]] topopt::ExcitationCondition make_condition(const DeviceLayout& layout, const std::string& name,
                                                         double wavelength, const std::vector<SourceSpec>& sources,
                                                         const std::vector<TargetSpec>& targets, double weight = 1.0);

[[nodiscard]] topopt::DesignProblem make_problem_shell(const DeviceLayout& layout, const std::string& name);

[[nodiscard]] topopt::DesignProblem make_splitter_problem(const DeviceGeometry& geom);
[[nodiscard]] topopt::DesignProblem make_crossover_problem(const DeviceGeometry& geom);
[[nodiscard]] topopt::DesignProblem make_resonator_problem(const DeviceGeometry& geom);
[[nodiscard]] topopt::DesignProblem make_device_problem(const std::string& device, const DeviceGeometry& geom);

// Combiner conditions: both inputs driven with unit power and a +/- pi/2 relative phase.
[[nodiscard]] topopt::DesignProblem make_combiner_check(const DeviceGeometry& geom);

}  // namespace pf::devices
