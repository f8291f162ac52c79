// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/devices/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "photon_fabric/errors.hpp"

namespace pf::devices {

const char* port_name(Port p) {
  switch (p) {
    case Port::in_top: return "in_top";
    case Port::in_bottom: return "in_bottom";
    case Port::out_top: return "out_top";
    case Port::out_bottom: return "out_bottom";
  }
  return "?";
}

DeviceGeometry DeviceGeometry::full() { return DeviceGeometry{}; }

DeviceGeometry DeviceGeometry::desk() {
  DeviceGeometry g;
  g.region = 4e-6;
  g.rail_spacing = 2e-6;
  g.dx = 40e-9;
  g.pitch = 40e-9;
  return g;
}

DeviceGeometry DeviceGeometry::preset(Scale s) { return s == Scale::desk ? desk() : full(); }

void DeviceGeometry::validate() const {
  if (!(dx > 0 && pitch > 0 && region > 0 && wg_width > 0 && lead > 0 && margin >= 0))
    throw InvalidArgument("device geometry lengths must be positive");
  const double ratio = pitch / dx;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 || ratio < 1)
    throw InvalidArgument("pixel pitch must be an integer multiple of the grid step");
  if (rail_spacing + wg_width > region + 2 * margin)
    throw InvalidArgument("rails do not fit between the cladding margins");
  if (lead < 6 * dx) throw InvalidArgument("leads too short to host ports");
}

namespace {

double overlap_fraction(double y, double dx, double lo, double hi) {
  const double a = std::max(y - dx / 2, lo);
  const double b = std::min(y + dx / 2, hi);
  return std::clamp((b - a) / dx, 0.0, 1.0);
}

}  // namespace

DeviceLayout build_layout(const DeviceGeometry& geom) {
  geom.validate();
  DeviceLayout L;
  L.geom = geom;
  const double dx = geom.dx;
  L.cells_per_pixel = static_cast<int>(std::lround(geom.pitch / dx));
  L.px = static_cast<int>(std::lround(geom.region / geom.pitch));
  L.py = L.px;
  const int c = L.cells_per_pixel;
  const int lead_cells = static_cast<int>(std::lround(geom.lead / dx));
  const int margin_cells = static_cast<int>(std::lround(geom.margin / dx));
  const int pml = geom.pml_cells;
  const int nx = 2 * pml + 2 * lead_cells + L.px * c;
  const int ny = 2 * pml + 2 * margin_cells + L.py * c;
  L.region_i0 = pml + lead_cells;
  L.region_j0 = pml + margin_cells;

  L.background = em::SimulationGrid::uniform(nx, ny, dx, 1550e-9, em::kEpsSilica);
  L.background.pml_cells = pml;

  const double yc = (L.region_j0 + (L.py * c - 1) / 2.0) * dx;
  const double rails[2] = {yc + geom.rail_spacing / 2, yc - geom.rail_spacing / 2};  // top, bottom
  const int region_end = L.region_i0 + L.px * c;
  for (double yr : rails) {
    for (int j = 0; j < ny; ++j) {
      const double f = overlap_fraction(j * dx, dx, yr - geom.wg_width / 2, yr + geom.wg_width / 2);
      if (f <= 0) continue;
      const double eps = em::kEpsSilica + f * (em::kEpsSilicon - em::kEpsSilica);
      for (int i = 0; i < nx; ++i)
        if (i < L.region_i0 || i >= region_end) L.background.eps(i, j) = eps;
    }
  }

  const int i_in = pml + 3;
  const int i_out = nx - 1 - pml - 3;
  for (int k = 0; k < 2; ++k) {
    const double yr = rails[k];
    const double room = std::min({geom.rail_spacing / 2, yr - (pml + 2) * dx, (ny - 1 - pml - 2) * dx - yr});
    const int j0 = static_cast<int>(std::ceil((yr - room) / dx));
    const int j1 = static_cast<int>(std::floor((yr + room) / dx)) + 1;
    L.cuts[k == 0 ? 0 : 1] = em::Cut{i_in, j0, j1};
    L.cuts[k == 0 ? 2 : 3] = em::Cut{i_out, j0, j1};
  }
  return L;
}

em::PortSpec DeviceLayout::source(Port p, double wavelength, double phase, double weight) const {
  if (!is_input(p)) throw InvalidArgument("sources sit on input ports");
  const em::Cut& c = cut(p);
  Eigen::VectorXd line = background.eps.row(c.i).segment(c.j0, c.length()).transpose();
  em::PortSpec s;
  s.role = em::PortRole::source;
  s.mode = em::solve_slab_mode(line, background.dx, wavelength, 0);
  s.mode.cut = c;
  s.mode.direction = em::Direction::forward;
  s.phase = phase;
  s.weight = weight;
  return s;
}

em::PortSpec DeviceLayout::monitor(Port p, double wavelength) const {
  const em::Cut& c = cut(p);
  Eigen::VectorXd line = background.eps.row(c.i).segment(c.j0, c.length()).transpose();
  em::PortSpec m;
  m.role = em::PortRole::monitor;
  m.mode = em::solve_slab_mode(line, background.dx, wavelength, 0);
  m.mode.cut = c;
  m.mode.direction = is_input(p) ? em::Direction::backward : em::Direction::forward;
  return m;
}

topopt::ExcitationCondition make_condition(const DeviceLayout& layout, const std::string& name, double wavelength,
                                           const std::vector<SourceSpec>& sources,
                                           const std::vector<TargetSpec>& targets, double weight) {
  topopt::ExcitationCondition c;
  c.name = name;
  c.wavelength = wavelength;
  c.weight = weight;
  for (const auto& s : sources) c.sources.push_back(layout.source(s.port, wavelength, s.phase, s.weight));
  for (const auto& t : targets)
    c.targets.push_back(topopt::Target{port_name(t.port), layout.monitor(t.port, wavelength), t.goal, t.weight});
  return c;
}

topopt::DesignProblem make_problem_shell(const DeviceLayout& layout, const std::string& name) {
  topopt::DesignProblem p;
  p.name = name;
  p.background = layout.background;
  p.region_i0 = layout.region_i0;
  p.region_j0 = layout.region_j0;
  p.px = layout.px;
  p.py = layout.py;
  p.cells_per_pixel = layout.cells_per_pixel;
  return p;
}

topopt::DesignProblem make_splitter_problem(const DeviceGeometry& geom) {
  const DeviceLayout L = build_layout(geom);
  auto p = make_problem_shell(L, "splitter");
  for (Port in : {Port::in_top, Port::in_bottom}) {
    p.conditions.push_back(make_condition(L, in == Port::in_top ? "top_input" : "bottom_input", 1550e-9,
                                          {{in}}, {{Port::out_top, 0.5}, {Port::out_bottom, 0.5}}));
  }
  return p;
}

topopt::DesignProblem make_crossover_problem(const DeviceGeometry& geom) {
  const DeviceLayout L = build_layout(geom);
  auto p = make_problem_shell(L, "crossover");
  p.conditions.push_back(make_condition(L, "top_input", 1550e-9, {{Port::in_top}},
                                        {{Port::out_bottom, 1.0}, {Port::out_top, 0.0}}));
  p.conditions.push_back(make_condition(L, "bottom_input", 1550e-9, {{Port::in_bottom}},
                                        {{Port::out_top, 1.0}, {Port::out_bottom, 0.0}}));
  return p;
}

topopt::DesignProblem make_resonator_problem(const DeviceGeometry& geom) {
  const DeviceLayout L = build_layout(geom);
  auto p = make_problem_shell(L, "resonator");
  p.conditions.push_back(make_condition(L, "drop_1550", 1550e-9, {{Port::in_top}},
                                        {{Port::out_bottom, 1.0}, {Port::out_top, 0.0}}));
  for (double wl : {1548e-9, 1552e-9}) {
    p.conditions.push_back(make_condition(L, wl < 1549e-9 ? "through_1548" : "through_1552", wl, {{Port::in_top}},
                                          {{Port::out_top, 1.0}, {Port::out_bottom, 0.0}}));
  }
  return p;
}

topopt::DesignProblem make_device_problem(const std::string& device, const DeviceGeometry& geom) {
  if (device == "splitter") return make_splitter_problem(geom);
  if (device == "crossover") return make_crossover_problem(geom);
  if (device == "resonator") return make_resonator_problem(geom);
  throw InvalidArgument("unknown device '" + device + "'");
}

topopt::DesignProblem make_combiner_check(const DeviceGeometry& geom) {
  const DeviceLayout L = build_layout(geom);
  auto p = make_problem_shell(L, "combiner");
  const double half_pi = em::kPi / 2;
  for (double sign : {+1.0, -1.0}) {
    p.conditions.push_back(make_condition(L, sign > 0 ? "phase_plus" : "phase_minus", 1550e-9,
                                          {{Port::in_top, 0.0}, {Port::in_bottom, sign * half_pi}},
                                          {{Port::out_top, 0.0, 0.0}, {Port::out_bottom, 0.0, 0.0}}));
  }
  return p;
}

}  // namespace pf::devices
