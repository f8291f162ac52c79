// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "photon_fabric/em/grid.hpp"

namespace pf::em {

// A vertical line of nodes at column i covering rows [j0, j1).
struct Cut {
  int i = 0;
  int j0 = 0;
  int j1 = 0;
  [[nodiscard]] int length() const { return j1 - j0; }
};

enum class Direction { forward = 1, backward = -1 };  // along +x / -x

struct ModeProfile {
  Cut cut;
  Eigen::VectorXd amplitude;  // real for the lossless transverse problem; sum(u^2)*dx = 1
  double n_eff = 0;
  double beta = 0;  // rad/m, beta = k0 * n_eff
  Direction direction = Direction::forward;
};

// Guided eigenmode of (d2/dy2 + k0^2 eps) u = beta^2 u with zero ends.
// Mode 0 is the fundamental; sign is fixed so the largest lobe is positive.
[[nodiscard]] ModeProfile solve_slab_mode(const Eigen::VectorXd& eps_line, double dx, double lambda0,
                                          int mode_index);

// Mode of the permittivity found along `cut` in `grid`.
[[nodiscard]] ModeProfile solve_cut_mode(const SimulationGrid& grid, const Cut& cut, Direction dir,
                                         int mode_index = 0);

// Longitudinal phase per cell that a mode with propagation constant beta acquires on the grid.
[[nodiscard]] double discrete_phase_step(double beta, double dx);

}  // namespace pf::em
