// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/em/grid.hpp"

#include <cmath>
#include <string>

#include "photon_fabric/errors.hpp"

namespace pf::em {

double SimulationGrid::sigma_max() const {
  if (pml_sigma_max) return *pml_sigma_max;
  const double thickness = pml_cells * dx;
  return -(pml_order + 1) * std::log(pml_reflection) / (2.0 * k0() * thickness);
}

void SimulationGrid::validate() const {
  if (!(dx > 0)) throw InvalidArgument("grid spacing must be positive");
  if (pml_cells < 8) throw InvalidArgument("absorbing layer needs at least 8 cells");
  const int min_cells = 3 + 2 * pml_cells;
  if (nx < min_cells || ny < min_cells)
    throw InvalidArgument("grid of " + std::to_string(nx) + "x" + std::to_string(ny) +
                          " is smaller than the absorbing frame allows");
  if (eps.rows() != nx || eps.cols() != ny) throw InvalidArgument("permittivity map does not match grid");
  if ((eps < 1.0).any()) throw InvalidArgument("relative permittivity below 1");
  if (!(lambda0 > 0)) throw InvalidArgument("wavelength must be positive");
}

SimulationGrid SimulationGrid::uniform(int nx, int ny, double dx, double lambda0, double eps_value) {
  SimulationGrid g;
  g.nx = nx;
  g.ny = ny;
  g.dx = dx;
  g.lambda0 = lambda0;
  g.eps = Eigen::ArrayXXd::Constant(nx, ny, eps_value);
  return g;
}

cplx pml_stretch(double depth, double thickness, int order, double sigma_max) {
  if (depth <= 0) return {1.0, 0.0};
  return {1.0, -sigma_max * std::pow(depth / thickness, order)};
}

cplx axis_stretch(const SimulationGrid& grid, double pos, int n) {
  const double lo = grid.pml_cells;
  const double hi = n - 1 - grid.pml_cells;
  double depth = 0;
  if (pos < lo) depth = lo - pos;
  if (pos > hi) depth = pos - hi;
  return pml_stretch(depth * grid.dx, grid.pml_cells * grid.dx, grid.pml_order, grid.sigma_max());
}

}  // namespace pf::em
