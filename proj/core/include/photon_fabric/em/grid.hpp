// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>

#include <Eigen/Core>

namespace pf::em {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEpsSilicon = 12.1;
inline constexpr double kEpsSilica = 2.07;

using cplx = std::complex<double>;

// Uniform 2D grid with a stretched-coordinate absorbing frame on all four sides.
// Node (i, j) sits at x = i*dx, y = j*dx.
struct SimulationGrid {
  double dx = 40e-9;
  int nx = 0;
  int ny = 0;
  double lambda0 = 1550e-9;
  Eigen::ArrayXXd eps;  // nx x ny relative permittivity
  int pml_cells = 15;
  int pml_order = 3;
  double pml_reflection = 1e-4;              // target normal-incidence reflection
  std::optional<double> pml_sigma_max = {};  // overrides the value derived from pml_reflection

  [[nodiscard]] double k0() const { return 2.0 * kPi / lambda0; }
  [[nodiscard]] double sigma_max() const;
  [[nodiscard]] int index(int i, int j) const { return i * ny + j; }
  [[nodiscard]] int size() const { return nx * ny; }
  [[nodiscard]] bool in_interior(int i, int j) const {
    return i >= pml_cells && i < nx - pml_cells && j >= pml_cells && j < ny - pml_cells;
  }
  // Throws InvalidArgument when a structural invariant is violated.
  void validate() const;

  static SimulationGrid uniform(int nx, int ny, double dx, double lambda0, double eps_value);
};

// Complex coordinate stretch s(d) = 1 - j*sigma_max*(d/L)^m, d the depth into the layer.
[[nodiscard]] cplx pml_stretch(double depth, double thickness, int order, double sigma_max);

// Stretch factor at fractional node position `pos` along an axis of n nodes.
[[nodiscard]] cplx axis_stretch(const SimulationGrid& grid, double pos, int n);

// Out-of-plane field component on every node of a grid, stored with the grid's index().
struct ComplexField {
  int nx = 0;
  int ny = 0;
  double dx = 0;
  Eigen::VectorXcd values;

  [[nodiscard]] cplx operator()(int i, int j) const { return values[i * ny + j]; }
  [[nodiscard]] cplx& operator()(int i, int j) { return values[i * ny + j]; }
};

}  // namespace pf::em
