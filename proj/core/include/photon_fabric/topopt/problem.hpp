// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "photon_fabric/em/fdfd.hpp"
#include "photon_fabric/topopt/filter.hpp"

namespace pf::topopt {

struct Target {
  std::string name;
  em::PortSpec monitor;
  double goal = 0.0;
  double weight = 1.0;
};

struct ExcitationCondition {
  std::string name;
  double wavelength = 1550e-9;
  std::vector<em::PortSpec> sources;  // modes solved at `wavelength`
  std::vector<Target> targets;
  double weight = 1.0;

  [[nodiscard]] double injected_power() const;
};

// Background grid plus the rectangle of nodes the density field controls. Each pixel covers
// cells_per_pixel x cells_per_pixel nodes starting at (region_i0, region_j0).
struct DesignProblem {
  std::string name;
  em::SimulationGrid background;
  int region_i0 = 0;
  int region_j0 = 0;
  int px = 0;
  int py = 0;
  int cells_per_pixel = 1;
  std::vector<ExcitationCondition> conditions;

  [[nodiscard]] double pitch() const { return background.dx * cells_per_pixel; }
  [[nodiscard]] DensityField uniform_density(double value) const;
  // Grid for `wavelength` with the design region painted from physical densities.
  [[nodiscard]] em::SimulationGrid grid_for(const Eigen::ArrayXXd& rho_physical, double wavelength) const;
  void validate() const;
};

struct Evaluation {
  double objective = 0;
  std::vector<double> condition_objective;
  std::vector<std::vector<double>> powers;  // [condition][target]
  std::vector<std::vector<em::cplx>> amplitudes;
  long solves = 0;
};

struct GradientResult {
  Evaluation eval;
  Eigen::ArrayXXd grad;  // dF/d(rho), px x py
};

struct EvalOptions {
  int jobs = 1;  // wavelength groups solved concurrently
};

// F with the density taken as physical (already filtered/projected or binarized).
[[nodiscard]] Evaluation evaluate_physical(const DesignProblem& problem, const Eigen::ArrayXXd& rho_physical,
                                           const EvalOptions& opts = {});

// F of filter_and_project(rho).
[[nodiscard]] Evaluation evaluate_objective(const DesignProblem& problem, const DensityField& rho,
                                            const FilterSpec& filter, const EvalOptions& opts = {});

// dF/d(rho) through projection, filter and permittivity interpolation; one forward and one
// adjoint solve per condition, one factorization per distinct wavelength.
[[nodiscard]] GradientResult adjoint_gradient(const DesignProblem& problem, const DensityField& rho,
                                              const FilterSpec& filter, const EvalOptions& opts = {});

}  // namespace pf::topopt
