// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "photon_fabric/devices/geometry.hpp"
#include "photon_fabric/topopt/filter.hpp"
#include "photon_fabric/topopt/problem.hpp"

namespace pf::devices {

// Reported in place of -inf when no unintended port carries power.
inline constexpr double kCrosstalkFloorDb = -200.0;

struct DeviceMetrics {
  std::string condition;
  double wavelength = 0;
  std::vector<std::string> ports;
  std::vector<double> ratios;   // port power / injected power
  std::vector<bool> intended;
  double injected = 1;
  double insertion_loss = 0;    // dB, -10 log10(sum intended / injected)
  double crosstalk = kCrosstalkFloorDb;  // dB, 10 log10(max unintended / injected)
};

// Raw port powers to ratios, IL and crosstalk.
[[nodiscard]] DeviceMetrics metrics_from_powers(const std::vector<double>& powers, const std::vector<bool>& intended,
                                                double injected);

// Targets with a positive goal are intended ports. A condition whose goals are all zero (the
// post hoc combiner check) takes its brightest port as intended.
[[nodiscard]] std::vector<DeviceMetrics> evaluate_device(const topopt::DesignProblem& problem,
                                                         const Eigen::ArrayXXd& rho_physical,
                                                         const topopt::EvalOptions& opts = {});

struct Spectra {
  std::vector<double> wavelength;
  std::vector<std::string> ports;
  std::vector<std::vector<double>> power;  // power[port][k]
};

// Sweeps one source condition over [start, stop] inclusive. Sources and monitors are rebuilt
// per wavelength; one factorization and one solve per point.
[[nodiscard]] Spectra sweep_device(const Eigen::ArrayXXd& rho_physical, const DeviceGeometry& geom, double start,
                                   double stop, double step, Port input = Port::in_top, int jobs = 1);

[[nodiscard]] std::vector<double> sweep_grid(double start, double stop, double step);

}  // namespace pf::devices
