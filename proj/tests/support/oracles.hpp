// SPDX-License-Identifier: Apache-2.0
// Independent reference computations shared by the unit tests and the acceptance binary.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "photon_fabric/em/fdfd.hpp"
#include "photon_fabric/em/grid.hpp"
#include "photon_fabric/em/mode.hpp"

namespace pf::oracle {

// Fundamental even mode of a symmetric three-layer slab from tan(kappa w/2) = gamma/kappa,
// solved by bisection on kappa w/2 in (0, pi/2).
inline double slab_neff_te0(double width, double n_core, double n_clad, double lambda0) {
  const double k0 = 2.0 * em::kPi / lambda0;
  const double v = k0 * width / 2.0 * std::sqrt(n_core * n_core - n_clad * n_clad);
  auto f = [&](double u) { return u * std::tan(u) - std::sqrt(v * v - u * u); };
  double lo = 1e-12;
  double hi = std::min(v, em::kPi / 2.0 - 1e-12);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? hi : lo) = mid;
  }
  const double u = 0.5 * (lo + hi);
  const double kappa = 2.0 * u / width;
  return std::sqrt(n_core * n_core - kappa * kappa / (k0 * k0));
}

// Fraction of the cell [y - dx/2, y + dx/2] inside [lo, hi].
inline double cell_fraction(double y, double dx, double lo, double hi) {
  const double a = std::max(y - dx / 2, lo);
  const double b = std::min(y + dx / 2, hi);
  return std::clamp((b - a) / dx, 0.0, 1.0);
}

// Straight silicon guide of the given width along x, centred in y, with subpixel averaging.
inline em::SimulationGrid straight_guide(double dx, double length, double height, double width, double lambda0) {
  const int nx = static_cast<int>(std::lround(length / dx));
  const int ny = static_cast<int>(std::lround(height / dx));
  auto g = em::SimulationGrid::uniform(nx, ny, dx, lambda0, em::kEpsSilica);
  const double yc = (ny - 1) * dx / 2.0;
  for (int j = 0; j < ny; ++j) {
    const double f = cell_fraction(j * dx, dx, yc - width / 2, yc + width / 2);
    g.eps.col(j) = em::kEpsSilica + f * (em::kEpsSilicon - em::kEpsSilica);
  }
  return g;
}

// Least-squares split of modal amplitudes a_k at columns i_k into two counter-propagating
// waves a_k = A exp(-j theta i_k) + B exp(j theta i_k). Returns |minor|^2 / |major|^2.
inline double standing_wave_ratio(const std::vector<int>& cols, const std::vector<std::complex<double>>& amps,
                                  double theta) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(cols.size()), 2);
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    m(r, 0) = std::polar(1.0, -theta * cols[k]);
    m(r, 1) = std::polar(1.0, theta * cols[k]);
    rhs(r) = amps[k];
  }
  const Eigen::Vector2cd ab = m.colPivHouseholderQr().solve(rhs);
  const double pa = std::norm(ab(0));
  const double pb = std::norm(ab(1));
  return std::min(pa, pb) / std::max(pa, pb);
}

}  // namespace pf::oracle
