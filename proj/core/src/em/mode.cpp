// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/em/mode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "photon_fabric/errors.hpp"

namespace pf::em {

ModeProfile solve_slab_mode(const Eigen::VectorXd& eps_line, double dx, double lambda0, int mode_index) {
  const int n = static_cast<int>(eps_line.size());
  if (n < 3) throw InvalidArgument("mode cut needs at least 3 cells");
  if (mode_index < 0) throw InvalidArgument("negative mode index");

  const double k0 = 2.0 * kPi / lambda0;
  const double inv_dx2 = 1.0 / (dx * dx);
  Eigen::VectorXd diag = k0 * k0 * eps_line.array() - 2.0 * inv_dx2;
  Eigen::VectorXd sub = Eigen::VectorXd::Constant(n - 1, inv_dx2);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw SolverFailure("tridiagonal eigensolver failed");

  const double eps_edge = std::max(eps_line[0], eps_line[n - 1]);
  const double eps_peak = eps_line.maxCoeff();
  int found = 0;
  for (int k = n - 1; k >= 0; --k) {  // eigenvalues ascend
    const double neff2 = es.eigenvalues()[k] / (k0 * k0);
    if (!(neff2 > eps_edge && neff2 < eps_peak)) continue;
    if (found++ != mode_index) continue;

    ModeProfile m;
    m.beta = std::sqrt(es.eigenvalues()[k]);
    m.n_eff = std::sqrt(neff2);
    m.amplitude = es.eigenvectors().col(k);
    m.amplitude /= std::sqrt(m.amplitude.squaredNorm() * dx);
    Eigen::Index peak = 0;
    m.amplitude.cwiseAbs().maxCoeff(&peak);
    if (m.amplitude[peak] < 0) m.amplitude = -m.amplitude;
    m.cut = Cut{0, 0, n};
    return m;
  }
  throw NoGuidedMode("found " + std::to_string(found) + " guided modes, mode " +
                     std::to_string(mode_index) + " requested");
}

ModeProfile solve_cut_mode(const SimulationGrid& grid, const Cut& cut, Direction dir, int mode_index) {
  if (cut.i < 0 || cut.i >= grid.nx || cut.j0 < 0 || cut.j1 > grid.ny || cut.length() < 3)
    throw InvalidArgument("mode cut outside the grid");
  Eigen::VectorXd line = grid.eps.row(cut.i).segment(cut.j0, cut.length()).transpose();
  ModeProfile m = solve_slab_mode(line, grid.dx, grid.lambda0, mode_index);
  m.cut = cut;
  m.direction = dir;
  return m;
}

double discrete_phase_step(double beta, double dx) {
  // 2(1 - cos k)/dx^2 = beta^2 on the five-point stencil.
  const double c = 1.0 - 0.5 * beta * beta * dx * dx;
  if (c <= -1.0) throw InvalidArgument("grid too coarse for this propagation constant");
  return std::acos(c);
}

}  // namespace pf::em
