// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/topopt/filter.hpp"

#include <cmath>
#include <vector>

#include "photon_fabric/em/grid.hpp"
#include "photon_fabric/errors.hpp"

namespace pf::topopt {

void FilterSpec::validate() const {
  if (radius < 0) throw InvalidArgument("filter radius must be non-negative");
  if (!(beta >= 1)) throw InvalidArgument("projection beta must be at least 1");
  if (!(eta > 0 && eta < 1)) throw InvalidArgument("projection threshold must lie in (0, 1)");
}

ConicFilter::ConicFilter(int px, int py, double pitch, double radius) : px_(px), py_(py), w_(px * py, px * py) {
  const double r = radius / pitch;
  const int reach = static_cast<int>(std::ceil(r));
  std::vector<Eigen::Triplet<double>> trip;
  for (int j = 0; j < py; ++j) {
    for (int i = 0; i < px; ++i) {
      const int row = i + px * j;
      if (r <= 1.0) {
        trip.emplace_back(row, row, 1.0);
        continue;
      }
      double total = 0;
      const size_t first = trip.size();
      for (int dj = -reach; dj <= reach; ++dj) {
        for (int di = -reach; di <= reach; ++di) {
          const int ii = i + di;
          const int jj = j + dj;
          if (ii < 0 || ii >= px || jj < 0 || jj >= py) continue;
          const double w = r - std::hypot(di, dj);
          if (w <= 0) continue;
          trip.emplace_back(row, ii + px * jj, w);
          total += w;
        }
      }
      for (size_t k = first; k < trip.size(); ++k)
        trip[k] = Eigen::Triplet<double>(trip[k].row(), trip[k].col(), trip[k].value() / total);
    }
  }
  w_.setFromTriplets(trip.begin(), trip.end());
}

Eigen::ArrayXXd ConicFilter::apply(const Eigen::ArrayXXd& rho) const {
  const Eigen::Map<const Eigen::VectorXd> v(rho.data(), rho.size());
  Eigen::VectorXd out = w_ * v;
  return Eigen::Map<Eigen::ArrayXXd>(out.data(), px_, py_);
}

Eigen::ArrayXXd ConicFilter::apply_transpose(const Eigen::ArrayXXd& g) const {
  const Eigen::Map<const Eigen::VectorXd> v(g.data(), g.size());
  Eigen::VectorXd out = w_.transpose() * v;
  return Eigen::Map<Eigen::ArrayXXd>(out.data(), px_, py_);
}

Eigen::ArrayXXd project(const Eigen::ArrayXXd& x, double beta, double eta) {
  if (std::isinf(beta)) return (x > eta).cast<double>() + 0.5 * (x == eta).cast<double>();
  const double a = std::tanh(beta * eta);
  const double d = a + std::tanh(beta * (1.0 - eta));
  return (a + (beta * (x - eta)).tanh()) / d;
}

Eigen::ArrayXXd project_derivative(const Eigen::ArrayXXd& x, double beta, double eta) {
  if (std::isinf(beta)) return Eigen::ArrayXXd::Zero(x.rows(), x.cols());
  const double d = std::tanh(beta * eta) + std::tanh(beta * (1.0 - eta));
  const Eigen::ArrayXXd t = (beta * (x - eta)).tanh();
  return beta * (1.0 - t.square()) / d;
}

DensityField filter_and_project(const DensityField& rho, const FilterSpec& spec) {
  spec.validate();
  DensityField out = rho;
  const ConicFilter filter(rho.px(), rho.py(), rho.pitch, spec.radius);
  out.rho = project(filter.apply(rho.rho), spec.beta, spec.eta).min(1.0).max(0.0);
  return out;
}

Eigen::ArrayXXd density_to_permittivity(const Eigen::ArrayXXd& rho_tilde) {
  return em::kEpsSilica + rho_tilde * (em::kEpsSilicon - em::kEpsSilica);
}

}  // namespace pf::topopt
