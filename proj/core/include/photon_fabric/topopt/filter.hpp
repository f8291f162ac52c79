// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace pf::topopt {

// Per-pixel material density on a regular pitch; origin is the grid node of pixel (0, 0).
struct DensityField {
  Eigen::ArrayXXd rho;  // px x py, entries in [0, 1]
  double pitch = 20e-9;
  int origin_i = 0;
  int origin_j = 0;

  [[nodiscard]] int px() const { return static_cast<int>(rho.rows()); }
  [[nodiscard]] int py() const { return static_cast<int>(rho.cols()); }
};

inline constexpr double kHardThreshold = std::numeric_limits<double>::infinity();

struct FilterSpec {
  double radius = 120e-9;  // conic kernel radius (m)
  double beta = 1.0;       // projection sharpness; kHardThreshold gives a step
  double eta = 0.5;        // projection threshold
  void validate() const;
};

// Normalized conic filter w(d) = max(0, R - d) as a sparse operator on flattened pixels
// (column-major, matching Eigen's storage of DensityField::rho).
class ConicFilter {
 public:
  ConicFilter(int px, int py, double pitch, double radius);
  [[nodiscard]] Eigen::ArrayXXd apply(const Eigen::ArrayXXd& rho) const;
  [[nodiscard]] Eigen::ArrayXXd apply_transpose(const Eigen::ArrayXXd& g) const;

 private:
  int px_;
  int py_;
  Eigen::SparseMatrix<double> w_;
};

[[nodiscard]] Eigen::ArrayXXd project(const Eigen::ArrayXXd& x, double beta, double eta);
[[nodiscard]] Eigen::ArrayXXd project_derivative(const Eigen::ArrayXXd& x, double beta, double eta);

[[nodiscard]] DensityField filter_and_project(const DensityField& rho, const FilterSpec& spec);

// eps = 2.07 + rho * (12.1 - 2.07), elementwise.
[[nodiscard]] Eigen::ArrayXXd density_to_permittivity(const Eigen::ArrayXXd& rho_tilde);

}  // namespace pf::topopt
