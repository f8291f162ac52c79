// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "photon_fabric/fabric/layout.hpp"
#include "photon_fabric/netsim/models.hpp"
#include "photon_fabric/routing/state.hpp"

namespace pf::netsim {

// Entry (j, i): field transmission from rail i to rail j over the whole layout.
struct TransferMatrix {
  double wavelength = 0;
  Eigen::MatrixXcd matrix;
};

// Crosstalk floor reported when no light leaks.
inline constexpr double kFloorDb = -200.0;

[[nodiscard]] Eigen::MatrixXcd column_matrix(const fabric::CircuitLayout& layout, size_t column,
                                             const routing::SwitchState& state, const DeviceParams& params,
                                             double wavelength);

// Product of columns [first, last) including terminators placed after those columns.
[[nodiscard]] Eigen::MatrixXcd segment_matrix(const fabric::CircuitLayout& layout, size_t first, size_t last,
                                              const routing::SwitchState& state, const DeviceParams& params,
                                              double wavelength);

[[nodiscard]] std::vector<TransferMatrix> circuit_response(const fabric::CircuitLayout& layout,
                                                           const routing::SwitchState& state,
                                                           const DeviceParams& params,
                                                           const std::vector<double>& wavelengths, int jobs = 1);

struct PathMetrics {
  std::vector<double> insertion_loss;  // dB per logical input
  std::vector<double> crosstalk;       // dB per logical input, worst unintended logical output
  [[nodiscard]] double worst_insertion_loss() const;
  [[nodiscard]] double worst_crosstalk() const;
};

// intended[i]: logical output index for logical input i, or -1 to skip that input.
[[nodiscard]] PathMetrics path_metrics(const fabric::CircuitLayout& layout, const TransferMatrix& response,
                                       const std::vector<int>& intended);

// ||T^H T - I||_max
[[nodiscard]] double unitarity_error(const Eigen::MatrixXcd& t);

}  // namespace pf::netsim
