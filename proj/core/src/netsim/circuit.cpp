// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/netsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "photon_fabric/errors.hpp"

namespace pf::netsim {

using fabric::ElementKind;

namespace {

Matrix2c element_matrix(const fabric::Placement& p, const routing::SwitchState& state, const DeviceParams& params,
                        double wl) {
  switch (p.kind) {
    case ElementKind::crossover: return crossover_matrix(params.crossover, wl);
    case ElementKind::coupler: return coupler_matrix(params.coupler, wl);
    case ElementKind::add_drop: return resonator_matrix(params.resonator, wl, 0.0, p.color.value_or(0.0));
    case ElementKind::resonator:
      return resonator_matrix(params.resonator, wl, routing::delta_n_of(state.at(p.control)), p.color.value_or(0.0));
    case ElementKind::mzi: {
      const double phase = state.at(p.control).act == routing::Actuation::cross ? std::numbers::pi : 0.0;
      return mzi_matrix(params.mzi_coupler, phase, wl);
    }
    case ElementKind::block: break;
  }
  throw InvalidArgument("block elements have no 2x2 matrix");
}

}  // namespace

Eigen::MatrixXcd column_matrix(const fabric::CircuitLayout& layout, size_t column, const routing::SwitchState& state,
                               const DeviceParams& params, double wavelength) {
  const int n = layout.n_rails;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  for (const auto& p : layout.columns.at(column).placements) {
    if (p.kind == ElementKind::block) {
      const double a = std::sqrt(std::pow(10.0, -params.block_loss / 10.0));
      m.block(p.rail, p.rail, p.span(), p.span()).setZero();
      for (int k = 0; k < p.span(); ++k) m(p.rail + p.perm[static_cast<size_t>(k)], p.rail + k) = a;
      continue;
    }
    m.block<2, 2>(p.rail, p.rail) = element_matrix(p, state, params, wavelength);
  }
  for (const auto& t : layout.terminators)
    if (t.column == static_cast<int>(column)) m.row(t.rail).setZero();
  return m;
}

Eigen::MatrixXcd segment_matrix(const fabric::CircuitLayout& layout, size_t first, size_t last,
                                const routing::SwitchState& state, const DeviceParams& params, double wavelength) {
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(layout.n_rails, layout.n_rails);
  for (size_t c = first; c < last; ++c) t = column_matrix(layout, c, state, params, wavelength) * t;
  return t;
}

std::vector<TransferMatrix> circuit_response(const fabric::CircuitLayout& layout, const routing::SwitchState& state,
                                             const DeviceParams& params, const std::vector<double>& wavelengths,
                                             int jobs) {
  layout.validate();
  params.validate();
  for (const auto& id : layout.controls()) (void)state.at(id);

  std::vector<TransferMatrix> out(wavelengths.size());
  auto one = [&](size_t k) {
    out[k].wavelength = wavelengths[k];
    out[k].matrix = segment_matrix(layout, 0, layout.columns.size(), state, params, wavelengths[k]);
  };
  const size_t workers = std::min(static_cast<size_t>(std::max(1, jobs)), std::max<size_t>(1, wavelengths.size()));
  if (workers == 1) {
    for (size_t k = 0; k < wavelengths.size(); ++k) one(k);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (size_t k = w; k < wavelengths.size(); k += workers) one(k);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

double PathMetrics::worst_insertion_loss() const {
  double w = 0;
  for (double v : insertion_loss) w = std::max(w, v);
  return w;
}

double PathMetrics::worst_crosstalk() const {
  double w = kFloorDb;
  for (double v : crosstalk) w = std::max(w, v);
  return w;
}

PathMetrics path_metrics(const fabric::CircuitLayout& layout, const TransferMatrix& response,
                         const std::vector<int>& intended) {
  if (intended.size() != layout.inputs.size()) throw InvalidArgument("intended map must cover every logical input");
  const auto& t = response.matrix;
  PathMetrics pm;
  for (size_t i = 0; i < intended.size(); ++i) {
    const int target = intended[i];
    if (target < 0) {
      pm.insertion_loss.push_back(std::nan(""));
      pm.crosstalk.push_back(std::nan(""));
      continue;
    }
    if (target >= static_cast<int>(layout.outputs.size())) throw InvalidArgument("intended output out of range");
    const int in = layout.inputs[i];
    const double main = std::abs(t(layout.outputs[static_cast<size_t>(target)], in));
    pm.insertion_loss.push_back(main > 0 ? -20.0 * std::log10(main) : -kFloorDb);
    double leak = 0;
    for (size_t j = 0; j < layout.outputs.size(); ++j)
      if (static_cast<int>(j) != target) leak = std::max(leak, std::abs(t(layout.outputs[j], in)));
    pm.crosstalk.push_back(leak > 0 ? std::max(kFloorDb, 20.0 * std::log10(leak)) : kFloorDb);
  }
  return pm;
}

double unitarity_error(const Eigen::MatrixXcd& t) {
  const Eigen::MatrixXcd e = t.adjoint() * t - Eigen::MatrixXcd::Identity(t.cols(), t.cols());
  return e.cwiseAbs().maxCoeff();
}

}  // namespace pf::netsim
