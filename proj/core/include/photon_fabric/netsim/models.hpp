// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace pf::netsim {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Entry (j, i) of every 2x2 is the field transmission from input rail i to output rail j,
// with index 0 the upper rail of the pair. Exchanged (cross/drop) paths carry the +90 degree
// phase for couplers; the crossover is a real permutation at zero leakage.

struct CouplerParams {
  double split_ratio = 0.5;        // power fraction to the cross port
  double excess_loss = 0.26;       // dB
  double crosstalk_floor = -kInf;  // dB, lower bound on either port's power fraction
  void validate() const;
};

struct CrossoverParams {
  double insertion_loss = 0.29;  // dB on the exchange path
  double crosstalk = -27.0;      // dB leaked to the through path inside the band
  double bandwidth = 28e-9;      // flat band, full width
  double center = 1550e-9;
  void validate() const;
};

struct ResonatorParams {
  double lambda_r0 = 1550e-9;
  double q = 4500;
  double drop_loss = 0.5;     // dB
  double through_loss = 0.1;  // dB
  double extinction = 20.0;   // dB, through-port suppression on resonance
  double n_g = 6.75;
  void validate() const;

  [[nodiscard]] double linewidth() const { return lambda_r0 / q; }
  [[nodiscard]] double tuned_resonance(double delta_n) const { return lambda_r0 * (1.0 + delta_n / n_g); }
};

// Crosstalk (dB) of the crossover at a wavelength: flat inside +/- bandwidth/2, then leakage
// power doubles for every further bandwidth/2 of detuning, capped at -3 dB.
[[nodiscard]] double crossover_leakage_db(const CrossoverParams& p, double wavelength);

[[nodiscard]] Matrix2c coupler_matrix(const CouplerParams& p, double wavelength);
[[nodiscard]] Matrix2c crossover_matrix(const CrossoverParams& p, double wavelength);
// lambda_r overrides lambda_r0 (color-dedicated elements); delta_n is the applied index shift.
[[nodiscard]] Matrix2c resonator_matrix(const ResonatorParams& p, double wavelength, double delta_n = 0.0,
                                        double lambda_r = 0.0);
// Arms carry phases (0, phi + pi): phi = 0 is bar, phi = pi is cross.
[[nodiscard]] Matrix2c mzi_matrix(const CouplerParams& coupler, double phase, double wavelength);

// Parameter set used by circuit composition.
struct DeviceParams {
  CouplerParams coupler;
  CouplerParams mzi_coupler;
  CrossoverParams crossover;
  ResonatorParams resonator;
  double block_loss = 0.0;  // dB per traversal of an abstract permutation block

  static DeviceParams nominal();
  static DeviceParams lossless();
  void validate() const;
};

[[nodiscard]] nlohmann::ordered_json to_json(const DeviceParams& p);
[[nodiscard]] DeviceParams params_from_json(const nlohmann::json& j);

}  // namespace pf::netsim
