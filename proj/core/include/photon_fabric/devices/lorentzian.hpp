// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace pf::devices {

struct ResonanceFit {
  double lambda_r = 0;      // m
  double q = 0;             // lambda_r / FWHM
  double fwhm = 0;          // m
  double peak = 0;          // fitted peak height above the floor
  double floor = 0;         // fitted baseline
  double extinction = 0;    // dB, (peak + floor) / floor
  double fit_residual = 0;  // RMS residual over the fitted window / peak
};

// Least-squares fit of floor + A h^2 / ((l - l_r)^2 + h^2) to a drop spectrum.
// Throws NoResonance when the peak rises less than 3 dB above the band floor and
// InvalidArgument when fewer than 7 samples fall inside one linewidth.
[[nodiscard]] ResonanceFit fit_lorentzian(const std::vector<double>& wavelength, const std::vector<double>& drop);

// All peaks with at least 3 dB topographic prominence, each fitted on its own window.
[[nodiscard]] std::vector<ResonanceFit> find_resonances(const std::vector<double>& wavelength,
                                                        const std::vector<double>& drop);

}  // namespace pf::devices
