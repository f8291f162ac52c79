// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/devices/lorentzian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "photon_fabric/errors.hpp"

namespace pf::devices {

namespace {

constexpr double kMinProminenceDb = 3.0;
constexpr int kMinSamplesPerLinewidth = 7;

// Parameters: peak height, centre offset, half width, floor. Wavelengths in nm about a reference.
struct LorentzFunctor : Eigen::DenseFunctor<double> {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  LorentzFunctor(Eigen::VectorXd xs, Eigen::VectorXd ys)
      : Eigen::DenseFunctor<double>(4, static_cast<int>(xs.size())), x(std::move(xs)), y(std::move(ys)) {}

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& f) const {
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const double d = x[k] - p[1];
      f[k] = p[3] + p[0] * p[2] * p[2] / (d * d + p[2] * p[2]) - y[k];
    }
    return 0;
  }

  int df(const Eigen::VectorXd& p, Eigen::MatrixXd& jac) const {
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const double d = x[k] - p[1];
      const double h2 = p[2] * p[2];
      const double den = d * d + h2;
      jac(k, 0) = h2 / den;
      jac(k, 1) = p[0] * h2 * 2 * d / (den * den);
      jac(k, 2) = p[0] * 2 * p[2] * d * d / (den * den);
      jac(k, 3) = 1;
    }
    return 0;
  }
};

double to_db(double ratio) { return 10.0 * std::log10(ratio); }

void check_inputs(const std::vector<double>& wl, const std::vector<double>& drop) {
  if (wl.size() != drop.size()) throw InvalidArgument("spectrum arrays differ in length");
  if (wl.size() < 5) throw InvalidArgument("spectrum too short to fit");
  for (size_t k = 1; k < wl.size(); ++k)
    if (!(wl[k] > wl[k - 1])) throw InvalidArgument("wavelengths must increase");
  for (double v : drop)
    if (!(v >= 0) || !std::isfinite(v)) throw InvalidArgument("drop powers must be finite and non-negative");
}

ResonanceFit fit_window(const std::vector<double>& wl, const std::vector<double>& drop, size_t lo, size_t hi,
                        size_t peak) {
  const double ref = wl[peak];
  const auto n = static_cast<Eigen::Index>(hi - lo);
  Eigen::VectorXd xs(n);
  Eigen::VectorXd ys(n);
  double floor0 = drop[lo];
  for (Eigen::Index k = 0; k < n; ++k) {
    xs[k] = (wl[lo + static_cast<size_t>(k)] - ref) * 1e9;
    ys[k] = drop[lo + static_cast<size_t>(k)];
    floor0 = std::min(floor0, ys[k]);
  }
  const double top = drop[peak];
  const double half = floor0 + (top - floor0) / 2;
  size_t a = peak;
  size_t b = peak;
  while (a > lo && drop[a] > half) --a;
  while (b + 1 < hi && drop[b] > half) ++b;
  const double hw0 = std::max((wl[b] - wl[a]) * 1e9 / 2, (wl[1] - wl[0]) * 1e9);

  Eigen::VectorXd p(4);
  p << top - floor0, 0.0, hw0, floor0;
  LorentzFunctor fn(xs, ys);
  Eigen::LevenbergMarquardt<LorentzFunctor> lm(fn);
  lm.setMaxfev(2000);
  lm.minimize(p);
  if (!p.allFinite() || p[0] <= 0 || p[2] == 0) throw NoResonance("Lorentzian fit did not converge");

  ResonanceFit fit;
  const double hw = std::abs(p[2]);
  fit.lambda_r = ref + p[1] * 1e-9;
  fit.fwhm = 2 * hw * 1e-9;
  fit.q = fit.lambda_r / fit.fwhm;
  fit.peak = p[0];
  fit.floor = p[3];
  fit.extinction = p[3] > 0 ? to_db((p[0] + p[3]) / p[3]) : std::numeric_limits<double>::infinity();
  Eigen::VectorXd r(n);
  fn(p, r);
  fit.fit_residual = std::sqrt(r.squaredNorm() / static_cast<double>(n)) / p[0];
  if (fit.lambda_r < wl.front() || fit.lambda_r > wl.back()) throw NoResonance("fitted resonance outside the band");

  int inside = 0;
  for (double w : wl)
    if (std::abs(w - fit.lambda_r) <= fit.fwhm / 2) ++inside;
  if (inside < kMinSamplesPerLinewidth)
    throw InvalidArgument("fewer than 7 samples inside one linewidth; refine the sweep");
  return fit;
}

// Prominence of a local maximum: peak over the higher of the two bounding minima.
double prominence_db(const std::vector<double>& y, size_t k, size_t& left_min, size_t& right_min) {
  size_t l = k;
  double lmin = y[k];
  for (size_t i = k; i-- > 0;) {
    if (y[i] > y[k]) break;
    if (y[i] < lmin) {
      lmin = y[i];
      l = i;
    }
  }
  size_t r = k;
  double rmin = y[k];
  for (size_t i = k + 1; i < y.size(); ++i) {
    if (y[i] > y[k]) break;
    if (y[i] < rmin) {
      rmin = y[i];
      r = i;
    }
  }
  left_min = l;
  right_min = r;
  const double base = std::max(lmin, rmin);
  if (y[k] <= 0) return 0;
  if (base <= 0) return std::numeric_limits<double>::infinity();
  return to_db(y[k] / base);
}

}  // namespace

ResonanceFit fit_lorentzian(const std::vector<double>& wavelength, const std::vector<double>& drop) {
  check_inputs(wavelength, drop);
  const auto top = std::max_element(drop.begin(), drop.end());
  const double floor = *std::min_element(drop.begin(), drop.end());
  if (*top <= 0 || (floor > 0 && to_db(*top / floor) < kMinProminenceDb))
    throw NoResonance("no peak rises 3 dB above the band floor");
  return fit_window(wavelength, drop, 0, drop.size(), static_cast<size_t>(top - drop.begin()));
}

std::vector<ResonanceFit> find_resonances(const std::vector<double>& wavelength, const std::vector<double>& drop) {
  check_inputs(wavelength, drop);
  std::vector<ResonanceFit> out;
  for (size_t k = 1; k + 1 < drop.size(); ++k) {
    if (!(drop[k] > drop[k - 1] && drop[k] >= drop[k + 1])) continue;
    size_t lo = 0;
    size_t hi = 0;
    if (prominence_db(drop, k, lo, hi) < kMinProminenceDb) continue;
    out.push_back(fit_window(wavelength, drop, lo, hi + 1, k));
  }
  return out;
}

}  // namespace pf::devices
