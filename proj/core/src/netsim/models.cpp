// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/netsim/models.hpp"

#include <algorithm>
#include <cmath>

#include "photon_fabric/errors.hpp"
#include "photon_fabric/units.hpp"

namespace pf::netsim {

namespace {

constexpr cplx kJ{0.0, 1.0};

double db_to_power(double db) { return std::pow(10.0, db / 10.0); }

double json_db(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (j[key].is_null()) return -kInf;  // JSON has no infinity; null means "none"
  return j[key].get<double>();
}

nlohmann::ordered_json db_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

void CouplerParams::validate() const {
  if (!(split_ratio >= 0 && split_ratio <= 1)) throw InvalidArgument("split ratio outside [0, 1]");
  if (!(excess_loss >= 0)) throw InvalidArgument("negative coupler excess loss");
  if (crosstalk_floor > 0) throw InvalidArgument("coupler crosstalk floor above 0 dB");
}

void CrossoverParams::validate() const {
  if (!(insertion_loss >= 0)) throw InvalidArgument("negative crossover insertion loss");
  if (crosstalk > -10) throw InvalidArgument("crossover crosstalk must be at most -10 dB");
  if (!(bandwidth > 0)) throw InvalidArgument("crossover bandwidth must be positive");
}

void ResonatorParams::validate() const {
  if (!(q > 0)) throw InvalidArgument("resonator Q must be positive");
  if (!(extinction > 0)) throw InvalidArgument("resonator extinction must be positive");
  if (!(drop_loss >= 0 && through_loss >= 0)) throw InvalidArgument("negative resonator loss");
  if (!(n_g > 0) || !(lambda_r0 > 0)) throw InvalidArgument("resonator n_g and lambda_r0 must be positive");
}

double crossover_leakage_db(const CrossoverParams& p, double wavelength) {
  const double half = p.bandwidth / 2;
  const double beyond = std::abs(wavelength - p.center) - half;
  if (beyond <= 0 || !std::isfinite(p.crosstalk)) return p.crosstalk;
  return std::min(-3.0, p.crosstalk + 10.0 * std::log10(2.0) * beyond / half);
}

Matrix2c coupler_matrix(const CouplerParams& p, double /*wavelength*/) {
  const double floor = std::isfinite(p.crosstalk_floor) ? db_to_power(p.crosstalk_floor) : 0.0;
  const double kappa = std::clamp(p.split_ratio, floor, 1.0 - floor);
  const double a = std::sqrt(db_to_power(-p.excess_loss));
  Matrix2c m;
  m << std::sqrt(1 - kappa), kJ * std::sqrt(kappa), kJ * std::sqrt(kappa), std::sqrt(1 - kappa);
  return a * m;
}

Matrix2c crossover_matrix(const CrossoverParams& p, double wavelength) {
  const double xt = crossover_leakage_db(p, wavelength);
  const double leak = std::isfinite(xt) ? db_to_power(xt) : 0.0;
  const double pass = std::min(db_to_power(-p.insertion_loss), 1.0 - leak);
  Matrix2c m;
  m << kJ * std::sqrt(leak), std::sqrt(pass), std::sqrt(pass), kJ * std::sqrt(leak);
  return m;
}

Matrix2c resonator_matrix(const ResonatorParams& p, double wavelength, double delta_n, double lambda_r) {
  const double base = lambda_r > 0 ? lambda_r : p.lambda_r0;
  const double h = base / p.q / 2;
  const double delta = wavelength - base * (1.0 + delta_n / p.n_g);
  // Unequal bus couplings set the finite on-resonance through leakage while keeping the
  // lossless element unitary; the two through ports differ in the sign of that leakage.
  const double eps = std::isfinite(p.extinction) ? std::pow(10.0, -p.extinction / 20.0) : 0.0;
  const double s = std::sqrt(1 - eps * eps);
  const cplx den = kJ * delta + h;
  const double at = std::sqrt(db_to_power(-p.through_loss));
  const double ad = std::sqrt(db_to_power(-p.drop_loss));
  Matrix2c m;
  m(0, 0) = at * (kJ * delta - eps * h) / den;
  m(1, 1) = at * (kJ * delta + eps * h) / den;
  m(0, 1) = m(1, 0) = ad * s * h / den;
  return m;
}

Matrix2c mzi_matrix(const CouplerParams& coupler, double phase, double wavelength) {
  const Matrix2c c = coupler_matrix(coupler, wavelength);
  Matrix2c arms = Matrix2c::Zero();
  arms(0, 0) = 1.0;
  arms(1, 1) = -std::exp(kJ * phase);
  return c * arms * c;
}

DeviceParams DeviceParams::nominal() { return DeviceParams{}; }

DeviceParams DeviceParams::lossless() {
  DeviceParams p;
  p.coupler.excess_loss = 0;
  p.mzi_coupler.excess_loss = 0;
  p.crossover.insertion_loss = 0;
  p.crossover.crosstalk = -kInf;
  p.resonator.drop_loss = 0;
  p.resonator.through_loss = 0;
  p.resonator.extinction = kInf;
  p.block_loss = 0;
  return p;
}

void DeviceParams::validate() const {
  coupler.validate();
  mzi_coupler.validate();
  crossover.validate();
  resonator.validate();
  if (!(block_loss >= 0)) throw InvalidArgument("negative block loss");
}

nlohmann::ordered_json to_json(const DeviceParams& p) {
  nlohmann::ordered_json j;
  auto coupler = [](const CouplerParams& c) {
    return nlohmann::ordered_json{{"split_ratio", c.split_ratio},
                                  {"excess_loss_db", c.excess_loss},
                                  {"crosstalk_floor_db", db_or_null(c.crosstalk_floor)}};
  };
  j["coupler"] = coupler(p.coupler);
  j["mzi_coupler"] = coupler(p.mzi_coupler);
  j["crossover"] = {{"insertion_loss_db", p.crossover.insertion_loss},
                    {"crosstalk_db", db_or_null(p.crossover.crosstalk)},
                    {"bandwidth_nm", to_nm(p.crossover.bandwidth)},
                    {"center_nm", to_nm(p.crossover.center)}};
  j["resonator"] = {{"lambda_r0_nm", to_nm(p.resonator.lambda_r0)},
                    {"q", p.resonator.q},
                    {"drop_loss_db", p.resonator.drop_loss},
                    {"through_loss_db", p.resonator.through_loss},
                    {"extinction_db", std::isfinite(p.resonator.extinction) ? nlohmann::ordered_json(p.resonator.extinction)
                                                                             : nlohmann::ordered_json(nullptr)},
                    {"n_g", p.resonator.n_g}};
  j["block_loss_db"] = p.block_loss;
  return j;
}

DeviceParams params_from_json(const nlohmann::json& j) {
  try {
    DeviceParams p;
    auto coupler = [](const nlohmann::json& c, CouplerParams& out) {
      out.split_ratio = c.value("split_ratio", out.split_ratio);
      out.excess_loss = c.value("excess_loss_db", out.excess_loss);
      out.crosstalk_floor = json_db(c, "crosstalk_floor_db", out.crosstalk_floor);
    };
    if (j.contains("coupler")) coupler(j["coupler"], p.coupler);
    if (j.contains("mzi_coupler")) coupler(j["mzi_coupler"], p.mzi_coupler);
    if (j.contains("crossover")) {
      const auto& c = j["crossover"];
      p.crossover.insertion_loss = c.value("insertion_loss_db", p.crossover.insertion_loss);
      p.crossover.crosstalk = json_db(c, "crosstalk_db", p.crossover.crosstalk);
      p.crossover.bandwidth = from_nm(c.value("bandwidth_nm", to_nm(p.crossover.bandwidth)));
      p.crossover.center = from_nm(c.value("center_nm", to_nm(p.crossover.center)));
    }
    if (j.contains("resonator")) {
      const auto& r = j["resonator"];
      p.resonator.lambda_r0 = from_nm(r.value("lambda_r0_nm", to_nm(p.resonator.lambda_r0)));
      p.resonator.q = r.value("q", p.resonator.q);
      p.resonator.drop_loss = r.value("drop_loss_db", p.resonator.drop_loss);
      p.resonator.through_loss = r.value("through_loss_db", p.resonator.through_loss);
      if (r.contains("extinction_db"))
        p.resonator.extinction = r["extinction_db"].is_null() ? kInf : r["extinction_db"].get<double>();
      p.resonator.n_g = r.value("n_g", p.resonator.n_g);
    }
    p.block_loss = j.value("block_loss_db", p.block_loss);
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed device parameters: ") + e.what());
  }
}

}  // namespace pf::netsim
