// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "../support/oracles.hpp"
#include "photon_fabric/devices/geometry.hpp"
#include "photon_fabric/devices/lorentzian.hpp"
#include "photon_fabric/devices/metrics.hpp"
#include "photon_fabric/errors.hpp"
#include "photon_fabric/io/csv.hpp"

using namespace pf;
using namespace pf::devices;

namespace {

// Design density that continues both rails straight through the region.
Eigen::ArrayXXd straight_rails(const DeviceLayout& L) {
  const auto& g = L.geom;
  const double dx = g.dx;
  const int c = L.cells_per_pixel;
  const double yc = (L.region_j0 + (L.py * c - 1) / 2.0) * dx;
  Eigen::ArrayXXd rho = Eigen::ArrayXXd::Zero(L.px, L.py);
  for (int j = 0; j < L.py; ++j) {
    const double y = (L.region_j0 + j * c + (c - 1) / 2.0) * dx;
    double f = 0;
    for (double yr : {yc + g.rail_spacing / 2, yc - g.rail_spacing / 2})
      f += oracle::cell_fraction(y, g.pitch, yr - g.wg_width / 2, yr + g.wg_width / 2);
    rho.col(j) = f;
  }
  return rho;
}

std::vector<double> lorentzian(const std::vector<double>& wl, double lr, double q, double peak, double floor) {
  std::vector<double> y;
  const double h = lr / q / 2;
  for (double l : wl) y.push_back(floor + peak * h * h / ((l - lr) * (l - lr) + h * h));
  return y;
}

}  // namespace

TEST(Metrics, SplitterFigures) {
  // 0.466 + 0.490 of unit input: -10 log10(0.956) = 0.195 dB.
  const auto m = metrics_from_powers({0.466, 0.490}, {true, true}, 1.0);
  EXPECT_NEAR(m.insertion_loss, 0.19542, 1e-5);
  EXPECT_EQ(m.crosstalk, kCrosstalkFloorDb);
  EXPECT_NEAR(metrics_from_powers({0.456, 0.472}, {true, true}, 1.0).insertion_loss, 0.32452, 1e-5);
}

TEST(Metrics, CombinerFiguresUseTwoUnitsInjected) {
  const auto a = metrics_from_powers({1.840, 0.042}, {true, false}, 2.0);
  EXPECT_NEAR(a.insertion_loss, 0.36212, 1e-5);
  EXPECT_NEAR(a.crosstalk, -16.7778, 1e-4);
  const auto b = metrics_from_powers({0.003, 1.882}, {false, true}, 2.0);
  EXPECT_NEAR(b.insertion_loss, 0.26410, 1e-5);
  EXPECT_NEAR(b.crosstalk, -28.2391, 1e-4);
}

TEST(Metrics, CrossoverFigures) {
  const auto top = metrics_from_powers({0.003, 0.959}, {false, true}, 1.0);
  EXPECT_NEAR(top.insertion_loss, 0.18181, 1e-5);
  EXPECT_NEAR(top.crosstalk, -25.2288, 1e-4);
  const auto bottom = metrics_from_powers({0.911, 0.001}, {true, false}, 1.0);
  EXPECT_NEAR(bottom.insertion_loss, 0.40481, 1e-5);
  EXPECT_NEAR(bottom.crosstalk, -30.0, 1e-9);
}

TEST(Metrics, GainClampsLossAtZero) {
  EXPECT_EQ(metrics_from_powers({1.02}, {true}, 1.0).insertion_loss, 0.0);
  EXPECT_THROW((void)metrics_from_powers({0.5}, {true, false}, 1.0), InvalidArgument);
  EXPECT_THROW((void)metrics_from_powers({0.5}, {true}, 0.0), InvalidArgument);
}

TEST(Geometry, Presets) {
  const auto d = DeviceGeometry::desk();
  EXPECT_DOUBLE_EQ(d.region, 4e-6);
  EXPECT_DOUBLE_EQ(d.dx, 40e-9);
  const auto f = DeviceGeometry::full();
  EXPECT_DOUBLE_EQ(f.region, 10e-6);
  EXPECT_DOUBLE_EQ(f.rail_spacing, 9e-6);
  EXPECT_DOUBLE_EQ(f.dx, 20e-9);
}

TEST(Geometry, DeskLayoutDimensions) {
  const auto L = build_layout(DeviceGeometry::desk());
  EXPECT_EQ(L.px, 100);
  EXPECT_EQ(L.background.nx, 2 * 15 + 2 * 38 + 100);
  EXPECT_EQ(L.cut(Port::in_top).i, 18);
  EXPECT_EQ(L.cut(Port::out_top).i, L.background.nx - 19);
  // Top rail sits at larger y.
  EXPECT_GT(L.cut(Port::in_top).j0, L.cut(Port::in_bottom).j0);
  EXPECT_NO_THROW(L.background.validate());
}

TEST(Geometry, RejectsFractionalPitch) {
  auto g = DeviceGeometry::desk();
  g.pitch = 50e-9;
  EXPECT_THROW(g.validate(), InvalidArgument);
  EXPECT_THROW((void)make_device_problem("modulator", DeviceGeometry::desk()), InvalidArgument);
}

TEST(Devices, StraightRailsStayOnTheirRail) {
  const auto geom = DeviceGeometry::desk();
  const auto L = build_layout(geom);
  const auto problem = make_crossover_problem(geom);
  const auto ms = evaluate_device(problem, straight_rails(L));
  ASSERT_EQ(ms.size(), 2u);
  for (const auto& m : ms) {
    // Straight rails are the opposite of a crossover: bar power near 1, crossed power near 0.
    double bar = 0;
    double crossed = 0;
    for (size_t k = 0; k < m.ports.size(); ++k) (m.intended[k] ? crossed : bar) += m.ratios[k];
    EXPECT_GT(bar, 0.95) << m.condition;
    EXPECT_LT(crossed, 1e-3) << m.condition;
    EXPECT_GT(m.crosstalk, -0.25) << m.condition;
  }
}

TEST(Devices, CombinerCheckHasTwoPhaseConditions) {
  const auto p = make_combiner_check(DeviceGeometry::desk());
  ASSERT_EQ(p.conditions.size(), 2u);
  EXPECT_EQ(p.conditions[0].sources.size(), 2u);
  EXPECT_NEAR(p.conditions[0].injected_power(), 2.0, 1e-12);
}

TEST(Devices, SweepOfStraightRails) {
  const auto geom = DeviceGeometry::desk();
  const auto sp = sweep_device(straight_rails(build_layout(geom)), geom, 1540e-9, 1560e-9, 10e-9);
  ASSERT_EQ(sp.wavelength.size(), 3u);
  for (size_t k = 0; k < 3; ++k) {
    EXPECT_GT(sp.power[0][k], 0.95);
    EXPECT_LT(sp.power[1][k], 1e-3);
  }
  EXPECT_THROW((void)sweep_grid(1450e-9, 1560e-9, 1e-9), InvalidArgument);
  EXPECT_EQ(sweep_grid(1548e-9, 1552e-9, 0.01e-9).size(), 401u);
}

TEST(Lorentzian, RecoversSyntheticResonance) {
  const auto wl = sweep_grid(1548e-9, 1552e-9, 0.01e-9);
  const auto fit = fit_lorentzian(wl, lorentzian(wl, 1550.13e-9, 4500, 0.8, 0.01));
  EXPECT_NEAR(fit.lambda_r, 1550.13e-9, 1e-14);
  EXPECT_NEAR(fit.q, 4500, 1e-6 * 4500);
  EXPECT_NEAR(fit.floor, 0.01, 1e-9);
  EXPECT_NEAR(fit.extinction, 10 * std::log10(0.81 / 0.01), 1e-6);
  EXPECT_LT(fit.fit_residual, 1e-9);
}

TEST(Lorentzian, FlatSpectrumHasNoResonance) {
  const auto wl = sweep_grid(1548e-9, 1552e-9, 0.01e-9);
  EXPECT_THROW((void)fit_lorentzian(wl, std::vector<double>(wl.size(), 0.2)), NoResonance);
}

TEST(Lorentzian, UndersampledLinewidthRejected) {
  const auto wl = sweep_grid(1540e-9, 1560e-9, 0.2e-9);
  EXPECT_THROW((void)fit_lorentzian(wl, lorentzian(wl, 1550e-9, 4500, 1.0, 0.0)), InvalidArgument);
}

TEST(Lorentzian, FindsThreeSeparatedPeaks) {
  const auto wl = sweep_grid(1546e-9, 1554e-9, 0.01e-9);
  auto a = lorentzian(wl, 1548e-9, 4500, 0.9, 0.0);
  const auto b = lorentzian(wl, 1550e-9, 4500, 0.9, 0.0);
  const auto c = lorentzian(wl, 1552e-9, 4500, 0.9, 0.0);
  for (size_t k = 0; k < a.size(); ++k) a[k] += b[k] + c[k] + 1e-3;
  const auto found = find_resonances(wl, a);
  ASSERT_EQ(found.size(), 3u);
  EXPECT_NEAR(found[0].lambda_r, 1548e-9, 2e-12);
  EXPECT_NEAR(found[1].lambda_r, 1550e-9, 2e-12);
  EXPECT_NEAR(found[2].lambda_r, 1552e-9, 2e-12);
}

TEST(Golden, DeskDesignsReproduceStoredMetrics) {
  for (const std::string device : {"splitter", "crossover", "resonator"}) {
    const std::string dir = std::string(PF_DATA_DIR) + "/golden/desk_" + device;
    std::ifstream in(dir + "/metrics.json");
    ASSERT_TRUE(in) << dir;
    const auto stored = nlohmann::json::parse(in).at("metrics");
    const auto rho = io::read_field_csv(dir + "/density_binary.csv");
    const auto ms = evaluate_device(make_device_problem(device, DeviceGeometry::desk()), rho);
    for (const auto& m : ms) {
      const auto it = std::find_if(stored.begin(), stored.end(), [&](const auto& j) { return j.at("condition") == m.condition; });
      ASSERT_NE(it, stored.end()) << m.condition;
      for (size_t k = 0; k < m.ports.size(); ++k)
        EXPECT_NEAR(m.ratios[k], it->at("ratios").at(m.ports[k]).template get<double>(), 1e-9) << device << ' ' << m.condition;
    }
  }
}
