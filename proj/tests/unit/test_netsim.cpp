// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "photon_fabric/errors.hpp"
#include "photon_fabric/fabric/generators.hpp"
#include "photon_fabric/netsim/circuit.hpp"
#include "photon_fabric/netsim/models.hpp"
#include "photon_fabric/routing/solvers.hpp"
#include "photon_fabric/routing/trace.hpp"

using namespace pf;
using namespace pf::netsim;
using pf::fabric::CircuitLayout;
using pf::fabric::ElementKind;
using pf::fabric::Placement;

namespace {

double db(double p) { return 10.0 * std::log10(p); }

CircuitLayout crossover_chain(int k) {
  CircuitLayout L;
  L.kind = "chain";
  L.n_rails = 2;
  L.inputs = {0, 1};
  L.outputs = {0, 1};
  for (int c = 0; c < k; ++c) L.columns.push_back({{Placement{0, ElementKind::crossover}}});
  return L;
}

}  // namespace

TEST(Models, CouplerSplitsAndIsUnitaryWhenLossless) {
  CouplerParams c;
  c.excess_loss = 0;
  const auto m = coupler_matrix(c, 1550e-9);
  EXPECT_NEAR(std::norm(m(0, 0)), 0.5, 1e-15);
  EXPECT_NEAR(std::norm(m(1, 0)), 0.5, 1e-15);
  EXPECT_LT(unitarity_error(m), 1e-15);
  c.excess_loss = 0.26;
  EXPECT_NEAR(db(coupler_matrix(c, 1550e-9).cwiseAbs2().col(0).sum()), -0.26, 1e-12);
}

TEST(Models, CouplerCrosstalkFloorClampsSplit) {
  CouplerParams c;
  c.excess_loss = 0;
  c.split_ratio = 1.0;
  c.crosstalk_floor = -30;
  const auto m = coupler_matrix(c, 1550e-9);
  EXPECT_NEAR(db(std::norm(m(0, 0))), -30, 1e-9);
}

TEST(Models, CrossoverNominal) {
  const CrossoverParams p;
  const auto m = crossover_matrix(p, 1550e-9);
  EXPECT_NEAR(db(std::norm(m(1, 0))), -0.29, 1e-12);
  EXPECT_NEAR(db(std::norm(m(0, 0))), -27.0, 1e-12);
}

TEST(Models, CrossoverBandEdges) {
  // Flat across the 28 nm band, then +3.01 dB per further 14 nm.
  const CrossoverParams p;
  EXPECT_DOUBLE_EQ(crossover_leakage_db(p, 1550e-9 + 14e-9), -27.0);
  EXPECT_NEAR(crossover_leakage_db(p, 1550e-9 + 28e-9), -27.0 + 10 * std::log10(2.0), 1e-9);
  EXPECT_NEAR(crossover_leakage_db(p, 1550e-9 - 42e-9), -27.0 + 20 * std::log10(2.0), 1e-9);
  EXPECT_DOUBLE_EQ(crossover_leakage_db(p, 1700e-9), -3.0);
}

TEST(Models, ResonatorOnResonance) {
  const ResonatorParams p;
  const auto m = resonator_matrix(p, p.lambda_r0);
  // Drop: A_d (1 - eps^2); through: A_t eps^2 with eps = 10^(-20/20).
  EXPECT_NEAR(std::norm(m(1, 0)), std::pow(10.0, -0.05) * (1 - 0.01), 1e-12);
  EXPECT_NEAR(std::norm(m(0, 0)), std::pow(10.0, -0.01) * 0.01, 1e-12);
  EXPECT_NEAR(std::norm(m(1, 1)), std::pow(10.0, -0.01) * 0.01, 1e-12);
}

TEST(Models, ResonatorHalfPowerAtHalfLinewidth) {
  ResonatorParams p;
  p.drop_loss = 0;
  p.extinction = kInf;
  const double h = p.linewidth() / 2;
  EXPECT_NEAR(std::norm(resonator_matrix(p, p.lambda_r0 + h)(1, 0)), 0.5, 1e-12);
  EXPECT_NEAR(std::norm(resonator_matrix(p, p.lambda_r0 - h)(1, 0)), 0.5, 1e-12);
}

TEST(Models, ResonatorUnitaryWhenLosslessEvenWithFiniteExtinction) {
  ResonatorParams p;
  p.drop_loss = 0;
  p.through_loss = 0;
  for (double d : {-2e-9, -1e-10, 0.0, 3e-11, 1e-9}) EXPECT_LT(unitarity_error(resonator_matrix(p, 1550e-9 + d)), 1e-14);
}

TEST(Models, BarShiftIsTwoLinewidths) {
  // 1550 * 0.003 / 6.75 = 0.68889 nm against a 0.34444 nm linewidth.
  const ResonatorParams p;
  EXPECT_NEAR((p.tuned_resonance(0.003) - p.lambda_r0) / p.linewidth(), 2.0, 1e-12);
}

TEST(Models, MziStates) {
  CouplerParams c;
  c.excess_loss = 0;
  const auto bar = mzi_matrix(c, 0.0, 1550e-9);
  const auto cross = mzi_matrix(c, std::acos(-1.0), 1550e-9);
  EXPECT_NEAR(std::norm(bar(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::norm(cross(1, 0)), 1.0, 1e-15);
  EXPECT_LT(unitarity_error(mzi_matrix(c, 0.7, 1550e-9)), 1e-14);
}

TEST(Models, ParamsJsonRoundTripKeepsInfinities) {
  const auto p = DeviceParams::lossless();
  const auto back = params_from_json(nlohmann::json::parse(to_json(p).dump()));
  EXPECT_TRUE(std::isinf(back.crossover.crosstalk));
  EXPECT_EQ(to_json(back).dump(), to_json(p).dump());
}

TEST(Models, InvalidParamsRejected) {
  auto p = DeviceParams::nominal();
  p.resonator.q = -1;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(Circuit, EmptyLayoutIsIdentity) {
  CircuitLayout L;
  L.kind = "empty";
  L.n_rails = 3;
  L.inputs = {0, 1, 2};
  L.outputs = {0, 1, 2};
  const auto r = circuit_response(L, {}, DeviceParams::nominal(), {1530e-9, 1550e-9});
  for (const auto& t : r) {
    const auto m = path_metrics(L, t, {0, 1, 2});
    for (double il : m.insertion_loss) EXPECT_NEAR(il, 0.0, 1e-12);
  }
}

TEST(Circuit, CascadedCrossoverLossAdds) {
  auto p = DeviceParams::nominal();
  p.crossover.crosstalk = -kInf;
  for (int k : {1, 2, 5}) {
    const auto L = crossover_chain(k);
    const auto r = circuit_response(L, {}, p, {1550e-9});
    const int out = k % 2 ? 1 : 0;
    EXPECT_NEAR(path_metrics(L, r[0], {out, 1 - out}).insertion_loss[0], 0.29 * k, 1e-9) << k;
  }
}

TEST(Circuit, LosslessFabricsAreUnitary) {
  std::mt19937 rng(2);
  const auto params = DeviceParams::lossless();
  for (const auto& kind : fabric::architecture_kinds()) {
    const auto L = fabric::generate({kind});
    routing::SwitchState s;
    for (const auto& c : L.controls()) s.set(c, rng() % 2 ? routing::Actuation::cross : routing::Actuation::bar);
    if (!L.terminators.empty()) continue;  // absorbers are lossy by design
    for (const auto& t : circuit_response(L, s, params, {1548e-9, 1550.3e-9, 1552e-9}))
      EXPECT_LT(unitarity_error(t.matrix), 1e-9) << kind;
  }
}

TEST(Circuit, UnresolvedControlThrows) {
  const auto L = fabric::generate({"spanke_benes", 4});
  EXPECT_THROW((void)circuit_response(L, {}, DeviceParams::nominal(), {1550e-9}), UnresolvedControl);
}

TEST(Circuit, CrosspointPathLossFollowsDeviceCounts) {
  // With ideal extinction no light leaves the traced path, so per-path IL is the sum of the
  // element losses met along it.
  const auto L = fabric::generate({"crosspoint", 8});
  auto params = DeviceParams::nominal();
  params.resonator.extinction = kInf;
  std::mt19937 rng(4);
  routing::PortMap p(8);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  const auto s = routing::solve_state(L, p);
  const auto tr = routing::trace_paths(L, s);
  const auto t = circuit_response(L, s, params, {1550e-9});
  const auto m = path_metrics(L, t[0], p);
  const auto& rp = params.resonator;
  const double drop_db = -db(std::norm(resonator_matrix(rp, 1550e-9)(1, 0)));
  const double through_db = -db(std::norm(resonator_matrix(rp, 1550e-9, routing::kBarDeltaN)(0, 0)));
  for (size_t i = 0; i < 8; ++i) {
    int bars = 0;
    for (const auto* e : tr.path[i]) bars += s.at(e->control).act == routing::Actuation::bar;
    const int crosses = tr.active_traversed[i] - bars;
    EXPECT_NEAR(m.insertion_loss[i], crosses * drop_db + bars * through_db, 1e-9) << i;
  }
}

TEST(Circuit, MulticrossbarDipsAtEachColor) {
  const auto L = fabric::generate({"multicrossbar"});
  const auto colors = fabric::layout_colors(L);
  const auto s = routing::ambient_state(L);
  for (double c : colors) {
    const auto r = circuit_response(L, s, DeviceParams::nominal(), {c, c + 1e-9});
    EXPECT_LT(std::norm(r[0].matrix(0, 0)), 0.05);  // dropped at its color
    EXPECT_GT(std::norm(r[1].matrix(0, 0)), 0.8);   // passes between colors
  }
}
