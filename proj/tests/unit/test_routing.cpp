// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "photon_fabric/errors.hpp"
#include "photon_fabric/fabric/generators.hpp"
#include "photon_fabric/routing/solvers.hpp"
#include "photon_fabric/routing/state.hpp"
#include "photon_fabric/routing/trace.hpp"

using namespace pf;
using namespace pf::fabric;
using namespace pf::routing;

namespace {

PortMap identity(int n) {
  PortMap p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

SwitchState random_state(const CircuitLayout& L, std::mt19937& rng) {
  SwitchState s;
  for (const auto& c : L.controls()) s.set(c, rng() % 2 ? Actuation::cross : Actuation::bar);
  return s;
}

}  // namespace

TEST(Trace, AmbientCrosspointSendsRowsThroughEveryColumn) {
  // All crosspoints crossing: each row wire climbs past every column wire and stays on a row rail.
  const auto L = generate({"crosspoint", 4});
  const auto tr = trace_paths(L, ambient_state(L));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(tr.active_traversed[static_cast<size_t>(i)], 4) << i;
}

TEST(Trace, UnresolvedControlThrows) {
  const auto L = generate({"spanke_benes", 4});
  EXPECT_THROW((void)trace_paths(L, SwitchState{}), UnresolvedControl);
}

TEST(Trace, BarStateDeltaN) {
  EXPECT_DOUBLE_EQ(delta_n_of({Actuation::bar, std::nullopt}), kBarDeltaN);
  EXPECT_DOUBLE_EQ(delta_n_of({Actuation::cross, std::nullopt}), 0.0);
  EXPECT_DOUBLE_EQ(delta_n_of({Actuation::bar, 0.001}), 0.001);
}

TEST(State, JsonRoundTrip) {
  SwitchState s;
  s.set("a", Actuation::bar);
  s.values["b"] = {Actuation::cross, 0.0015};
  const auto back = state_from_json(nlohmann::json::parse(to_json(s).dump()));
  EXPECT_EQ(to_json(back).dump(), to_json(s).dump());
}

TEST(Crosspoint, ReversalUsesEightBarDevices) {
  const auto L = generate({"crosspoint", 8});
  PortMap rev(8);
  for (int i = 0; i < 8; ++i) rev[static_cast<size_t>(i)] = 7 - i;
  const auto s = solve_state(L, rev);
  EXPECT_EQ(count_in(s, Actuation::bar), 8);
  EXPECT_TRUE(verify(L, s, rev));
}

TEST(Crosspoint, AllPermutationsOfFour) {
  const auto L = generate({"crosspoint", 4});
  PortMap p = identity(4);
  do {
    const auto s = solve_state(L, p);
    EXPECT_EQ(non_ambient_count(L, s), 4);
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST(Crosspoint, PartialRequestActuatesOnlyRequestedRows) {
  const auto L = generate({"crosspoint", 4});
  const PortMap p = {2, kAnyOutput, 0, kAnyOutput};
  const auto s = solve_state(L, p);
  EXPECT_EQ(non_ambient_count(L, s), 2);
}

TEST(SpankeBenes, IdentityNeedsNoExchange) {
  const auto L = generate({"spanke_benes", 8});
  const auto s = solve_state(L, identity(8));
  EXPECT_EQ(count_in(s, Actuation::cross), 0);
}

TEST(SpankeBenes, ReversalExchangesEveryElement) {
  // Odd-even transposition sort of a reversed list swaps at every comparator.
  const auto L = generate({"spanke_benes", 8});
  PortMap rev(8);
  for (int i = 0; i < 8; ++i) rev[static_cast<size_t>(i)] = 7 - i;
  EXPECT_EQ(count_in(solve_state(L, rev), Actuation::cross), 28);
}

TEST(SpankeBenes, AllPermutationsOfFive) {
  const auto L = generate({"spanke_benes", 5});
  PortMap p = identity(5);
  do EXPECT_NO_THROW((void)solve_state(L, p));
  while (std::next_permutation(p.begin(), p.end()));
}

TEST(SpankeBenes, DuplicateOutputIsUnroutable) {
  const auto L = generate({"spanke_benes", 4});
  EXPECT_THROW((void)solve_state(L, {0, 0, 1, 2}), Unroutable);
  EXPECT_THROW((void)solve_state(L, {0, 1, 2}), InvalidArgument);
}

TEST(Piloss, AllPermutationsOfFourCrossFourSwitchesPerPath) {
  const auto L = generate({"piloss", 4});
  PortMap p = identity(4);
  do {
    const auto tr = trace_paths(L, solve_state(L, p));
    for (size_t i = 0; i < 4; ++i) EXPECT_EQ(tr.active_traversed[i], 4);
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST(Piloss, EightPortPathsTraverseEightSwitches) {
  const auto L = generate({"piloss", 8});
  std::mt19937 rng(11);
  PortMap p = identity(8);
  for (int t = 0; t < 50; ++t) {
    std::shuffle(p.begin(), p.end(), rng);
    const auto tr = trace_paths(L, solve_state(L, p));
    for (size_t i = 0; i < 8; ++i) EXPECT_EQ(tr.active_traversed[i], 8);
  }
}

TEST(ClosBenes, RoutesEveryPermutationTracedFromRandomStates) {
  // Any state the hardware can take realizes some permutation; the router must find a state for it.
  const auto L = generate({"clos_benes_16"});
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto tr = trace_paths(L, random_state(L, rng));
    PortMap p(tr.output.begin(), tr.output.end());
    ASSERT_TRUE(is_permutation(p));
    EXPECT_NO_THROW((void)solve_state(L, p));
  }
}

TEST(ClosBenes, IdentityAndReversal) {
  const auto L = generate({"clos_benes_16"});
  EXPECT_NO_THROW((void)solve_state(L, identity(16)));
  PortMap rev(16);
  for (int i = 0; i < 16; ++i) rev[static_cast<size_t>(i)] = 15 - i;
  EXPECT_NO_THROW((void)solve_state(L, rev));
}

TEST(ClosBenes, SomePermutationsAreUnroutable) {
  // 40 binary switches give at most 2^40 states, fewer than 16! permutations.
  const auto L = generate({"clos_benes_16"});
  std::mt19937 rng(5);
  PortMap p = identity(16);
  int unroutable = 0;
  for (int t = 0; t < 200; ++t) {
    std::shuffle(p.begin(), p.end(), rng);
    try {
      (void)solve_state(L, p);
    } catch (const Unroutable&) {
      ++unroutable;
    }
  }
  EXPECT_GT(unroutable, 0);
  EXPECT_LT(unroutable, 200);
}

TEST(Select, EachInputReachesTheOutput) {
  const auto L = generate({"select_8to1"});
  for (int i = 0; i < 8; ++i) {
    PortMap p(8, kAnyOutput);
    p[static_cast<size_t>(i)] = 0;
    const auto s = solve_state(L, p);
    const auto tr = trace_paths(L, s);
    EXPECT_EQ(tr.output[static_cast<size_t>(i)], 0);
    for (int k = 0; k < 8; ++k)
      if (k != i) EXPECT_EQ(tr.output[static_cast<size_t>(k)], kAbsorbed) << i << " " << k;
    EXPECT_EQ(tr.absorbing_terminators(), 7);
  }
}

TEST(Select, OneToEightReachesEveryOutput) {
  const auto L = generate({"select_1to8"});
  for (int o = 0; o < 8; ++o) EXPECT_NO_THROW((void)solve_state(L, {o})) << o;
}

TEST(Multiplexers, DemuxSeparatesColorsAndMuxCombines) {
  const auto d = generate({"demux8"});
  const auto m = generate({"mux8"});
  const auto colors = layout_colors(d);
  ASSERT_EQ(colors.size(), 8u);
  for (int k = 0; k < 8; ++k) {
    const double c = colors[static_cast<size_t>(k)];
    EXPECT_EQ(trace_paths(d, {}, c).output[0], k);
    EXPECT_EQ(trace_paths(m, {}, c).output[static_cast<size_t>(k)], 0);
  }
}

TEST(Multicrossbar, EachColorSwitchesIndependently) {
  const auto L = generate({"multicrossbar"});
  const auto colors = layout_colors(L);
  WavelengthRequest r;
  r.entries = {{0, colors[0], 1}, {0, colors[1], 0}, {0, colors[2], 1}};
  const auto s = solve_wavelength_routing(L, r);
  EXPECT_EQ(s.at("mc_c0").act, Actuation::cross);
  EXPECT_EQ(s.at("mc_c1").act, Actuation::bar);
  EXPECT_EQ(trace_paths(L, s, colors[1]).output[1], 1);
}

TEST(Wss6, EveryPermutationReachableAtEachColor) {
  const auto L = generate({"wss_6x6x4"});
  const double c = layout_colors(L)[1];
  PortMap p = identity(6);
  int ok = 0;
  do {
    try {
      (void)solve_state(L, p, c);
      ++ok;
    } catch (const Unroutable&) {
    }
  } while (std::next_permutation(p.begin(), p.end()));
  EXPECT_EQ(ok, 720);
}

TEST(Wss6, IndependentPermutationPerColor) {
  const auto L = generate({"wss_6x6x4"});
  const auto colors = layout_colors(L);
  std::mt19937 rng(9);
  WavelengthRequest r;
  std::vector<PortMap> want;
  for (double c : colors) {
    PortMap p = identity(6);
    std::shuffle(p.begin(), p.end(), rng);
    want.push_back(p);
    for (int i = 0; i < 6; ++i) r.entries.push_back({i, c, p[static_cast<size_t>(i)]});
  }
  const auto s = solve_wavelength_routing(L, r);
  for (size_t k = 0; k < colors.size(); ++k) EXPECT_TRUE(verify(L, s, want[k], colors[k]));
}

TEST(Wcc4, PermutationsOfFourAtOneColor) {
  const auto L = generate({"wcc_4x4x4"});
  const double c = layout_colors(L)[0];
  PortMap p = identity(4);
  do EXPECT_NO_THROW((void)solve_state(L, p, c));
  while (std::next_permutation(p.begin(), p.end()));
}

TEST(Wavelength, CollidingRequestIsUnroutable) {
  const auto L = generate({"wss_8x8x3"});
  const double c = layout_colors(L)[0];
  WavelengthRequest r;
  r.entries = {{0, c, 3}, {1, c, 3}};
  EXPECT_THROW((void)solve_wavelength_routing(L, r), Unroutable);
}

TEST(Wavelength, UnknownColorRejected) {
  const auto L = generate({"wss_8x8x3"});
  WavelengthRequest r;
  r.entries = {{0, 1530e-9, 3}};
  EXPECT_THROW((void)solve_wavelength_routing(L, r), InvalidArgument);
}

TEST(Requests, JsonForms) {
  EXPECT_EQ(request_from_json(nlohmann::json::parse("[1,0,null]")), (PortMap{1, 0, kAnyOutput}));
  EXPECT_EQ(request_from_json(nlohmann::json::parse(R"({"permutation":[2,1,0]})")), (PortMap{2, 1, 0}));
  const auto w = wavelength_request_from_json(
      nlohmann::json::parse(R"({"entries":[{"input":1,"color_nm":1550,"output":2}]})"));
  ASSERT_EQ(w.entries.size(), 1u);
  EXPECT_NEAR(w.entries[0].color, 1550e-9, 1e-18);
  EXPECT_THROW((void)request_from_json(nlohmann::json::parse(R"({"perm":[0]})")), InvalidArgument);
}
