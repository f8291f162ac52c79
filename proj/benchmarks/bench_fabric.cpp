// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "photon_fabric/fabric/generators.hpp"
#include "photon_fabric/netsim/circuit.hpp"
#include "photon_fabric/routing/solvers.hpp"

using namespace pf;

namespace {

const std::vector<std::string> kKinds = {"crosspoint", "spanke_benes", "piloss"};

void BM_SolveState(benchmark::State& st) {
  const auto L = fabric::generate({kKinds[static_cast<size_t>(st.range(0))], 8});
  std::mt19937_64 rng(1);
  routing::PortMap p(8);
  std::iota(p.begin(), p.end(), 0);
  for (auto _ : st) {
    std::shuffle(p.begin(), p.end(), rng);
    benchmark::DoNotOptimize(routing::solve_state(L, p));
  }
  st.SetLabel(L.kind);
}

void BM_SolveClos16(benchmark::State& st) {
  const auto L = fabric::generate({"clos_benes_16"});
  routing::PortMap p(16);
  std::iota(p.begin(), p.end(), 0);
  std::reverse(p.begin(), p.end());
  for (auto _ : st) benchmark::DoNotOptimize(routing::solve_state(L, p));
}

void BM_WssRouting(benchmark::State& st) {
  const auto L = fabric::generate({"wss_6x6x4"});
  const auto colors = fabric::layout_colors(L);
  routing::WavelengthRequest req;
  for (size_t c = 0; c < colors.size(); ++c)
    for (int i = 0; i < 6; ++i) req.entries.push_back({i, colors[c], (i + static_cast<int>(c) + 1) % 6});
  for (auto _ : st) benchmark::DoNotOptimize(routing::solve_wavelength_routing(L, req));
}

void BM_CircuitResponse(benchmark::State& st) {
  const auto L = fabric::generate({kKinds[static_cast<size_t>(st.range(0))], 8});
  routing::PortMap p(8);
  std::iota(p.begin(), p.end(), 0);
  const auto s = routing::solve_state(L, p);
  std::vector<double> wl;
  for (int k = 0; k < 101; ++k) wl.push_back(1540e-9 + k * 0.2e-9);
  for (auto _ : st) benchmark::DoNotOptimize(netsim::circuit_response(L, s, netsim::DeviceParams::nominal(), wl));
  st.SetLabel(L.kind + ", 101 wavelengths");
}

}  // namespace

BENCHMARK(BM_SolveState)->DenseRange(0, 2);
BENCHMARK(BM_SolveClos16);
BENCHMARK(BM_WssRouting);
BENCHMARK(BM_CircuitResponse)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
