// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <Eigen/SparseLU>

#include "photon_fabric/devices/geometry.hpp"
#include "photon_fabric/em/fdfd.hpp"
#include "photon_fabric/topopt/problem.hpp"

using namespace pf;

namespace {

em::SimulationGrid desk_grid(double region) {
  auto g = devices::DeviceGeometry::desk();
  g.region = region;
  const auto p = devices::make_splitter_problem(g);
  return p.grid_for(Eigen::ArrayXXd::Constant(p.px, p.py, 0.5), 1550e-9);
}

// Factorization plus one solve through the library backend.
void BM_FieldSolverBackend(benchmark::State& st) {
  const auto g = desk_grid(st.range(0) * 1e-6);
  const Eigen::VectorXcd rhs = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(g.nx) * g.ny);
  for (auto _ : st) {
    const em::FieldSolver solver(g);
    benchmark::DoNotOptimize(solver.solve(rhs));
  }
  st.SetLabel(std::string(em::solver_backend_name()) + " " + std::to_string(g.nx) + "x" + std::to_string(g.ny));
}

// Same system through Eigen's SparseLU as a baseline.
void BM_EigenSparseLU(benchmark::State& st) {
  const auto g = desk_grid(st.range(0) * 1e-6);
  const auto a = em::assemble_operator(g);
  const Eigen::VectorXcd rhs = Eigen::VectorXcd::Ones(a.rows());
  for (auto _ : st) {
    Eigen::SparseLU<em::SparseMatrixC, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    Eigen::VectorXcd x = lu.solve(rhs);
    benchmark::DoNotOptimize(x);
  }
  st.SetLabel(std::to_string(g.nx) + "x" + std::to_string(g.ny));
}

void BM_Assemble(benchmark::State& st) {
  const auto g = desk_grid(4e-6);
  for (auto _ : st) benchmark::DoNotOptimize(em::assemble_operator(g));
}

}  // namespace

BENCHMARK(BM_FieldSolverBackend)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigenSparseLU)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Assemble)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
