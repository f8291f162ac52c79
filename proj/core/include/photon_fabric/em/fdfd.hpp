// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <memory>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "photon_fabric/em/grid.hpp"
#include "photon_fabric/em/mode.hpp"

namespace pf::em {

enum class PortRole { source, monitor };

// directional: two-line source launching only along mode.direction.
// line: single-line source radiating both ways; its transpose is the plain overlap monitor,
// which makes source/monitor pairs exactly reciprocal.
enum class Injection { directional, line };

struct PortSpec {
  PortRole role = PortRole::source;
  ModeProfile mode;
  double phase = 0.0;   // radians
  double weight = 1.0;  // injected power for sources, objective weight for monitors
  Injection injection = Injection::directional;
};

using SparseMatrixC = Eigen::SparseMatrix<cplx, Eigen::ColMajor, int>;

// Symmetric discrete operator of
//   d/dx (sy/sx dE/dx) + d/dy (sx/sy dE/dy) + k0^2 eps sx sy E = sx sy f
// with E = 0 outside the grid.
[[nodiscard]] SparseMatrixC assemble_operator(const SimulationGrid& grid);

// Right-hand side for a set of source ports (monitor entries are ignored).
[[nodiscard]] Eigen::VectorXcd source_vector(const SimulationGrid& grid, const std::vector<PortSpec>& ports);

// Vector m with modal amplitude a = m^T E.
[[nodiscard]] Eigen::VectorXcd monitor_vector(const SimulationGrid& grid, const PortSpec& monitor);

// Assembles and factorizes once; every solve reuses the factorization. Because the operator
// is complex symmetric, the same factorization also serves adjoint solves.
class FieldSolver {
 public:
  explicit FieldSolver(SimulationGrid grid);
  ~FieldSolver();
  FieldSolver(const FieldSolver&) = delete;
  FieldSolver& operator=(const FieldSolver&) = delete;

  [[nodiscard]] ComplexField solve(const Eigen::VectorXcd& rhs) const;
  [[nodiscard]] ComplexField solve(const std::vector<PortSpec>& sources) const;
  [[nodiscard]] const SimulationGrid& grid() const { return grid_; }
  [[nodiscard]] long solves() const { return solves_.load(); }

 private:
  struct Backend;
  SimulationGrid grid_;
  std::unique_ptr<Backend> backend_;
  mutable std::atomic<long> solves_{0};
};

[[nodiscard]] ComplexField solve_fields(const SimulationGrid& grid, const std::vector<PortSpec>& sources);

[[nodiscard]] cplx mode_overlap(const ComplexField& field, const PortSpec& monitor);

// Name of the linear-algebra backend compiled in.
[[nodiscard]] const char* solver_backend_name();

}  // namespace pf::em
