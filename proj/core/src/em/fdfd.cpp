// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/em/fdfd.hpp"

#include <cmath>
#include <string>

#include "photon_fabric/errors.hpp"

#ifdef PF_USE_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>
#endif

namespace pf::em {

namespace {

// Stretch at positions k + offset for k in [0, count), on an axis of n nodes.
std::vector<cplx> stretches(const SimulationGrid& g, int n, int count, double offset) {
  std::vector<cplx> s(count);
  for (int k = 0; k < count; ++k) s[k] = axis_stretch(g, k + offset, n);
  return s;
}

void check_cut(const SimulationGrid& g, const Cut& c, int lines_before, int lines_after) {
  if (c.j1 - c.j0 < 3) throw InvalidArgument("port cut too short");
  if (!g.in_interior(c.i - lines_before, c.j0) || !g.in_interior(c.i + lines_after, c.j1 - 1))
    throw InvalidArgument("port cut at column " + std::to_string(c.i) + " reaches the absorbing layer");
}

}  // namespace

SparseMatrixC assemble_operator(const SimulationGrid& g) {
  g.validate();
  const auto sx = stretches(g, g.nx, g.nx, 0.0);
  const auto sy = stretches(g, g.ny, g.ny, 0.0);
  const auto sxh = stretches(g, g.nx, g.nx + 1, -0.5);  // sxh[i] sits at i - 1/2
  const auto syh = stretches(g, g.ny, g.ny + 1, -0.5);
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  const double k02 = g.k0() * g.k0();

  std::vector<Eigen::Triplet<cplx, int>> trip;
  trip.reserve(static_cast<size_t>(g.size()) * 5);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const int r = g.index(i, j);
      const cplx cxm = sy[j] * inv_dx2 / sxh[i];
      const cplx cxp = sy[j] * inv_dx2 / sxh[i + 1];
      const cplx cym = sx[i] * inv_dx2 / syh[j];
      const cplx cyp = sx[i] * inv_dx2 / syh[j + 1];
      trip.emplace_back(r, r, -(cxm + cxp + cym + cyp) + k02 * g.eps(i, j) * sx[i] * sy[j]);
      if (i > 0) trip.emplace_back(r, g.index(i - 1, j), cxm);
      if (i + 1 < g.nx) trip.emplace_back(r, g.index(i + 1, j), cxp);
      if (j > 0) trip.emplace_back(r, g.index(i, j - 1), cym);
      if (j + 1 < g.ny) trip.emplace_back(r, g.index(i, j + 1), cyp);
    }
  }
  SparseMatrixC a(g.size(), g.size());
  a.setFromTriplets(trip.begin(), trip.end());
  a.makeCompressed();
  return a;
}

Eigen::VectorXcd source_vector(const SimulationGrid& g, const std::vector<PortSpec>& ports) {
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(g.size());
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  for (const auto& p : ports) {
    if (p.role != PortRole::source) continue;
    if (p.weight < 0) throw InvalidArgument("negative source weight");
    const Cut& c = p.mode.cut;
    const cplx amp = std::sqrt(p.weight) * std::polar(1.0, p.phase);
    const double k = discrete_phase_step(p.mode.beta, g.dx);
    if (p.injection == Injection::line) {
      // Single line; unit amplitude leaves in both directions.
      check_cut(g, c, 0, 0);
      const cplx a = amp * cplx(0.0, -2.0 * std::sin(k)) * inv_dx2;
      for (int j = c.j0; j < c.j1; ++j) b[g.index(c.i, j)] += a * p.mode.amplitude[j - c.j0];
      continue;
    }
    // Two lines phased so the backward-going waves cancel; forward amplitude is 1 at column c.i.
    const int back = p.mode.direction == Direction::forward ? -1 : 1;
    check_cut(g, c, back < 0 ? 1 : 0, back > 0 ? 1 : 0);
    const cplx a_main = -amp * std::polar(1.0, k) * inv_dx2;
    const cplx a_back = amp * inv_dx2;
    for (int j = c.j0; j < c.j1; ++j) {
      const double u = p.mode.amplitude[j - c.j0];
      b[g.index(c.i, j)] += a_main * u;
      b[g.index(c.i + back, j)] += a_back * u;
    }
  }
  return b;
}

Eigen::VectorXcd monitor_vector(const SimulationGrid& g, const PortSpec& monitor) {
  const Cut& c = monitor.mode.cut;
  check_cut(g, c, 0, 0);
  Eigen::VectorXcd m = Eigen::VectorXcd::Zero(g.size());
  for (int j = c.j0; j < c.j1; ++j) m[g.index(c.i, j)] = monitor.mode.amplitude[j - c.j0] * g.dx;
  return m;
}

struct FieldSolver::Backend {
  SparseMatrixC a;  // UmfPackLU keeps referring to the factorized matrix
#ifdef PF_USE_UMFPACK
  Eigen::UmfPackLU<SparseMatrixC> lu;
#else
  Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>> lu;
#endif
};

FieldSolver::FieldSolver(SimulationGrid grid) : grid_(std::move(grid)), backend_(std::make_unique<Backend>()) {
  backend_->a = assemble_operator(grid_);
  backend_->lu.compute(backend_->a);
  if (backend_->lu.info() != Eigen::Success) throw SolverFailure("sparse factorization failed");
}

FieldSolver::~FieldSolver() = default;

ComplexField FieldSolver::solve(const Eigen::VectorXcd& rhs) const {
  if (rhs.size() != grid_.size()) throw InvalidArgument("right-hand side does not match grid");
  ComplexField f{grid_.nx, grid_.ny, grid_.dx, {}};
  f.values = backend_->lu.solve(rhs);
  if (backend_->lu.info() != Eigen::Success || !f.values.allFinite())
    throw SolverFailure("sparse solve failed");
  ++solves_;
  return f;
}

ComplexField FieldSolver::solve(const std::vector<PortSpec>& sources) const {
  return solve(source_vector(grid_, sources));
}

ComplexField solve_fields(const SimulationGrid& grid, const std::vector<PortSpec>& sources) {
  return FieldSolver(grid).solve(sources);
}

cplx mode_overlap(const ComplexField& field, const PortSpec& monitor) {
  const Cut& c = monitor.mode.cut;
  if (c.i < 0 || c.i >= field.nx || c.j0 < 0 || c.j1 > field.ny ||
      monitor.mode.amplitude.size() != c.length())
    throw InvalidArgument("monitor does not fit the field");
  cplx a = 0;
  for (int j = c.j0; j < c.j1; ++j) a += monitor.mode.amplitude[j - c.j0] * field(c.i, j);
  return a * field.dx;
}

const char* solver_backend_name() {
#ifdef PF_USE_UMFPACK
  return "umfpack";
#else
  return "eigen-sparselu";
#endif
}

}  // namespace pf::em
