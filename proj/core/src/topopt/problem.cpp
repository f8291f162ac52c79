// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/topopt/problem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "photon_fabric/errors.hpp"

namespace pf::topopt {

double ExcitationCondition::injected_power() const {
  double p = 0;
  for (const auto& s : sources) p += s.weight;
  return p;
}

DensityField DesignProblem::uniform_density(double value) const {
  DensityField d;
  d.rho = Eigen::ArrayXXd::Constant(px, py, value);
  d.pitch = pitch();
  d.origin_i = region_i0;
  d.origin_j = region_j0;
  return d;
}

em::SimulationGrid DesignProblem::grid_for(const Eigen::ArrayXXd& rho_physical, double wavelength) const {
  if (rho_physical.rows() != px || rho_physical.cols() != py)
    throw InvalidArgument("density does not match the design region");
  em::SimulationGrid g = background;
  g.lambda0 = wavelength;
  const Eigen::ArrayXXd eps = density_to_permittivity(rho_physical);
  const int c = cells_per_pixel;
  for (int p = 0; p < px; ++p)
    for (int q = 0; q < py; ++q)
      g.eps.block(region_i0 + p * c, region_j0 + q * c, c, c).setConstant(eps(p, q));
  return g;
}

void DesignProblem::validate() const {
  background.validate();
  if (px <= 0 || py <= 0 || cells_per_pixel <= 0) throw InvalidArgument("empty design region");
  const int c = cells_per_pixel;
  if (!background.in_interior(region_i0, region_j0) ||
      !background.in_interior(region_i0 + px * c - 1, region_j0 + py * c - 1))
    throw InvalidArgument("design region overlaps the absorbing layer");
  for (const auto& cond : conditions) {
    if (cond.weight < 0) throw InvalidArgument("negative condition weight");
    for (const auto& t : cond.targets)
      if (t.weight < 0 || t.goal < 0 || t.goal > cond.injected_power() + 1e-12)
        throw InvalidArgument("target goal outside [0, injected power] or negative weight");
  }
}

namespace {

struct GroupResult {
  std::vector<size_t> conditions;
  std::vector<double> cond_objective;
  std::vector<std::vector<double>> powers;
  std::vector<std::vector<em::cplx>> amps;
  Eigen::ArrayXXd grad_phys;  // dF/d(rho_physical)
  long solves = 0;
};

void run_group(const DesignProblem& pb, const Eigen::ArrayXXd& rho_phys, double wavelength, bool adjoint,
               GroupResult& out) {
  const em::FieldSolver solver(pb.grid_for(rho_phys, wavelength));
  const auto& g = solver.grid();
  const double k02 = g.k0() * g.k0();
  const double deps = em::kEpsSilicon - em::kEpsSilica;
  const int c = pb.cells_per_pixel;
  if (adjoint) out.grad_phys = Eigen::ArrayXXd::Zero(pb.px, pb.py);

  for (size_t ci : out.conditions) {
    const auto& cond = pb.conditions[ci];
    const em::ComplexField e = solver.solve(cond.sources);
    std::vector<double> pw;
    std::vector<em::cplx> am;
    double penalty = 0;
    Eigen::VectorXcd rhs;
    if (adjoint) rhs = Eigen::VectorXcd::Zero(g.size());
    for (const auto& t : cond.targets) {
      const em::cplx a = em::mode_overlap(e, t.monitor);
      const double p = std::norm(a);
      pw.push_back(p);
      am.push_back(a);
      penalty += t.weight * (p - t.goal) * (p - t.goal);
      if (adjoint) {
        // dF/da* chain: F = W (1 - sum w (|a|^2 - g)^2)
        const em::cplx coef = -4.0 * cond.weight * t.weight * (p - t.goal) * std::conj(a);
        rhs += coef * em::monitor_vector(g, t.monitor);
      }
    }
    out.cond_objective.push_back(1.0 - penalty);
    out.powers.push_back(std::move(pw));
    out.amps.push_back(std::move(am));
    if (adjoint) {
      const em::ComplexField lam = solver.solve(rhs);
      for (int p = 0; p < pb.px; ++p) {
        for (int q = 0; q < pb.py; ++q) {
          double s = 0;
          for (int di = 0; di < c; ++di)
            for (int dj = 0; dj < c; ++dj) {
              const int i = pb.region_i0 + p * c + di;
              const int j = pb.region_j0 + q * c + dj;
              s += std::real(-k02 * lam(i, j) * e(i, j));
            }
          out.grad_phys(p, q) += s * deps;
        }
      }
    }
  }
  out.solves = solver.solves();
}

Evaluation run(const DesignProblem& pb, const Eigen::ArrayXXd& rho_phys, bool adjoint, const EvalOptions& opts,
               Eigen::ArrayXXd* grad_phys) {
  pb.validate();
  std::map<double, std::vector<size_t>> by_wavelength;
  for (size_t i = 0; i < pb.conditions.size(); ++i) by_wavelength[pb.conditions[i].wavelength].push_back(i);

  std::vector<double> wavelengths;
  std::vector<GroupResult> groups;
  for (auto& [wl, idx] : by_wavelength) {
    wavelengths.push_back(wl);
    groups.push_back(GroupResult{idx, {}, {}, {}, {}, 0});
  }

  const size_t jobs = static_cast<size_t>(std::max(1, opts.jobs));
  std::vector<std::exception_ptr> errors(groups.size());
  for (size_t start = 0; start < groups.size(); start += jobs) {
    const size_t stop = std::min(groups.size(), start + jobs);
    if (stop - start == 1) {
      run_group(pb, rho_phys, wavelengths[start], adjoint, groups[start]);
      continue;
    }
    std::vector<std::thread> pool;
    for (size_t k = start; k < stop; ++k)
      pool.emplace_back([&, k] {
        try {
          run_group(pb, rho_phys, wavelengths[k], adjoint, groups[k]);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (size_t k = start; k < stop; ++k)
      if (errors[k]) std::rethrow_exception(errors[k]);
  }

  Evaluation ev;
  ev.condition_objective.resize(pb.conditions.size());
  ev.powers.resize(pb.conditions.size());
  ev.amplitudes.resize(pb.conditions.size());
  if (grad_phys) *grad_phys = Eigen::ArrayXXd::Zero(pb.px, pb.py);
  for (auto& gr : groups) {
    for (size_t k = 0; k < gr.conditions.size(); ++k) {
      const size_t ci = gr.conditions[k];
      ev.condition_objective[ci] = gr.cond_objective[k];
      ev.powers[ci] = std::move(gr.powers[k]);
      ev.amplitudes[ci] = std::move(gr.amps[k]);
    }
    ev.solves += gr.solves;
    if (grad_phys) *grad_phys += gr.grad_phys;
  }
  for (size_t ci = 0; ci < pb.conditions.size(); ++ci)
    ev.objective += pb.conditions[ci].weight * ev.condition_objective[ci];
  return ev;
}

}  // namespace

Evaluation evaluate_physical(const DesignProblem& problem, const Eigen::ArrayXXd& rho_physical,
                             const EvalOptions& opts) {
  return run(problem, rho_physical, false, opts, nullptr);
}

Evaluation evaluate_objective(const DesignProblem& problem, const DensityField& rho, const FilterSpec& filter,
                              const EvalOptions& opts) {
  return evaluate_physical(problem, filter_and_project(rho, filter).rho, opts);
}

GradientResult adjoint_gradient(const DesignProblem& problem, const DensityField& rho, const FilterSpec& filter,
                                const EvalOptions& opts) {
  filter.validate();
  const ConicFilter w(rho.px(), rho.py(), rho.pitch, filter.radius);
  const Eigen::ArrayXXd rho_f = w.apply(rho.rho);
  const Eigen::ArrayXXd rho_p = project(rho_f, filter.beta, filter.eta);
  GradientResult out;
  Eigen::ArrayXXd g_phys;
  out.eval = run(problem, rho_p, true, opts, &g_phys);
  out.grad = w.apply_transpose(g_phys * project_derivative(rho_f, filter.beta, filter.eta));
  return out;
}

}  // namespace pf::topopt
