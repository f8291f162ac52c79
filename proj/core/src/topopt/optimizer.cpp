// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/topopt/optimizer.hpp"

#include <cmath>
#include <string>

#include "photon_fabric/errors.hpp"

namespace pf::topopt {

double beta_at(const OptimizerOptions& opts, int iteration) {
  if (opts.beta_schedule.empty()) return 1.0;
  const auto n = static_cast<long>(opts.beta_schedule.size());
  const long stage = std::min(n - 1, static_cast<long>(iteration) * n / std::max(1, opts.iterations));
  return opts.beta_schedule[stage];
}

OptimizationResult optimize(const DesignProblem& problem, const DensityField& init, const OptimizerOptions& opts,
                            const ProgressFn& progress) {
  if (opts.iterations < 1) throw InvalidArgument("iteration budget must be at least 1");
  if (init.px() != problem.px || init.py() != problem.py) throw InvalidArgument("initial density shape mismatch");

  OptimizationResult res;
  res.continuous = init;
  Eigen::ArrayXXd& rho = res.continuous.rho;
  Eigen::ArrayXXd m = Eigen::ArrayXXd::Zero(rho.rows(), rho.cols());
  Eigen::ArrayXXd v = m;
  const EvalOptions eo{opts.jobs};

  for (int it = 0; it < opts.iterations; ++it) {
    const FilterSpec fs{opts.radius, beta_at(opts, it), opts.eta};
    const GradientResult gr = adjoint_gradient(problem, res.continuous, fs, eo);
    if (!std::isfinite(gr.eval.objective) || !gr.grad.allFinite())
      throw Diverged("objective became non-finite at iteration " + std::to_string(it));
    res.solves += gr.eval.solves;
    res.history.push_back(HistoryRow{it, gr.eval.objective, fs.beta, gr.eval.powers});
    if (progress) progress(res.history.back());

    m = opts.momentum * m + (1.0 - opts.momentum) * gr.grad;
    v = opts.second_moment * v + (1.0 - opts.second_moment) * gr.grad.square();
    const double c1 = 1.0 - std::pow(opts.momentum, it + 1);
    const double c2 = 1.0 - std::pow(opts.second_moment, it + 1);
    const Eigen::ArrayXXd step = opts.step * (m / c1) / ((v / c2).sqrt() + 1e-12);
    rho = (rho + step).max(0.0).min(1.0);
  }

  const FilterSpec last{opts.radius, opts.beta_schedule.empty() ? 1.0 : opts.beta_schedule.back(), opts.eta};
  res.binary = filter_and_project(res.continuous, last);
  res.binary.rho = (res.binary.rho > 0.5).cast<double>();
  res.final_eval = evaluate_physical(problem, res.binary.rho, eo);
  return res;
}

}  // namespace pf::topopt
