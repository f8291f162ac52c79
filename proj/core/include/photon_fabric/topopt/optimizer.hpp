// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "photon_fabric/topopt/problem.hpp"

namespace pf::topopt {

struct OptimizerOptions {
  int iterations = 200;
  double step = 0.05;  // density units
  double momentum = 0.9;
  double second_moment = 0.999;
  std::vector<double> beta_schedule = {1.0, 4.0, 16.0, 64.0};  // advanced every budget/size iterations
  double radius = 120e-9;
  double eta = 0.5;
  int jobs = 1;
};

struct HistoryRow {
  int iteration = 0;
  double objective = 0;
  double beta = 1;
  std::vector<std::vector<double>> powers;
};

struct OptimizationResult {
  DensityField continuous;  // raw design variables after the last update
  DensityField binary;      // filter_and_project(continuous) thresholded at 0.5
  Evaluation final_eval;    // evaluation of `binary`
  std::vector<HistoryRow> history;
  long solves = 0;          // field solves spent inside the iteration loop
};

using ProgressFn = std::function<void(const HistoryRow&)>;

[[nodiscard]] double beta_at(const OptimizerOptions& opts, int iteration);

// Gradient ascent on F with per-pixel adaptive steps, clipped to [0, 1].
[[nodiscard]] OptimizationResult optimize(const DesignProblem& problem, const DensityField& init,
                                          const OptimizerOptions& opts, const ProgressFn& progress = {});

}  // namespace pf::topopt
