// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

namespace pfab {

// Each command receives its merged configuration (config file overlaid with flags) plus the
// output directory and job cap, validates it, runs, and returns a process exit code.
// Library errors propagate to main, which maps them onto exit codes.
struct Invocation {
  nlohmann::json config;
  std::string out_dir = ".";
  int jobs = 1;
};

int cmd_optimize(const Invocation& inv);
int cmd_evaluate(const Invocation& inv);
int cmd_sweep(const Invocation& inv);
int cmd_circuit(const Invocation& inv);
int cmd_route(const Invocation& inv);
int cmd_simulate(const Invocation& inv);
int cmd_report(const Invocation& inv);

}  // namespace pfab
