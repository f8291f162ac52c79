// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/devices/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "photon_fabric/errors.hpp"

namespace pf::devices {

DeviceMetrics metrics_from_powers(const std::vector<double>& powers, const std::vector<bool>& intended,
                                  double injected) {
  if (powers.size() != intended.size()) throw InvalidArgument("powers and intended mask differ in length");
  if (!(injected > 0)) throw InvalidArgument("injected power must be positive");
  DeviceMetrics m;
  m.injected = injected;
  m.intended = intended;
  double on = 0;
  double off = 0;
  for (size_t k = 0; k < powers.size(); ++k) {
    if (powers[k] < 0) throw InvalidArgument("negative port power");
    m.ratios.push_back(powers[k] / injected);
    if (intended[k])
      on += powers[k];
    else
      off = std::max(off, powers[k]);
  }
  if (on <= 0) throw InvalidArgument("no power at the intended ports");
  m.insertion_loss = std::max(0.0, -10.0 * std::log10(on / injected));
  if (off > 0) m.crosstalk = std::max(kCrosstalkFloorDb, 10.0 * std::log10(off / injected));
  return m;
}

std::vector<DeviceMetrics> evaluate_device(const topopt::DesignProblem& problem, const Eigen::ArrayXXd& rho_physical,
                                           const topopt::EvalOptions& opts) {
  const topopt::Evaluation ev = topopt::evaluate_physical(problem, rho_physical, opts);
  std::vector<DeviceMetrics> out;
  for (size_t c = 0; c < problem.conditions.size(); ++c) {
    const auto& cond = problem.conditions[c];
    const auto& pw = ev.powers[c];
    std::vector<bool> mask;
    for (const auto& t : cond.targets) mask.push_back(t.goal > 0);
    if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; }) && !pw.empty())
      mask[std::max_element(pw.begin(), pw.end()) - pw.begin()] = true;
    DeviceMetrics m = metrics_from_powers(pw, mask, cond.injected_power());
    m.condition = cond.name;
    m.wavelength = cond.wavelength;
    for (const auto& t : cond.targets) m.ports.push_back(t.name);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<double> sweep_grid(double start, double stop, double step) {
  if (!(step > 0)) throw InvalidArgument("sweep step must be positive");
  if (!(stop >= start)) throw InvalidArgument("sweep stop below start");
  if (start < 1500e-9 - 1e-15 || stop > 1600e-9 + 1e-15) throw InvalidArgument("sweep band outside 1500-1600 nm");
  const long n = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> wl(static_cast<size_t>(n));
  for (long k = 0; k < n; ++k) wl[static_cast<size_t>(k)] = start + static_cast<double>(k) * step;
  return wl;
}

Spectra sweep_device(const Eigen::ArrayXXd& rho_physical, const DeviceGeometry& geom, double start, double stop,
                     double step, Port input, int jobs) {
  const DeviceLayout layout = build_layout(geom);
  topopt::DesignProblem shell = make_problem_shell(layout, "sweep");
  Spectra sp;
  sp.wavelength = sweep_grid(start, stop, step);
  sp.ports = {port_name(Port::out_top), port_name(Port::out_bottom)};
  const size_t n = sp.wavelength.size();
  sp.power.assign(2, std::vector<double>(n, 0.0));

  auto point = [&](size_t k) {
    const double wl = sp.wavelength[k];
    const em::FieldSolver solver(shell.grid_for(rho_physical, wl));
    const em::ComplexField e = solver.solve({layout.source(input, wl)});
    sp.power[0][k] = std::norm(em::mode_overlap(e, layout.monitor(Port::out_top, wl)));
    sp.power[1][k] = std::norm(em::mode_overlap(e, layout.monitor(Port::out_bottom, wl)));
  };

  const size_t workers = static_cast<size_t>(std::max(1, jobs));
  if (workers == 1) {
    for (size_t k = 0; k < n; ++k) point(k);
    return sp;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (size_t k = w; k < n; k += workers) point(k);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return sp;
}

}  // namespace pf::devices
