// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers to run a subset.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "photon_fabric/devices/geometry.hpp"
#include "photon_fabric/devices/lorentzian.hpp"
#include "photon_fabric/devices/metrics.hpp"
#include "photon_fabric/em/fdfd.hpp"
#include "photon_fabric/em/mode.hpp"
#include "photon_fabric/fabric/generators.hpp"
#include "photon_fabric/netsim/circuit.hpp"
#include "photon_fabric/netsim/models.hpp"
#include "photon_fabric/routing/solvers.hpp"
#include "photon_fabric/routing/trace.hpp"
#include "photon_fabric/topopt/optimizer.hpp"
#include "photon_fabric/topopt/problem.hpp"

using namespace pf;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

routing::PortMap random_perm(std::mt19937_64& rng, int n) {
  routing::PortMap p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// 1. Component counts, exact.
Outcome architecture_counts() {
  struct Want {
    std::string kind;
    int n, active, crossovers, passive, rails;
  };
  const std::vector<Want> want = {{"spanke_benes", 8, 28, -1, -1, -1}, {"piloss", 8, 64, 49, -1, -1},
                                  {"clos_benes_16", 0, 40, -1, -1, -1}, {"crosspoint", 8, 64, 0, -1, 16},
                                  {"wss_6x6x4", 0, 48, -1, 9, -1},     {"wss_8x8x3", 0, 60, -1, -1, -1},
                                  {"wcc_4x4x4", 0, 48, -1, 16, -1}};
  Outcome o{true, ""};
  for (const auto& w : want) {
    const auto c = fabric::count_components(fabric::generate({w.kind, w.n}));
    const bool ok = c.active == w.active && (w.crossovers < 0 || c.passive_crossovers == w.crossovers) &&
                    (w.passive < 0 || c.passive_crossovers + c.passive_resonators == w.passive) &&
                    (w.rails < 0 || c.rails == w.rails);
    if (!ok) {
      o.pass = false;
      o.detail += w.kind + " mismatch (active " + std::to_string(c.active) + ") ";
    }
  }
  if (o.pass) o.detail = std::to_string(want.size()) + " architectures exact";
  return o;
}

// 2. Every permutation of 8 routes and verifies on both crossbars.
Outcome routing_soundness() {
  const auto xp = fabric::generate({"crosspoint", 8});
  const auto sb = fabric::generate({"spanke_benes", 8});
  routing::PortMap p(8);
  std::iota(p.begin(), p.end(), 0);
  long count = 0;
  long bad = 0;
  long bad_count = 0;
  do {
    const auto sx = routing::solve_state(xp, p);
    const auto ss = routing::solve_state(sb, p);
    bad += !routing::verify(xp, sx, p) + !routing::verify(sb, ss, p);
    bad_count += routing::non_ambient_count(xp, sx) != 8;
    ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return {count == 40320 && bad == 0 && bad_count == 0,
          std::to_string(count) + " permutations, " + std::to_string(bad) + " unverified, " +
              std::to_string(bad_count) + " crosspoint states with non-ambient != 8"};
}

// 3. Every routed PILOSS path meets the same number of elements, switches plus crossovers.
Outcome piloss_uniformity() {
  const auto L = fabric::generate({"piloss", 8});
  std::mt19937_64 rng(2024);
  std::set<int> active;
  std::set<int> crossovers;
  std::set<int> total;
  int bad = 0;
  for (int k = 0; k < 10000; ++k) {
    const auto p = random_perm(rng, 8);
    const auto s = routing::solve_state(L, p);
    bad += !routing::verify(L, s, p);
    const auto tr = routing::trace_paths(L, s);
    for (size_t i = 0; i < 8; ++i) {
      active.insert(tr.active_traversed[i]);
      crossovers.insert(tr.crossovers_traversed[i]);
      total.insert(tr.active_traversed[i] + tr.crossovers_traversed[i]);
    }
  }
  auto range = [](const std::set<int>& v) {
    return std::to_string(*v.begin()) + (v.size() > 1 ? ".." + std::to_string(*v.rbegin()) : "");
  };
  return {bad == 0 && total.size() == 1, "10000 permutations, " + std::to_string(bad) + " unverified, switches per path " +
                                             range(active) + ", crossovers per path " + range(crossovers) +
                                             ", elements per path " + range(total)};
}

// 4. Adjoint gradient against central differences on the desk splitter.
Outcome adjoint_vs_fd() {
  const auto geom = devices::DeviceGeometry::desk();
  const auto problem = devices::make_splitter_problem(geom);
  const topopt::FilterSpec fs{120e-9, 4.0, 0.5};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.2, 0.8);
  auto rho = problem.uniform_density(0.5);
  for (Eigen::Index k = 0; k < rho.rho.size(); ++k) rho.rho(k) = u(rng);
  const auto gr = topopt::adjoint_gradient(problem, rho, fs);
  const double gmax = gr.grad.abs().maxCoeff();
  std::vector<Eigen::Index> eligible;
  for (Eigen::Index k = 0; k < gr.grad.size(); ++k)
    if (std::abs(gr.grad(k)) >= 1e-6 * gmax) eligible.push_back(k);
  std::shuffle(eligible.begin(), eligible.end(), rng);
  const int probes = std::min<int>(12, static_cast<int>(eligible.size()));
  const double h = 1e-3;
  int good = 0;
  double worst = 0;
  for (int k = 0; k < probes; ++k) {
    const Eigen::Index idx = eligible[static_cast<size_t>(k)];
    auto plus = rho;
    auto minus = rho;
    plus.rho(idx) += h;
    minus.rho(idx) -= h;
    const double fd = (topopt::evaluate_objective(problem, plus, fs).objective -
                       topopt::evaluate_objective(problem, minus, fs).objective) /
                      (2 * h);
    const double rel = std::abs(fd - gr.grad(idx)) / std::abs(gr.grad(idx));
    worst = std::max(worst, rel);
    good += rel < 1e-2;
  }
  return {good >= 10, std::to_string(good) + "/" + std::to_string(probes) + " pixels within 1e-2 (" +
                          std::to_string(problem.px) + "x" + std::to_string(problem.py) + " px), worst " +
                          fmt("%.2e", worst)};
}

em::PortSpec port_at(const em::SimulationGrid& g, int i, em::PortRole role, em::Direction dir, em::Injection inj) {
  em::PortSpec p;
  p.role = role;
  p.mode = em::solve_cut_mode(g, em::Cut{i, g.pml_cells + 2, g.ny - g.pml_cells - 2}, dir);
  p.injection = inj;
  return p;
}

// 5. Reciprocity, straight-guide transmission and absorber reflection.
Outcome solver_physics() {
  using namespace pf::em;
  constexpr double lambda = 1550e-9;
  auto g = oracle::straight_guide(40e-9, 6e-6, 3e-6, 500e-9, lambda);
  const auto src = port_at(g, g.pml_cells + 3, PortRole::source, Direction::forward, Injection::directional);
  const auto mon = port_at(g, g.nx - 1 - g.pml_cells - 3, PortRole::monitor, Direction::forward, Injection::line);
  const FieldSolver straight(g);
  const auto f = straight.solve({src});
  const double t = std::norm(mode_overlap(f, mon));

  std::vector<int> cols;
  std::vector<cplx> amps;
  for (int i = g.pml_cells + 10; i < g.nx - g.pml_cells - 2; i += 3) {
    auto m = src;
    m.mode.cut.i = i;
    cols.push_back(i);
    amps.push_back(mode_overlap(f, m));
  }
  const double refl_db =
      10 * std::log10(oracle::standing_wave_ratio(cols, amps, discrete_phase_step(src.mode.beta, g.dx)));

  auto s = oracle::straight_guide(40e-9, 5e-6, 3e-6, 500e-9, lambda);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 45; i < 80; ++i)
    for (int j = 25; j < 50; ++j) s.eps(i, j) = u(rng) > 0.5 ? kEpsSilicon : kEpsSilica;
  const FieldSolver scatter(s);
  const auto a = port_at(s, s.pml_cells + 4, PortRole::source, Direction::forward, Injection::line);
  const auto b = port_at(s, s.nx - s.pml_cells - 5, PortRole::source, Direction::backward, Injection::line);
  auto scale = [&](const PortSpec& p) {
    return cplx(0.0, -2.0 * std::sin(discrete_phase_step(p.mode.beta, s.dx))) / (s.dx * s.dx * s.dx);
  };
  const cplx s_ab = mode_overlap(scatter.solve({a}), b) / scale(a);
  const cplx s_ba = mode_overlap(scatter.solve({b}), a) / scale(b);
  const double recip = std::abs(s_ab - s_ba) / std::abs(s_ab);

  return {recip < 1e-6 && t >= 0.97 && t <= 1.01 && refl_db < -40.0,
          "reciprocity " + fmt("%.2e", recip) + ", straight T " + fmt("%.4f", t) + ", reflection " +
              fmt("%.1f", refl_db) + " dB"};
}

// 6. Desk splitter, 200 iterations, both inputs split at least 0.40:0.40.
Outcome desk_splitter() {
  const auto geom = devices::DeviceGeometry::desk();
  const auto problem = devices::make_splitter_problem(geom);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> jitter(-0.02, 0.02);
  auto init = problem.uniform_density(0.5);
  for (Eigen::Index k = 0; k < init.rho.size(); ++k) init.rho(k) += jitter(rng);
  topopt::OptimizerOptions opts;
  opts.iterations = 200;
  const auto res = topopt::optimize(problem, init, opts);
  bool ok = true;
  std::string d;
  for (const auto& m : devices::evaluate_device(problem, res.binary.rho)) {
    for (double r : m.ratios) ok = ok && r >= 0.40;
    d += m.condition + " " + fmt("%.3f", m.ratios[0]) + ":" + fmt("%.3f", m.ratios[1]) + " ";
  }
  return {ok, d + "(binary design)"};
}

// 7. Lorentzian fit of the behavioural resonator and its actuated shift.
Outcome resonator_fit() {
  netsim::ResonatorParams rp;
  rp.q = 4500;
  auto drop = [&](double dn, double lo, double hi) {
    const auto wl = devices::sweep_grid(lo, hi, 0.002e-9);
    std::vector<double> y;
    for (double l : wl) y.push_back(std::norm(netsim::resonator_matrix(rp, l, dn)(1, 0)));
    return devices::fit_lorentzian(wl, y);
  };
  const auto f0 = drop(0.0, 1548.5e-9, 1551.5e-9);
  const auto f1 = drop(routing::kBarDeltaN, 1549.5e-9, 1552.5e-9);
  const double q_err = std::abs(f0.q - rp.q) / rp.q;
  const double lr_err_nm = std::abs(f0.lambda_r - rp.lambda_r0) * 1e9;
  const double shift_lw = (f1.lambda_r - f0.lambda_r) / f0.fwhm;
  return {q_err < 0.01 && lr_err_nm < 0.01 && std::abs(shift_lw - 2.0) <= 0.02,
          "Q " + fmt("%.1f", f0.q) + ", lambda_r error " + fmt("%.2e", lr_err_nm) + " nm, shift " +
              fmt("%.4f", shift_lw) + " linewidths"};
}

// 8. Device metrics from reference power vectors, compared at the precision of the reference figures.
Outcome metric_arithmetic() {
  struct Case {
    std::string name;
    std::vector<double> powers;
    std::vector<bool> intended;
    double injected;
    double il;  // reference figures, NaN when absent
    int il_digits;  // decimals of the reference figure
    double xt;
    int xt_digits;
  };
  const double none = std::nan("");
  const std::vector<Case> cases = {
      {"splitter top", {0.466, 0.490}, {true, true}, 1, 0.20, 2, none, 0},
      {"splitter bottom", {0.456, 0.472}, {true, true}, 1, 0.32, 2, none, 0},
      {"combiner to top", {1.840, 0.042}, {true, false}, 2, 0.36, 2, -16.8, 1},
      {"combiner to bottom", {0.003, 1.882}, {false, true}, 2, 0.26, 2, -28.2, 1},
      {"crossover top", {0.003, 0.959}, {false, true}, 1, none, 0, -25, 0},
      {"crossover bottom", {0.911, 0.001}, {true, false}, 1, none, 0, -29, 0},
  };
  // A figure with d decimals covers computed values that round to it; 0.05 dB slack on top.
  auto agrees = [](double computed, double stated, int digits) {
    if (std::isnan(stated)) return true;
    const double scale = std::pow(10.0, digits);
    return std::abs(std::round(computed * scale) / scale - stated) <= 0.05 + 1e-12;
  };
  bool ok = true;
  std::string misses;
  for (const auto& c : cases) {
    const auto m = devices::metrics_from_powers(c.powers, c.intended, c.injected);
    const bool il_ok = agrees(m.insertion_loss, c.il, c.il_digits);
    const bool xt_ok = agrees(m.crosstalk, c.xt, c.xt_digits);
    if (!il_ok) misses += c.name + " IL " + fmt("%.3f", m.insertion_loss) + " vs " + fmt("%.2f", c.il) + "; ";
    if (!xt_ok) misses += c.name + " XT " + fmt("%.2f", m.crosstalk) + " vs " + fmt("%.0f", c.xt) + "; ";
    ok = ok && il_ok && xt_ok;
  }
  return {ok, ok ? "all 10 reference figures reproduced" : misses};
}

// 9. Unitarity of lossless fabrics and additivity of cascaded loss.
Outcome transfer_engine() {
  std::mt19937_64 rng(9);
  const auto lossless = netsim::DeviceParams::lossless();
  double worst_u = 0;
  int circuits = 0;
  for (const auto& kind : fabric::architecture_kinds()) {
    const auto L = fabric::generate({kind});
    if (!L.terminators.empty()) continue;  // absorbers are lossy by construction
    for (int trial = 0; trial < 3; ++trial) {
      routing::SwitchState s;
      for (const auto& c : L.controls()) s.set(c, rng() % 2 ? routing::Actuation::cross : routing::Actuation::bar);
      const auto colors = fabric::layout_colors(L);
      std::vector<double> wls = {1548e-9, 1550e-9, 1552.3e-9};
      wls.insert(wls.end(), colors.begin(), colors.end());
      for (const auto& t : netsim::circuit_response(L, s, lossless, wls))
        worst_u = std::max(worst_u, netsim::unitarity_error(t.matrix));
      ++circuits;
    }
  }

  // Cascade additivity: a crosspoint path's loss equals the sum of the per-column losses along its trace.
  auto params = netsim::DeviceParams::nominal();
  params.resonator.extinction = netsim::kInf;
  const auto L = fabric::generate({"crosspoint", 8});
  double worst_add = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_perm(rng, 8);
    const auto s = routing::solve_state(L, p);
    const double wl = 1550e-9;
    const auto total = netsim::circuit_response(L, s, params, {wl});
    const auto pm = netsim::path_metrics(L, total[0], p);
    for (size_t i = 0; i < 8; ++i) {
      int rail = L.inputs[i];
      double sum_db = 0;
      for (size_t c = 0; c < L.columns.size(); ++c) {
        const auto m = netsim::column_matrix(L, c, s, params, wl);
        Eigen::Index next = 0;
        m.col(rail).cwiseAbs().maxCoeff(&next);
        sum_db += -20.0 * std::log10(std::abs(m(next, rail)));
        rail = static_cast<int>(next);
      }
      worst_add = std::max(worst_add, std::abs(sum_db - pm.insertion_loss[i]));
    }
  }
  return {worst_u < 1e-9 && worst_add < 1e-9, std::to_string(circuits) + " lossless circuits, max unitarity error " +
                                                  fmt("%.2e", worst_u) + "; additivity error " +
                                                  fmt("%.2e", worst_add) + " dB"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "architecture counts", 1, architecture_counts},
      {2, "routing soundness", 60, routing_soundness},
      {3, "PILOSS uniformity", 60, piloss_uniformity},
      {4, "adjoint gradient", 300, adjoint_vs_fd},
      {5, "solver physics", 120, solver_physics},
      {6, "desk splitter optimization", 7200, desk_splitter},
      {7, "resonator behavioural model", 10, resonator_fit},
      {8, "metric arithmetic", 1, metric_arithmetic},
      {9, "transfer-matrix engine", 10, transfer_engine},
  };
  std::set<int> only;
  for (int k = 1; k < argc; ++k) only.insert(std::stoi(argv[k]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("criterion %d %-28s %s  %s [%.2f s, limit %.0f s%s]\n", c.id, c.name.c_str(), pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs, c.limit_s, in_time ? "" : ", over time");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
