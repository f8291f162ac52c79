// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "artifacts.hpp"
#include "photon_fabric/devices/geometry.hpp"
#include "photon_fabric/devices/lorentzian.hpp"
#include "photon_fabric/devices/metrics.hpp"
#include "photon_fabric/errors.hpp"
#include "photon_fabric/fabric/generators.hpp"
#include "photon_fabric/io/csv.hpp"
#include "photon_fabric/io/raster.hpp"
#include "photon_fabric/netsim/circuit.hpp"
#include "photon_fabric/routing/solvers.hpp"
#include "photon_fabric/routing/trace.hpp"
#include "photon_fabric/topopt/optimizer.hpp"
#include "photon_fabric/units.hpp"

namespace pfab {

using pf::InvalidArgument;
namespace fs = std::filesystem;

namespace {

// Typed reads from a config object; every violation is a schema error (exit 2).
class Schema {
 public:
  Schema(const nlohmann::json& j, std::string command, std::set<std::string> known)
      : j_(j), cmd_(std::move(command)) {
    if (!j_.is_object()) fail("configuration must be a JSON object");
    for (const auto& [k, v] : j_.items())
      if (!known.count(k)) fail("unknown key '" + k + "'");
  }

  [[noreturn]] void fail(const std::string& what) const { throw InvalidArgument("schema (" + cmd_ + "): " + what); }

  bool has(const std::string& key) const { return j_.contains(key) && !j_[key].is_null(); }

  std::string str(const std::string& key, std::optional<std::string> def = {},
                  const std::vector<std::string>& allowed = {}) const {
    if (!has(key)) {
      if (!def) fail("'" + key + "' is required");
      return *def;
    }
    if (!j_[key].is_string()) fail("'" + key + "' must be a string");
    auto v = j_[key].get<std::string>();
    if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail("'" + key + "' must be one of: " + list);
    }
    return v;
  }

  double num(const std::string& key, std::optional<double> def, double lo, double hi) const {
    if (!has(key)) {
      if (!def) fail("'" + key + "' is required");
      return *def;
    }
    if (!j_[key].is_number()) fail("'" + key + "' must be a number");
    const double v = j_[key].get<double>();
    if (!(v >= lo && v <= hi)) fail("'" + key + "' out of range");
    return v;
  }

  long integer(const std::string& key, std::optional<long> def, long lo, long hi) const {
    if (!has(key)) {
      if (!def) fail("'" + key + "' is required");
      return *def;
    }
    if (!j_[key].is_number_integer()) fail("'" + key + "' must be an integer");
    const long v = j_[key].get<long>();
    if (v < lo || v > hi) fail("'" + key + "' out of range");
    return v;
  }

 private:
  const nlohmann::json& j_;
  std::string cmd_;
};

RunContext make_context(const Invocation& inv, ojson effective) {
  RunContext ctx;
  ctx.config = std::move(effective);
  ctx.out_dir = inv.out_dir;
  ctx.jobs = std::max(1, inv.jobs);
  fs::create_directories(ctx.out_dir);
  return ctx;
}

const std::vector<std::string> kDevices = {"splitter", "crossover", "resonator"};
const std::vector<std::string> kScales = {"desk", "full"};

pf::devices::DeviceGeometry geometry_for(const std::string& scale) {
  return pf::devices::DeviceGeometry::preset(scale == "full" ? pf::devices::Scale::full : pf::devices::Scale::desk);
}

ojson metrics_json(const std::vector<pf::devices::DeviceMetrics>& ms) {
  ojson arr = ojson::array();
  for (const auto& m : ms) {
    ojson ports;
    ojson intended = ojson::array();
    for (size_t k = 0; k < m.ports.size(); ++k) {
      ports[m.ports[k]] = m.ratios[k];
      if (m.intended[k]) intended.push_back(m.ports[k]);
    }
    arr.push_back({{"condition", m.condition},
                   {"wavelength_nm", pf::to_nm(m.wavelength)},
                   {"injected", m.injected},
                   {"ratios", ports},
                   {"intended", intended},
                   {"insertion_loss_db", m.insertion_loss},
                   {"crosstalk_db", m.crosstalk}});
  }
  return arr;
}

void print_metrics(const std::vector<pf::devices::DeviceMetrics>& ms) {
  for (const auto& m : ms) {
    std::cout << m.condition << ':';
    for (size_t k = 0; k < m.ports.size(); ++k) std::cout << ' ' << m.ports[k] << '=' << m.ratios[k];
    std::cout << "  IL " << m.insertion_loss << " dB  XT " << m.crosstalk << " dB\n";
  }
}

std::vector<pf::devices::DeviceMetrics> device_metrics(const std::string& device,
                                                       const pf::devices::DeviceGeometry& geom,
                                                       const Eigen::ArrayXXd& rho, int jobs) {
  const pf::topopt::EvalOptions eo{jobs};
  auto ms = pf::devices::evaluate_device(pf::devices::make_device_problem(device, geom), rho, eo);
  if (device == "splitter") {
    auto comb = pf::devices::evaluate_device(pf::devices::make_combiner_check(geom), rho, eo);
    ms.insert(ms.end(), comb.begin(), comb.end());
  }
  return ms;
}

Eigen::ArrayXXd read_density(const std::string& path, const pf::devices::DeviceGeometry& geom) {
  auto rho = pf::io::read_field_csv(path);
  const auto layout = pf::devices::build_layout(geom);
  if (rho.rows() != layout.px || rho.cols() != layout.py)
    throw InvalidArgument("density " + path + " is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                          ", geometry expects " + std::to_string(layout.px) + "x" + std::to_string(layout.py));
  if ((rho < 0).any() || (rho > 1).any()) throw InvalidArgument("density values must lie in [0, 1]");
  return rho;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

pf::fabric::CircuitLayout load_layout(const nlohmann::json& j) {
  return pf::fabric::layout_from_json(j.contains("layout") ? j["layout"] : j);
}

pf::fabric::CircuitLayout layout_from_config(const Schema& s) {
  if (s.has("layout")) return load_layout(read_json_file(s.str("layout")));
  pf::fabric::ArchitectureSpec spec;
  spec.kind = s.str("kind", std::nullopt, pf::fabric::architecture_kinds());
  spec.n = static_cast<int>(s.integer("n", 0, 0, 64));
  spec.colors = static_cast<int>(s.integer("colors", 0, 0, 16));
  return pf::fabric::generate(spec);
}

std::string fmt(double v) { return pf::io::format_double(v); }

}  // namespace

int cmd_optimize(const Invocation& inv) {
  const Schema s(inv.config, "optimize", {"device", "scale", "seed", "iterations", "step", "radius_nm"});
  ojson eff;
  eff["command"] = "optimize";
  eff["device"] = s.str("device", std::nullopt, kDevices);
  eff["scale"] = s.str("scale", "desk", kScales);
  eff["seed"] = s.integer("seed", std::nullopt, 0, std::numeric_limits<long>::max());
  eff["iterations"] = s.integer("iterations", 200, 1, 100000);
  eff["step"] = s.num("step", 0.05, 1e-6, 1.0);
  eff["radius_nm"] = s.num("radius_nm", 120.0, 0.0, 2000.0);
  const RunContext ctx = make_context(inv, eff);

  const std::string device = eff["device"];
  const auto geom = geometry_for(eff["scale"]);
  const auto problem = pf::devices::make_device_problem(device, geom);
  if (eff["scale"] == "full")
    std::cerr << "warning: full-scale " << device << " optimization solves a " << problem.background.nx << "x"
              << problem.background.ny << " grid " << problem.conditions.size()
              << " times per iteration; expect many hours of runtime\n";

  // The seed draws a small perturbation around the uniform 0.5 start.
  std::mt19937_64 rng(eff["seed"].get<unsigned long>());
  std::uniform_real_distribution<double> jitter(-0.02, 0.02);
  auto init = problem.uniform_density(0.5);
  for (Eigen::Index k = 0; k < init.rho.size(); ++k) init.rho(k) += jitter(rng);

  pf::topopt::OptimizerOptions opts;
  opts.iterations = static_cast<int>(eff["iterations"].get<long>());
  opts.step = eff["step"];
  opts.radius = pf::from_nm(eff["radius_nm"].get<double>());
  opts.jobs = ctx.jobs;
  const auto res = pf::topopt::optimize(problem, init, opts, [&](const pf::topopt::HistoryRow& h) {
    if (h.iteration % 10 == 0 || h.iteration + 1 == opts.iterations)
      std::cerr << "iteration " << h.iteration << "  F " << h.objective << "  beta " << h.beta << '\n';
  });

  std::vector<std::string> columns;
  for (const auto& c : problem.conditions)
    for (const auto& t : c.targets) columns.push_back(c.name + ":" + t.name);
  pf::io::write_history_csv(ctx.path("history.csv"), res.history, columns, ctx.header());
  pf::io::write_field_csv(ctx.path("density.csv"), res.continuous.rho, ctx.header());
  pf::io::write_field_csv(ctx.path("density_binary.csv"), res.binary.rho, ctx.header());
  pf::io::write_pgm(ctx.path("density_binary.pgm"), res.binary.rho);

  const auto ms = device_metrics(device, geom, res.binary.rho, ctx.jobs);
  ctx.write_json("metrics.json", {{"objective", res.final_eval.objective},
                                  {"solves", res.solves},
                                  {"metrics", metrics_json(ms)}});
  print_metrics(ms);
  return 0;
}

int cmd_evaluate(const Invocation& inv) {
  const Schema s(inv.config, "evaluate", {"device", "scale", "density"});
  ojson eff;
  eff["command"] = "evaluate";
  eff["device"] = s.str("device", std::nullopt, kDevices);
  eff["scale"] = s.str("scale", "desk", kScales);
  eff["density"] = s.str("density");
  eff["density_sha256"] = file_digest(eff["density"]);
  const RunContext ctx = make_context(inv, eff);
  const auto geom = geometry_for(eff["scale"]);
  const auto rho = read_density(eff["density"], geom);
  const auto ms = device_metrics(eff["device"], geom, rho, ctx.jobs);
  ctx.write_json("metrics.json", {{"metrics", metrics_json(ms)}});
  print_metrics(ms);
  return 0;
}

int cmd_sweep(const Invocation& inv) {
  const Schema s(inv.config, "sweep", {"device", "scale", "density", "start_nm", "stop_nm", "step_nm", "input"});
  ojson eff;
  eff["command"] = "sweep";
  eff["device"] = s.str("device", std::nullopt, kDevices);
  eff["scale"] = s.str("scale", "desk", kScales);
  eff["density"] = s.str("density");
  eff["density_sha256"] = file_digest(eff["density"]);
  eff["start_nm"] = s.num("start_nm", 1540.0, 1500.0, 1600.0);
  eff["stop_nm"] = s.num("stop_nm", 1560.0, 1500.0, 1600.0);
  eff["step_nm"] = s.num("step_nm", 0.5, 1e-4, 100.0);
  eff["input"] = s.str("input", "in_top", {"in_top", "in_bottom"});
  const RunContext ctx = make_context(inv, eff);

  const auto geom = geometry_for(eff["scale"]);
  const auto rho = read_density(eff["density"], geom);
  const auto input = eff["input"] == "in_top" ? pf::devices::Port::in_top : pf::devices::Port::in_bottom;
  const double start = pf::from_nm(eff["start_nm"].get<double>());
  const double stop = pf::from_nm(eff["stop_nm"].get<double>());
  const double step = pf::from_nm(eff["step_nm"].get<double>());

  pf::devices::Spectra sp;
  if (const auto cache = cache_dir()) {
    // Per-point port powers keyed by density, geometry, input and wavelength.
    sp.wavelength = pf::devices::sweep_grid(start, stop, step);
    sp.ports = {"out_top", "out_bottom"};
    sp.power.assign(2, std::vector<double>(sp.wavelength.size()));
    int hits = 0;
    for (size_t k = 0; k < sp.wavelength.size(); ++k) {
      const double wl = sp.wavelength[k];
      const auto key = sha256_hex(eff["density_sha256"].get<std::string>() + "|" + eff["scale"].get<std::string>() +
                                  "|" + eff["input"].get<std::string>() + "|" + fmt(wl) + "|" +
                                  pf::io::toolkit_version());
      const auto file = *cache / ("sweep_" + key + ".json");
      if (fs::exists(file)) {
        const auto j = read_json_file(file.string());
        sp.power[0][k] = j.at("out_top");
        sp.power[1][k] = j.at("out_bottom");
        ++hits;
        continue;
      }
      const auto one = pf::devices::sweep_device(rho, geom, wl, wl, 1e-9, input, 1);
      sp.power[0][k] = one.power[0][0];
      sp.power[1][k] = one.power[1][0];
      std::ofstream(file) << nlohmann::json{{"out_top", sp.power[0][k]}, {"out_bottom", sp.power[1][k]}}.dump();
    }
    std::cerr << "cache: " << hits << " of " << sp.wavelength.size() << " points reused\n";
  } else {
    sp = pf::devices::sweep_device(rho, geom, start, stop, step, input, ctx.jobs);
  }

  const bool resonator = eff["device"] == "resonator";
  if (resonator) {
    // Through is the input's own rail, drop the other.
    const bool top = input == pf::devices::Port::in_top;
    sp.ports = {"through", "drop"};
    if (!top) std::swap(sp.power[0], sp.power[1]);
  }
  pf::io::write_spectra_csv(ctx.path("spectra.csv"), sp, ctx.header());

  if (resonator) {
    ojson fits = ojson::array();
    for (const auto& f : pf::devices::find_resonances(sp.wavelength, sp.power[1]))
      fits.push_back({{"lambda_r_nm", pf::to_nm(f.lambda_r)},
                      {"q", f.q},
                      {"fwhm_nm", pf::to_nm(f.fwhm)},
                      {"peak", f.peak},
                      {"floor", f.floor},
                      {"extinction_db", f.extinction},
                      {"fit_residual", f.fit_residual}});
    std::cout << fits.size() << " resonance(s) found\n";
    ctx.write_json("resonances.json", {{"resonances", fits}});
  }
  std::cout << "wrote " << sp.wavelength.size() << " points to " << ctx.path("spectra.csv") << '\n';
  return 0;
}

int cmd_circuit(const Invocation& inv) {
  const Schema s(inv.config, "circuit", {"kind", "n", "colors"});
  ojson eff;
  eff["command"] = "circuit";
  eff["kind"] = s.str("kind", std::nullopt, pf::fabric::architecture_kinds());
  eff["n"] = s.integer("n", 0, 0, 64);
  eff["colors"] = s.integer("colors", 0, 0, 16);
  const RunContext ctx = make_context(inv, eff);
  const auto layout = pf::fabric::generate(
      {eff["kind"], static_cast<int>(eff["n"].get<long>()), static_cast<int>(eff["colors"].get<long>())});
  const auto counts = pf::fabric::to_json(pf::fabric::count_components(layout));
  ctx.write_json("layout.json", {{"layout", pf::fabric::to_json(layout)}});
  ctx.write_json("counts.json", {{"counts", counts}});
  std::cout << counts.dump() << '\n';
  return 0;
}

int cmd_route(const Invocation& inv) {
  const Schema s(inv.config, "route", {"layout", "kind", "n", "colors", "request", "permutation"});
  const auto layout = layout_from_config(s);

  // Normalize every accepted request form into a list of (id, request) pairs.
  nlohmann::json requests = nlohmann::json::array();
  if (s.has("permutation")) {
    requests.push_back({{"id", "0"}, {"permutation", inv.config["permutation"]}});
  } else {
    const auto j = read_json_file(s.str("request"));
    if (j.contains("requests")) {
      requests = j["requests"];
    } else {
      auto one = j;
      if (!one.contains("id")) one["id"] = "0";
      requests.push_back(one);
    }
  }

  ojson eff;
  eff["command"] = "route";
  eff["layout_sha256"] = sha256_hex(pf::fabric::to_json(layout).dump());
  eff["requests"] = requests;
  const RunContext ctx = make_context(inv, eff);

  ojson states;
  std::vector<std::vector<std::string>> rows;
  bool all_ok = true;
  std::string first_error;
  for (const auto& r : requests) {
    const std::string id = r.at("id").is_string() ? r["id"].get<std::string>() : r["id"].dump();
    try {
      pf::routing::SwitchState st;
      bool ok = false;
      if (r.contains("entries")) {
        const auto wr = pf::routing::wavelength_request_from_json(r);
        st = pf::routing::solve_wavelength_routing(layout, wr);
        ok = true;
        for (double c : pf::fabric::layout_colors(layout))
          ok = ok && pf::routing::verify(layout, st, pf::routing::color_request(layout, wr, c), c);
      } else {
        const auto req = pf::routing::request_from_json(r);
        std::optional<double> color;
        if (r.contains("color_nm")) color = pf::from_nm(r["color_nm"].get<double>());
        st = pf::routing::solve_state(layout, req, color);
        ok = pf::routing::verify(layout, st, req, color);
      }
      states[id] = pf::routing::to_json(st);
      rows.push_back({id, ok ? "true" : "false", std::to_string(pf::routing::non_ambient_count(layout, st))});
      all_ok = all_ok && ok;
    } catch (const pf::Unroutable& e) {
      rows.push_back({id, "unroutable", ""});
      all_ok = false;
      if (first_error.empty()) first_error = id + ": " + e.what();
    }
  }
  pf::io::write_table_csv(ctx.path("verification.csv"), {"request_id", "verified", "non_ambient"}, rows, ctx.header());
  if (requests.size() == 1 && states.size() == 1)
    ctx.write_json("state.json", {{"state", states.begin().value()}});
  else
    ctx.write_json("state.json", {{"states", states}});
  for (const auto& r : rows) std::cout << r[0] << ' ' << r[1] << ' ' << r[2] << '\n';
  if (!all_ok) throw pf::Unroutable(first_error.empty() ? "verification failed" : first_error);
  return 0;
}

int cmd_simulate(const Invocation& inv) {
  const Schema s(inv.config, "simulate",
                 {"layout", "kind", "n", "colors", "state", "params", "start_nm", "stop_nm", "step_nm"});
  const auto layout = layout_from_config(s);
  pf::routing::SwitchState state = pf::routing::ambient_state(layout);
  if (s.has("state")) {
    const auto j = read_json_file(s.str("state"));
    state = pf::routing::state_from_json(j.contains("state") ? j["state"] : j);
  }
  pf::netsim::DeviceParams params = pf::netsim::DeviceParams::nominal();
  const std::string pname = s.str("params", "nominal");
  if (pname == "lossless")
    params = pf::netsim::DeviceParams::lossless();
  else if (pname != "nominal")
    params = pf::netsim::params_from_json(read_json_file(pname));
  params.validate();

  ojson eff;
  eff["command"] = "simulate";
  eff["layout_sha256"] = sha256_hex(pf::fabric::to_json(layout).dump());
  eff["state"] = pf::routing::to_json(state);
  eff["params"] = pf::netsim::to_json(params);
  eff["start_nm"] = s.num("start_nm", 1550.0, 1500.0, 1600.0);
  eff["stop_nm"] = s.num("stop_nm", eff["start_nm"].get<double>(), 1500.0, 1600.0);
  eff["step_nm"] = s.num("step_nm", 0.1, 1e-4, 100.0);
  const RunContext ctx = make_context(inv, eff);

  const auto wls = pf::devices::sweep_grid(pf::from_nm(eff["start_nm"].get<double>()),
                                           pf::from_nm(eff["stop_nm"].get<double>()),
                                           pf::from_nm(eff["step_nm"].get<double>()));
  const auto resp = pf::netsim::circuit_response(layout, state, params, wls, ctx.jobs);

  const size_t n_in = layout.inputs.size();
  const size_t n_out = layout.outputs.size();
  std::vector<std::string> cols = {"wavelength_nm"};
  for (size_t j = 0; j < n_out; ++j)
    for (size_t i = 0; i < n_in; ++i) cols.push_back("T_o" + std::to_string(j) + "_i" + std::to_string(i));
  std::vector<std::vector<std::string>> rows;
  std::vector<std::vector<std::string>> prow;
  for (const auto& t : resp) {
    std::vector<std::string> row = {fmt(pf::to_nm(t.wavelength))};
    for (size_t j = 0; j < n_out; ++j)
      for (size_t i = 0; i < n_in; ++i)
        row.push_back(fmt(std::norm(t.matrix(layout.outputs[j], layout.inputs[i]))));
    rows.push_back(std::move(row));

    const auto tr = pf::routing::trace_paths(layout, state, t.wavelength);
    std::vector<int> intended(tr.output.begin(), tr.output.end());
    for (int& o : intended)
      if (o < 0) o = -1;
    const auto pm = pf::netsim::path_metrics(layout, t, intended);
    for (size_t i = 0; i < n_in; ++i) {
      if (intended[i] < 0) continue;
      prow.push_back({fmt(pf::to_nm(t.wavelength)), std::to_string(i), std::to_string(intended[i]),
                      fmt(pm.insertion_loss[i]), fmt(pm.crosstalk[i])});
    }
  }
  pf::io::write_table_csv(ctx.path("response.csv"), cols, rows, ctx.header());
  pf::io::write_table_csv(ctx.path("path_metrics.csv"),
                          {"wavelength_nm", "input", "output", "insertion_loss_db", "crosstalk_db"}, prow,
                          ctx.header());
  std::cout << "simulated " << wls.size() << " wavelength(s), " << prow.size() << " traced path record(s)\n";
  return 0;
}

int cmd_report(const Invocation& inv) {
  const Schema s(inv.config, "report", {"dir"});
  const fs::path dir = s.str("dir", inv.out_dir);
  if (!fs::is_directory(dir)) throw InvalidArgument("no such directory " + dir.string());

  std::ostringstream md;
  md << "# Run report\n\n";
  int sections = 0;
  if (fs::exists(dir / "counts.json")) {
    const auto j = read_json_file((dir / "counts.json").string());
    md << "## Components\n\n";
    for (const auto& [k, v] : j.at("counts").items()) md << "- " << k << ": " << v.dump() << '\n';
    md << '\n';
    ++sections;
  }
  if (fs::exists(dir / "metrics.json")) {
    const auto j = read_json_file((dir / "metrics.json").string());
    md << "## Device metrics\n\n| condition | IL (dB) | XT (dB) |\n|---|---|---|\n";
    for (const auto& m : j.at("metrics"))
      md << "| " << m.at("condition").get<std::string>() << " | " << fmt(m.at("insertion_loss_db").get<double>())
         << " | " << fmt(m.at("crosstalk_db").get<double>()) << " |\n";
    md << '\n';
    ++sections;
  }
  if (fs::exists(dir / "path_metrics.csv")) {
    std::ifstream in(dir / "path_metrics.csv");
    std::string line;
    double worst_il = 0;
    double worst_xt = -1e300;
    int n = 0;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("wavelength_nm", 0) == 0) continue;
      std::stringstream ss(line);
      std::string cell;
      std::vector<std::string> c;
      while (std::getline(ss, cell, ',')) c.push_back(cell);
      if (c.size() != 5) continue;
      worst_il = std::max(worst_il, std::stod(c[3]));
      worst_xt = std::max(worst_xt, std::stod(c[4]));
      ++n;
    }
    md << "## Circuit paths\n\n- records: " << n << "\n- worst insertion loss: " << fmt(worst_il)
       << " dB\n- worst crosstalk: " << fmt(worst_xt) << " dB\n\n";
    ++sections;
  }
  if (fs::exists(dir / "verification.csv")) {
    std::ifstream in(dir / "verification.csv");
    std::string line;
    int total = 0;
    int verified = 0;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("request_id", 0) == 0) continue;
      ++total;
      verified += line.find(",true,") != std::string::npos;
    }
    md << "## Routing\n\n- requests: " << total << "\n- verified: " << verified << "\n\n";
    ++sections;
  }
  if (fs::exists(dir / "history.csv")) {
    std::ifstream in(dir / "history.csv");
    std::string line;
    std::string last;
    int rows = 0;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("iteration", 0) == 0) continue;
      last = line;
      ++rows;
    }
    md << "## Optimization\n\n- iterations: " << rows << "\n- last row: `" << last << "`\n\n";
    ++sections;
  }
  if (sections == 0) throw InvalidArgument("no known artifacts in " + dir.string());
  std::ofstream(dir / "report.md") << md.str();
  std::cout << md.str();
  return 0;
}

}  // namespace pfab
