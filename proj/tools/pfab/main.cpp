// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "artifacts.hpp"
#include "commands.hpp"
#include "photon_fabric/errors.hpp"

namespace {

enum class Kind { text, integer, real };

struct Flag {
  std::string name;
  Kind kind;
  std::string help;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<Flag> flags;
  std::function<int(const pfab::Invocation&)> run;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> list = {
      {"optimize",
       "Optimize a device density",
       {{"device", Kind::text, "splitter, crossover or resonator"},
        {"scale", Kind::text, "desk or full"},
        {"seed", Kind::integer, "random seed (required)"},
        {"iterations", Kind::integer, "iteration budget"},
        {"step", Kind::real, "update step in density units"},
        {"radius_nm", Kind::real, "filter radius"}},
       pfab::cmd_optimize},
      {"evaluate",
       "Evaluate a physical density",
       {{"device", Kind::text, "splitter, crossover or resonator"},
        {"scale", Kind::text, "desk or full"},
        {"density", Kind::text, "density CSV"}},
       pfab::cmd_evaluate},
      {"sweep",
       "Sweep a density over wavelength",
       {{"device", Kind::text, "splitter, crossover or resonator"},
        {"scale", Kind::text, "desk or full"},
        {"density", Kind::text, "density CSV"},
        {"start_nm", Kind::real, "first wavelength"},
        {"stop_nm", Kind::real, "last wavelength"},
        {"step_nm", Kind::real, "wavelength step"},
        {"input", Kind::text, "in_top or in_bottom"}},
       pfab::cmd_sweep},
      {"circuit",
       "Generate a circuit layout and count its components",
       {{"kind", Kind::text, "architecture kind"},
        {"n", Kind::integer, "port count"},
        {"colors", Kind::integer, "wavelength channels"}},
       pfab::cmd_circuit},
      {"route",
       "Solve switch states for routing requests",
       {{"layout", Kind::text, "layout JSON"},
        {"kind", Kind::text, "architecture kind"},
        {"n", Kind::integer, "port count"},
        {"colors", Kind::integer, "wavelength channels"},
        {"request", Kind::text, "request JSON"}},
       pfab::cmd_route},
      {"simulate",
       "Simulate the transfer matrix of a configured circuit",
       {{"layout", Kind::text, "layout JSON"},
        {"kind", Kind::text, "architecture kind"},
        {"n", Kind::integer, "port count"},
        {"colors", Kind::integer, "wavelength channels"},
        {"state", Kind::text, "state JSON"},
        {"params", Kind::text, "params JSON, lossless or nominal"},
        {"start_nm", Kind::real, "first wavelength"},
        {"stop_nm", Kind::real, "last wavelength"},
        {"step_nm", Kind::real, "wavelength step"}},
       pfab::cmd_simulate},
      {"report", "Summarize the artifacts in a directory", {{"dir", Kind::text, "artifact directory"}}, pfab::cmd_report},
  };
  return list;
}

int exit_code(pf::ErrorClass c) {
  switch (c) {
    case pf::ErrorClass::config: return 2;
    case pf::ErrorClass::numerical: return 3;
    case pf::ErrorClass::unroutable: return 4;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photonic device and switch-fabric toolkit"};
  app.set_version_flag("--version", pf::io::toolkit_version());
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int jobs = 1;
  app.add_option("--config", config_path, "JSON configuration; flags override its keys")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "artifact directory");
  app.add_option("--jobs", jobs, "maximum concurrent field solves")->check(CLI::PositiveNumber);

  std::map<std::string, std::string> text;
  std::map<std::string, long> integer;
  std::map<std::string, double> real;
  std::string permutation;
  std::map<CLI::App*, const Command*> by_app;
  for (const auto& c : commands()) {
    auto* sub = app.add_subcommand(c.name, c.help);
    by_app[sub] = &c;
    for (const auto& f : c.flags) {
      const std::string key = c.name + "." + f.name;
      std::string opt = "--" + f.name;
      switch (f.kind) {
        case Kind::text: sub->add_option(opt, text[key], f.help); break;
        case Kind::integer: sub->add_option(opt, integer[key], f.help); break;
        case Kind::real: sub->add_option(opt, real[key], f.help); break;
      }
    }
    if (c.name == "route") sub->add_option("--permutation", permutation, "inline permutation, e.g. 1,0,3,2");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const Command& cmd = *by_app.at(sub);
    pfab::Invocation inv;
    inv.out_dir = out_dir;
    inv.jobs = jobs;
    inv.config = config_path.empty() ? nlohmann::json::object() : pfab::read_json_file(config_path);
    if (!inv.config.is_object()) throw pf::InvalidArgument("schema: configuration must be a JSON object");
    for (const auto& f : cmd.flags) {
      if (sub->count("--" + f.name) == 0) continue;
      const std::string key = cmd.name + "." + f.name;
      switch (f.kind) {
        case Kind::text: inv.config[f.name] = text[key]; break;
        case Kind::integer: inv.config[f.name] = integer[key]; break;
        case Kind::real: inv.config[f.name] = real[key]; break;
      }
    }
    if (!permutation.empty()) {
      nlohmann::json perm = nlohmann::json::array();
      std::stringstream ss(permutation);
      std::string cell;
      while (std::getline(ss, cell, ',')) perm.push_back(cell == "*" ? nlohmann::json() : nlohmann::json(std::stoi(cell)));
      inv.config["permutation"] = perm;
    }
    return cmd.run(inv);
  } catch (const pf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.error_class());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: schema: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: schema: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
