// main.cpp — command-line front end.
//
// Exit codes: 0 success, 1 failed verification, 2 configuration error,
// 3 integrator failure, 4 sweep with more than 10% failed cells,
// 5 malformed sweep CSV.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "adsearch/dynamics.hpp"
#include "commands.hpp"

namespace {

using namespace adsearch::cli;

std::vector<std::int64_t> default_n_grid() {
  std::vector<std::int64_t> n;
  for (int k = 3; k <= 13; ++k) n.push_back(std::int64_t{1} << k);
  return n;
}

std::vector<double> default_omega_grid() {
  std::vector<double> omega;
  for (int i = 0; i <= 9; ++i) omega.push_back(0.1 * i);
  omega.push_back(0.95);
  omega.push_back(1.0);
  return omega;
}

// Plain key=value configuration files: one pair per line, '#' comment lines,
// blank lines ignored. Returns false on a malformed line.
bool load_config_pairs(const std::string& path,
                       std::vector<std::pair<std::string, std::string>>& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  const auto trim = [](std::string s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return std::string();
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
  };
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) return false;
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") return false;
    out.emplace_back(key, value);
  }
  return true;
}

// Composes a config file into the argument list: config-derived options are
// injected right after the subcommand so explicit flags always win (any
// option already present on the command line is left untouched).
int apply_config_file(std::vector<std::string>& args) {
  static const char* kCommands[] = {"simulate", "sweep", "bounds", "verify",
                                    "figure1"};
  std::size_t sub_pos = args.size();
  for (std::size_t i = 0; i < args.size() && sub_pos == args.size(); ++i) {
    for (const char* name : kCommands) {
      if (args[i] == name) sub_pos = i;
    }
  }
  if (sub_pos == args.size()) return 0;

  std::string config_path;
  for (std::size_t i = sub_pos + 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) return 0;

  std::vector<std::pair<std::string, std::string>> pairs;
  if (!load_config_pairs(config_path, pairs)) {
    std::cerr << "configuration error: cannot read config file '"
              << config_path << "'\n";
    return 2;
  }
  std::vector<std::string> inject;
  for (const auto& [key, value] : pairs) {
    const std::string flag = "--" + key;
    bool overridden = false;
    for (std::size_t i = sub_pos + 1; i < args.size(); ++i) {
      if (args[i] == flag || args[i].rfind(flag + "=", 0) == 0) {
        overridden = true;
      }
    }
    if (!overridden) {
      inject.push_back(flag);
      if (!value.empty()) inject.push_back(value);
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1,
              inject.begin(), inject.end());
  return 0;
}

// The effective configuration of a subcommand, echoed into output files.
ConfigEcho echo_of(const CLI::App& sub) {
  ConfigEcho echo;
  echo.emplace_back("command", sub.get_name());
  std::istringstream lines(sub.config_to_str(true, false));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    echo.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return echo;
}

void add_sweep_options(CLI::App* cmd, SweepCliConfig& cfg) {
  cfg.n_list = default_n_grid();
  cfg.omega_list = default_omega_grid();
  cmd->add_option("--omega-list", cfg.omega_list,
                  "omega grid (closed 0 ... 1 wide-open)")
      ->delimiter(',');
  cmd->add_option("--n-list", cfg.n_list, "list lengths (powers of two)")
      ->delimiter(',');
  cmd->add_option("--coupling", cfg.coupling, "coupling kind: h | power")
      ->check(CLI::IsMember({"h", "hamiltonian", "power"}));
  cmd->add_option("--sigma", cfg.sigma, "power-law exponent")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--target", cfg.target, "target success probability")
      ->check(CLI::Range(1e-6, 1.0 - 1e-6));
  cmd->add_option("--p-tol", cfg.p_tol, "probability tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", cfg.tol, "integrator tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
  cmd->add_option("--window-min", cfg.window_min, "slope-fit window lower N");
  cmd->add_option("--window-max", cfg.window_max, "slope-fit window upper N");
}

std::string config_file;  // read before parsing; kept as an option for help

void add_config_option(CLI::App* cmd) {
  cmd->add_option("--config", config_file,
                  "key=value config file (flags take precedence)");
}

int run(int argc, char** argv) {
  CLI::App app{"local adiabatic search with eigenbasis dephasing"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  SimulateConfig sim;
  auto* simulate = app.add_subcommand(
      "simulate", "integrate one trajectory and write it as CSV");
  simulate->option_defaults()->always_capture_default();
  add_config_option(simulate);
  simulate->add_option("--n", sim.n_items, "list length N")
      ->required()
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  auto* omega_opt =
      simulate->add_option("--omega", sim.omega, "interpolation angle in [0,1]")
          ->check(CLI::Range(0.0, 1.0));
  auto* a_opt = simulate->add_option("--a", sim.a_weight,
                                     "Hamiltonian weight A (with --b)");
  auto* b_opt =
      simulate->add_option("--b", sim.b_weight, "dephasing weight B");
  omega_opt->excludes(a_opt)->excludes(b_opt);
  simulate->add_option("--runtime,-T", sim.runtime, "run-time T")
      ->required()
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--coupling", sim.coupling, "coupling kind: h | power")
      ->check(CLI::IsMember({"h", "hamiltonian", "power"}));
  simulate->add_option("--sigma", sim.sigma, "power-law exponent");
  simulate->add_option("--schedule", sim.schedule,
                       "schedule: local | global (debug, unreparametrized)")
      ->check(CLI::IsMember({"local", "global"}));
  simulate->add_option("--tol", sim.tol, "integrator tolerance");
  simulate->add_option("--samples", sim.samples, "trajectory samples (>= 201)");
  simulate->add_option("--out", sim.out, "trajectory CSV path");

  SweepCliConfig sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "run-time scaling sweep over (omega, N) at fixed target");
  sweep_cmd->option_defaults()->always_capture_default();
  add_config_option(sweep_cmd);
  add_sweep_options(sweep_cmd, sweep);
  sweep_cmd->add_option("--out", sweep.out, "sweep CSV path");
  sweep_cmd->add_option("--slopes-out", sweep.slopes_out, "slope CSV path");

  BoundsConfig bounds;
  bounds.n_list = {4, 16, 64, 256, 1024};
  bounds.t_list = {5.0, 25.0, 125.0, 625.0, 3125.0};
  bounds.omega_list = {0.2, 0.5, 0.8};
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "compare simulated success probabilities with the bounds");
  bounds_cmd->option_defaults()->always_capture_default();
  add_config_option(bounds_cmd);
  bounds_cmd->add_option("--n-list", bounds.n_list, "list lengths")
      ->delimiter(',');
  bounds_cmd->add_option("--t-list", bounds.t_list, "run-times")
      ->delimiter(',');
  bounds_cmd->add_option("--omega-list", bounds.omega_list, "omega grid")
      ->delimiter(',');
  bounds_cmd
      ->add_option("--coupling", bounds.coupling, "coupling kind: h | power")
      ->check(CLI::IsMember({"h", "hamiltonian", "power"}));
  bounds_cmd->add_option("--sigma", bounds.sigma, "power-law exponent");
  bounds_cmd->add_option("--tol", bounds.tol, "integrator tolerance");
  bounds_cmd->add_option("--out", bounds.out, "bound-report CSV path");

  unsigned seed = 20240901;
  auto* verify_cmd =
      app.add_subcommand("verify", "run the desk-scale invariant checks");
  verify_cmd->option_defaults()->always_capture_default();
  add_config_option(verify_cmd);
  verify_cmd->add_option("--seed", seed, "seed for randomized spot checks");

  Figure1Config fig;
  auto* fig_cmd = app.add_subcommand(
      "figure1", "render the scaling figure (SVG) from a sweep");
  fig_cmd->option_defaults()->always_capture_default();
  add_config_option(fig_cmd);
  fig_cmd->add_option("--sweep-csv", fig.sweep_csv,
                      "existing sweep CSV (otherwise computed in-process)");
  fig_cmd->add_option("--out", fig.out, "SVG output path");
  add_sweep_options(fig_cmd, fig.sweep);

  std::vector<std::string> args(argv + 1, argv + argc);
  if (const int rc = apply_config_file(args); rc != 0) return rc;
  std::reverse(args.begin(), args.end());  // CLI11 expects reversed args
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (const char* env = std::getenv("ADSEARCH_WORKERS")) {
    const int workers = std::atoi(env);
    if (workers > 0) {
      sweep.workers = workers;
      fig.sweep.workers = workers;
    }
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, echo_of(*simulate));
    if (sweep_cmd->parsed()) {
      if (sweep.omega_list.empty() || sweep.n_list.empty()) {
        std::cerr << "empty sweep grid\n";
        return 2;
      }
      return cmd_sweep(sweep, echo_of(*sweep_cmd));
    }
    if (bounds_cmd->parsed()) return cmd_bounds(bounds, echo_of(*bounds_cmd));
    if (verify_cmd->parsed()) return cmd_verify(seed);
    if (fig_cmd->parsed()) {
      if (fig.sweep_csv.empty() &&
          (fig.sweep.omega_list.empty() || fig.sweep.n_list.empty())) {
        std::cerr << "empty sweep grid\n";
        return 2;
      }
      return cmd_figure1(fig, echo_of(*fig_cmd));
    }
  } catch (const adsearch::IntegratorError& e) {
    std::cerr << "integrator failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
