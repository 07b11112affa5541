// commands.hpp — subcommand implementations behind the CLI front end.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adsearch/experiments.hpp"

namespace adsearch::cli {

// key=value pairs echoed into every output file as "#cfg " comment lines.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

struct SimulateConfig {
  std::int64_t n_items = 64;
  double omega = -1.0;  // < 0: use explicit weights
  double a_weight = 1.0;
  double b_weight = 0.0;
  double runtime = 0.0;
  std::string coupling = "h";
  double sigma = 1.0;
  std::string schedule = "local";  // "global" is a debug option
  double tol = 1e-9;
  int samples = 201;
  std::string out = "trajectory.csv";
};

struct SweepCliConfig {
  std::vector<double> omega_list;
  std::vector<std::int64_t> n_list;
  std::string coupling = "h";
  double sigma = 1.0;
  double target = 0.5;
  double p_tol = 1e-4;
  double tol = 1e-8;
  int workers = 0;
  std::string out = "sweep.csv";
  std::string slopes_out = "slopes.csv";
  std::int64_t window_min = 0;  // 0: top half of n_list
  std::int64_t window_max = 0;
};

struct BoundsConfig {
  std::vector<std::int64_t> n_list;
  std::vector<double> t_list;
  std::vector<double> omega_list;
  std::string coupling = "h";
  double sigma = 1.0;
  double tol = 1e-9;
  std::string out = "bounds.csv";
};

struct Figure1Config {
  std::string sweep_csv;  // empty: compute the sweep in-process
  std::string out = "figure1.svg";
  SweepCliConfig sweep;
};

CouplingSpec coupling_from(const std::string& name, double sigma);

int cmd_simulate(const SimulateConfig& cfg, const ConfigEcho& echo);
int cmd_sweep(const SweepCliConfig& cfg, const ConfigEcho& echo);
int cmd_bounds(const BoundsConfig& cfg, const ConfigEcho& echo);
int cmd_verify(unsigned seed);
int cmd_figure1(const Figure1Config& cfg, const ConfigEcho& echo);

// Helpers shared with the figure renderer and tests.
std::string format_g17(double v);
std::string format_g12(double v);

struct ParsedSweep {
  std::vector<SweepRecord> records;
};

// Parses a sweep CSV (comment lines ignored); returns false on malformed
// input.
bool parse_sweep_csv(const std::string& path, ParsedSweep& out);

}  // namespace adsearch::cli
