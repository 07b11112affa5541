// experiments.hpp — run-time search at fixed success probability, the
// omega-interpolated scaling sweep, and log-log slope estimation.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adsearch/dynamics.hpp"

namespace adsearch {

struct SweepRecord {
  double omega = 0.0;
  std::int64_t n_items = 0;
  double runtime_at_target = 0.0;
  double achieved_probability = 0.0;
  int bisection_iterations = 0;
  // "" on a clean cell; "at_zero" when T = 0 already meets the target;
  // "nonmonotone_bracket" when the log-spaced fallback scan was used;
  // "error:<what>" when the cell failed.
  std::string flag;
};

// Finds the run-time T with |rho00(1) - target| <= p_tol by doubling from
// T0 = sqrt(N)/4 until the target is bracketed, checking the bracket for
// monotone ordering, then bisecting. Throws std::runtime_error if no bracket
// is found after 60 doublings and std::domain_error if the target is below
// the T = 0 success probability 1/N.
SweepRecord runtime_for_success(const SearchModel& model,
                                const CouplingSpec& spec, double omega,
                                double target, double p_tol,
                                double ode_tol = 1e-8);

struct SweepConfig {
  std::vector<double> omega_list;
  std::vector<std::int64_t> n_list;
  CouplingSpec coupling = CouplingSpec::hamiltonian();
  double target = 0.5;
  double p_tol = 1e-4;
  double ode_tol = 1e-8;
  int workers = 0;  // 0: hardware concurrency
};

// Full omega x N grid of runtime_for_success. Cells run concurrently; output
// order is deterministic (omega outer, N inner) regardless of completion
// order, and per-cell failures are recorded in the row's flag.
std::vector<SweepRecord> scaling_sweep(const SweepConfig& config);

struct SlopeFit {
  double omega = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  double tail_slope = 0.0;  // two-point slope of the largest-N pair
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
};

// Ordinary least squares of log2 T on log2 N over the records with
// n_min <= N <= n_max (error-flagged and T = 0 rows are skipped). Requires
// at least four usable points.
SlopeFit slope_fit(std::span<const SweepRecord> records, std::int64_t n_min,
                   std::int64_t n_max);

}  // namespace adsearch
