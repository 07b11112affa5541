// verification.hpp — desk-scale invariant checks shared by the verify
// command, the unit tests, and the acceptance suite. Each check is exposed
// individually so a test can feed it deliberately broken inputs.

#pragma once

#include <string>
#include <vector>

#include "adsearch/dynamics.hpp"
#include "adsearch/schedule.hpp"

namespace adsearch {

struct CheckResult {
  std::string name;
  bool passed;
  double observed;  // the measured deviation / margin
  double limit;     // the threshold it was compared against
  std::string detail;
};

// Max |s_of_r(r_of_s(s)) - s| over a uniform grid in s.
double schedule_round_trip_error(const Schedule& sched, int grid = 1001);

// Max deviation of the closed-form s_of_r from direct quadrature of
// Delta^{-2}, over a uniform grid in r. Sensitive to a wrong normalization.
double schedule_quadrature_deviation(const Schedule& sched, int grid = 1001);

struct T0OracleDeviation {
  double y_dev;  // max |Y(r) - cos(2 int Z)|
  double c_dev;  // max |c_re(r) + sin(2 int Z)/2|  (coherence carries the
                 // coupling sign; a flipped gauge shows up here)
};

// Compares a finished trajectory against the zero-run-time closed form.
// Meaningful for trajectories integrated at T = 0.
T0OracleDeviation t0_oracle_deviation(const SearchModel& model,
                                      const Trajectory& trajectory);

// min over samples of Y(r) - Y0(r); nonnegative (up to integration error)
// for every run-time.
double protection_margin(const SearchModel& model,
                         const Trajectory& trajectory);

// Max |y^2 + 4|c|^2 - 1| over samples; zero for closed-case dynamics.
double purity_drift(const Trajectory& trajectory);

// The full desk-scale suite (everything above plus the spectral identities,
// bound compliance spot checks, and necessity monotonicity grids).
std::vector<CheckResult> run_verification_suite(unsigned rng_seed = 20240901);

}  // namespace adsearch
