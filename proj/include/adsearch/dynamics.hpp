// dynamics.hpp — integration of the reparametrized master equation in the
// instantaneous eigenbasis, plus the two independent oracles that pin the
// eigenframe equations down: the zero-run-time closed form and the integral
// equation evaluated by quadrature over a finished trajectory.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "adsearch/model.hpp"
#include "adsearch/schedule.hpp"

namespace adsearch {

// Weights of the generator d rho/ds = -iAT[H,rho] - BT[W,[W,rho]] and the
// run-time T (inverse-energy units). A and B interpolate between the closed
// (B = 0) and wide-open (A = 0) cases.
struct DecoherenceParams {
  DecoherenceParams(double a, double b, double t, CouplingSpec c);

  // A = cos(omega pi/2), B = sin(omega pi/2) for omega in [0, 1].
  static DecoherenceParams from_omega(double omega, double runtime,
                                      CouplingSpec c);

  double a_weight;
  double b_weight;
  double runtime;
  CouplingSpec coupling;
};

// Reduced state in the instantaneous eigenbasis: population difference
// Y = rho00 - rho11 and coherence c = <E0|rho|E1>. The trace is fixed by the
// representation; positivity means y^2 + 4|c|^2 <= 1.
struct EigenFrameState {
  double y;
  double c_re;
  double c_im;
};

// Instantaneous rates entering the eigenframe equations at parameter r:
//   dY/dr = 4 z c_re
//   dc/dr = -z Y + (i phase - damping) c
// with z = +Z(r) in the fixed gauge, phase = A T v Delta and
// damping = B T v Gamma^2, v = 1/(L Delta^2).
struct BlochCoefficients {
  double z;
  double damping;
  double phase;
};

BlochCoefficients bloch_coefficients(const SearchModel& model,
                                     const Schedule& sched,
                                     const DecoherenceParams& params,
                                     double r);

EigenFrameState bloch_derivative(const EigenFrameState& state, double r,
                                 const SearchModel& model,
                                 const Schedule& sched,
                                 const DecoherenceParams& params);

struct TrajectorySample {
  double r;
  double y;
  double c_re;
  double c_im;
  double rho00;  // (1 + y)/2
};

struct Trajectory {
  std::vector<TrajectorySample> samples;  // uniform in r from 0 to 1
  std::int64_t n_items;
  double a_weight;
  double b_weight;
  double runtime;
  double tolerance;
  std::int64_t steps_accepted;
  std::int64_t steps_rejected;
  std::int64_t rhs_evaluations;
};

class IntegratorError : public std::runtime_error {
 public:
  IntegratorError(const std::string& what, double r)
      : std::runtime_error(what + " at r = " + std::to_string(r)),
        r_reached(r) {}
  double r_reached;
};

// Integrate from rho(0) = |E0(0)><E0(0)| (Y = 1, c = 0) to r = 1 with an
// embedded 5(4) pair; when the dephasing rate exceeds 10 per trial step the
// coherence is advanced by an exact exponential factor with the population
// source treated explicitly. Local error per step is kept at tol
// (absolute and relative); samples are filled by cubic Hermite interpolation
// on at least 201 uniform points. tol must lie in [1e-12, 1e-4].
Trajectory integrate(const SearchModel& model, const Schedule& sched,
                     const DecoherenceParams& params, double tol,
                     int n_samples = 201);

// rho00(1) = (1 + Y(1))/2 from a fresh integration.
double success_probability(const SearchModel& model, const Schedule& sched,
                           const DecoherenceParams& params, double tol);

// Evaluates the accumulated transition integral I(1) of the integral-equation
// form of the dynamics by layered quadrature over the trajectory's Y, and
// returns the defect |1 - Y(1) - 4 I(1)|. Wholly independent of the stepper:
// only sampled values and the schedule's Q, R enter.
double integral_equation_residual(const SearchModel& model,
                                  const Schedule& sched,
                                  const DecoherenceParams& params,
                                  const Trajectory& trajectory);

// Validates the two-level reduction: integrates the same generator in the
// fixed N-dimensional basis (N <= 16), projects onto the instantaneous
// eigenbasis, and returns the maximum deviation of rho00 from the eigenframe
// integrator across the sample grid. Throws IntegratorError if the trace
// drifts beyond 1e-9.
double full_space_deviation(const SearchModel& model, const Schedule& sched,
                            const DecoherenceParams& params, double tol);

// Trajectory CSV: header r,y,c_re,c_im,rho00; one row per sample, 17
// significant digits, LF line endings.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

}  // namespace adsearch
