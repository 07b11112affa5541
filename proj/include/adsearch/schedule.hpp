// schedule.hpp — the local-adiabatic reparametrization r = f(s) that slows
// the sweep near the gap minimum, and the accumulated dephasing and phase
// integrals Q(r), R(r) built on top of it.

#pragma once

#include <optional>

#include "adsearch/model.hpp"
#include "adsearch/quadrature.hpp"

namespace adsearch {

// Normalization L = int_0^1 Delta^{-2} = (N/sqrt(N-1)) atan(sqrt(N-1)),
// bounded by (pi/2) N/sqrt(N-1).
double normalization(const SearchModel& model);

struct Schedule {
  explicit Schedule(const SearchModel& m);

  // Debug-only: the unreparametrized sweep (identity map, velocity 1).
  // Carries no run-time guarantees; kept for side-by-side comparison.
  static Schedule global_debug(const SearchModel& m);

  SearchModel model;
  double normalization;  // L
  bool local = true;

  // s = f^{-1}(r) = (1/L) int_0^r Delta^{-2}, in closed form
  //   (N / (2 L sqrt(N-1))) [ atan(sqrt(N-1)(2r-1)) + atan(sqrt(N-1)) ].
  // Identity for the global debug schedule.
  double s_of_r(double r) const;

  // Inverse map r = f(s) = 1/2 + tan((2s-1) atan(sqrt(N-1))) / (2 sqrt(N-1)).
  double r_of_s(double s) const;

  // df^{-1}/dr = 1 / (L Delta^2); the factor multiplying the generator after
  // reparametrization. Integrates to exactly 1 over [0, 1].
  double velocity(double r) const;

  // Phase integral R(r) = int_0^r Delta df^{-1}/dr, in closed form through
  // inverse hyperbolic sines (validated against quadrature by the tests).
  double r_phase(double r) const;
};

// Dephasing integral Q(r) = (1/L) int_0^r Gamma^2/Delta^2. Exactly r/L for
// W = H; quadrature otherwise. One-shot evaluation — use QAccumulator when
// Q is needed inside an integration loop.
double q_accum(const Schedule& sched, const CouplingSpec& spec, double r);

// Cached Q(r) for repeated evaluation: checkpointed prefix sums on a uniform
// grid plus one local panel per query. Built-in shortcut for W = H.
class QAccumulator {
 public:
  QAccumulator(const Schedule& sched, const CouplingSpec& spec,
               int n_intervals = 4096);
  double operator()(double r) const;

 private:
  double inv_normalization_;
  bool linear_;  // Gamma^2/Delta^2 == 1 (W = H or sigma = 1)
  std::optional<PrefixIntegral> prefix_;
};

}  // namespace adsearch
