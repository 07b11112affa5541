// bounds.hpp — the analytic run-time bounds: the general lower bound on the
// final ground-state population for A > 0, the wide-open sufficiency bound,
// and the necessity machinery (alpha, Phi, I(alpha, beta), F) that forces
// T >> N^sigma when the Hamiltonian term is absent.

#pragma once

#include <cstdint>

#include "adsearch/model.hpp"
#include "adsearch/schedule.hpp"

namespace adsearch {

// rho00(1) >= 1 - 2 pi^2 (sqrt(N)/T) (1/A + sqrt(N/(N-1)) K B / A^2).
// Returned as-is, possibly negative (vacuous). Throws std::domain_error when
// A = 0; the wide-open bound applies there instead.
double lower_bound_general(std::int64_t n_items, double runtime,
                           double a_weight, double b_weight, double k_bound);

// Wide-open case with Gamma = Delta^sigma: rho00(1) >= 1 - (pi^2/2) N^sigma/T.
double lower_bound_wide_open(std::int64_t n_items, double runtime,
                             double sigma);

// Phi(x) = int_0^x (1 + t^2)^{sigma-1} dt; odd in x. Closed form for
// sigma in {1, 2}, quadrature otherwise.
double phi(double x, double sigma);

// alpha = T / (2 N^sigma atan(sqrt(N-1))), the decay scale that governs the
// necessity integrals.
double necessity_alpha(std::int64_t n_items, double runtime, double sigma);

// Change-of-variables parameters for the necessity integrals.
struct NecessityParams {
  double alpha;
  double beta;
  double sigma;
  static NecessityParams from(std::int64_t n_items, double runtime,
                              double sigma);
};

// I(alpha, beta) =
//   int_{-beta}^{beta} e^{-alpha Phi(x)}/(1+x^2)
//     int_{-beta}^{x} (-y) e^{alpha Phi(y)}/(1+y^2)^{3/2} dy dx,
// evaluated in exponent-difference form by layered quadrature. Increasing in
// beta and positive for every alpha >= 0.
double necessity_I(double alpha, double beta, double sigma,
                   double abs_tol = 1e-8);

// Plain two-dimensional Riemann-sum evaluation of I(alpha, beta) on an
// n_grid x n_grid midpoint lattice. Slow; kept as the independent check of
// the layered evaluation.
double necessity_I_brute(double alpha, double beta, double sigma, int n_grid);

// int_0^1 F(alpha, beta) d beta with
//   F = 2 beta e^{-alpha Phi(beta)} / (1+beta^2)^{3/2}
//       int_0^beta e^{-alpha Phi(x)}/(1+x^2) dx.
// Positive and strictly decreasing in alpha.
double necessity_F_integral(double alpha, double sigma, double abs_tol = 1e-8);

struct NecessityI0 {
  double i0;                 // lower bound on 1 - Y_T(1)
  double change_of_variables_lower;  // sqrt((N-1)/N) I(alpha, sqrt(N-1))
};

// I0 = 4 int_0^1 int_0^r e^{-T[Q(r)-Q(r')]} Z(r) Z(r') Y0(r') dr' dr for the
// wide-open dynamics (A = 0, B = 1) with Gamma = Delta^sigma, together with
// the change-of-variables lower bound it dominates.
NecessityI0 necessity_I0(const SearchModel& model, const Schedule& sched,
                         const CouplingSpec& spec, double runtime);

}  // namespace adsearch
