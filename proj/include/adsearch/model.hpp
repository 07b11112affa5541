// model.hpp — closed-form spectral quantities of the search Hamiltonian
// family restricted to its two-dimensional relevant subspace, the splitting
// of the commuting decoherence operator, and the scalar functionals the
// run-time bounds depend on.

#pragma once

#include <array>
#include <cstdint>
#include <functional>

namespace adsearch {

// The N-item search problem. Only N enters the reduced two-level model; the
// marked item is fixed by symmetry. N = 1 is rejected: the gap is constant
// and the level coupling vanishes identically, so nothing is being searched.
struct SearchModel {
  explicit SearchModel(std::int64_t n);
  std::int64_t n_items;
};

// Choice of the decoherence operator W through its eigenvalue splitting
// Gamma(r) = w1 - w0 > 0. W commutes with H(r), so only the splitting enters
// the reduced dynamics:
//   hamiltonian : W = H,           Gamma = Delta
//   power       : Gamma = Delta^sigma, sigma >= 1/2
//   custom      : Gamma = eta(Delta) for a positive increasing map eta
class CouplingSpec {
 public:
  enum class Kind { hamiltonian, power, custom };

  static CouplingSpec hamiltonian();
  static CouplingSpec power(double sigma);
  static CouplingSpec custom(std::function<double(double)> eta);

  Kind kind() const { return kind_; }
  double sigma() const { return sigma_; }

  // Gamma as a function of the gap value; throws std::domain_error if a
  // custom map returns a non-positive splitting.
  double splitting_of_gap(double delta) const;

  // Gamma^2 as a function of Delta^2 (avoids the square root on the built-in
  // kinds; hot path of the integrator).
  double splitting_sq_of_gap_sq(double delta_sq) const;

 private:
  CouplingSpec(Kind kind, double sigma, std::function<double(double)> eta);
  Kind kind_;
  double sigma_;
  std::function<double(double)> eta_;
};

// Instantaneous spectral data at schedule parameter r. Eigenvector
// coordinates are given in the ordered orthonormal basis
// { |psi> orthogonalized against |mu>, |mu> }.
struct SpectralPoint {
  double r;
  double delta;             // gap E1 - E0
  double z;                 // level coupling |<dE0/dr|E1>|
  double gamma;             // splitting of W
  std::array<double, 2> e0; // ground state
  std::array<double, 2> e1; // excited state
};

// Gap Delta(r) = sqrt((1 + (N-1)(2r-1)^2) / N). Symmetric about r = 1/2 with
// minimum 1/sqrt(N) there. Throws std::domain_error outside [0, 1].
double gap(const SearchModel& model, double r);

// d(Delta)/dr; kinked at r = 1/2 only through the absolute value taken by
// consumers, the signed derivative itself is smooth.
double gap_derivative(const SearchModel& model, double r);

// Level coupling Z(r) = sqrt(N-1) / (1 + (N-1)(2r-1)^2), maximal at r = 1/2.
double coupling_z(const SearchModel& model, double r);

// Accumulated coupling int_0^r Z, in closed form:
//   (1/2) [ atan(sqrt(N-1)(2r-1)) + atan(sqrt(N-1)) ].
double z_accumulated(const SearchModel& model, double r);

// int_0^1 Z(r) dr by adaptive quadrature (split at the gap minimum).
// Bounded by pi/2 for every N.
double z_integral(const SearchModel& model);

// Splitting Gamma(r) of W at schedule parameter r.
double gamma_split(const CouplingSpec& spec, const SearchModel& model,
                   double r);

// zeta = min over r in [0,1] of Gamma^2(r)/Delta(r). For the built-in kinds
// the minimizer sits at the gap minimum; a custom map is bracketed by a
// 1025-point scan and polished by golden-section search.
double zeta(const CouplingSpec& spec, const SearchModel& model);

// Fluctuation integral int_0^1 Z(r) |d Gamma^2 / dr| dr. The built-in kinds
// use the analytic derivative; custom maps fall back to central differences.
double k_fluctuation(const CouplingSpec& spec, const SearchModel& model);

// Rotation angle of the ground state in the fixed two-dimensional basis,
// continuous in r with <e0(0)|psi> > 0. Its derivative is +Z(r), which fixes
// the coupling sign used by the eigenframe dynamics.
double mixing_angle(const SearchModel& model, double r);

// Instantaneous eigensystem in the continuous gauge; gamma from the given
// coupling choice (overload without a spec uses W = H).
SpectralPoint eigensystem(const SearchModel& model, const CouplingSpec& spec,
                          double r);
SpectralPoint eigensystem(const SearchModel& model, double r);

// Zero-run-time population difference
//   Y0(r) = [1 - (N-1)(2r-1)] / [sqrt(N) sqrt(1 + (N-1)(2r-1)^2)],
// equal to cos(2 int_0^r Z). Anchors the T = 0 oracle of the dynamics.
double y0_closed(const SearchModel& model, double r);

}  // namespace adsearch
