// dynamics.cpp — eigenframe Bloch integrator for the reparametrized master
// equation, with an exponential branch for strongly damped coherences, plus
// the integral-equation oracle evaluated over finished trajectories.

#include "adsearch/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>

#include "adsearch/quadrature.hpp"

namespace adsearch {

namespace {

using Complex = std::complex<double>;
using State = std::array<double, 3>;  // { Y, c_re, c_im }

constexpr double kMaxStep = 1.0 / 64.0;  // guarantees the coupling peak is hit
constexpr double kMinStep = 1e-12;
constexpr double kStiffThreshold = 10.0;  // damping * h above which the
                                          // exponential branch takes over

// phi1(w) = (e^w - 1)/w and phi2(w) = (e^w - 1 - w)/w^2 with series fallback
// near zero; for strongly damped steps the direct formulas are stable.
Complex phi1(Complex w) {
  if (std::abs(w) < 0.1) {
    return 1.0 + w * (1.0 / 2.0 + w * (1.0 / 6.0 + w * (1.0 / 24.0 +
                  w * (1.0 / 120.0 + w / 720.0))));
  }
  return (std::exp(w) - 1.0) / w;
}

Complex phi2(Complex w) {
  if (std::abs(w) < 0.1) {
    return 0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w * (1.0 / 120.0 +
                  w * (1.0 / 720.0 + w / 5040.0))));
  }
  return (std::exp(w) - 1.0 - w) / (w * w);
}

// Dormand–Prince 5(4) coefficients.
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;
// Dense-output weights (4th-order continuous extension).
constexpr double kD1 = -12715105075.0 / 11282082432.0;
constexpr double kD3 = 87487479700.0 / 32700410799.0;
constexpr double kD4 = -10690763975.0 / 1880347072.0;
constexpr double kD5 = 701980252875.0 / 199316789632.0;
constexpr double kD6 = -1453857185.0 / 822651844.0;
constexpr double kD7 = 69997945.0 / 29380423.0;

class BlochSystem {
 public:
  BlochSystem(const SearchModel& model, const Schedule& sched,
              const DecoherenceParams& params)
      : n_(static_cast<double>(model.n_items)),
        root_(std::sqrt(n_ - 1.0)),
        inv_l_(1.0 / sched.normalization),
        local_(sched.local),
        at_(params.a_weight * params.runtime),
        bt_(params.b_weight * params.runtime),
        coupling_(params.coupling) {}

  BlochCoefficients coefficients(double r) const {
    const double x = 2.0 * r - 1.0;
    const double q = 1.0 + (n_ - 1.0) * x * x;
    const double delta_sq = q / n_;
    const double v = local_ ? inv_l_ / delta_sq : 1.0;
    return {root_ / q,
            bt_ * v * coupling_.splitting_sq_of_gap_sq(delta_sq),
            at_ * v * std::sqrt(delta_sq)};
  }

  void rhs(double r, const State& y, State& dydr) const {
    const BlochCoefficients c = coefficients(r);
    dydr[0] = 4.0 * c.z * y[1];
    dydr[1] = -c.z * y[0] - c.damping * y[1] - c.phase * y[2];
    dydr[2] = c.phase * y[1] - c.damping * y[2];
  }

 private:
  double n_;
  double root_;
  double inv_l_;
  bool local_;
  double at_;
  double bt_;
  CouplingSpec coupling_;
};

// One exponential step of size h from r: coefficients frozen at the step
// midpoint, the linear damping/phase part of the coherence advanced exactly,
// the population source corrected once with the averaged Y.
State exponential_step(const BlochSystem& sys, double r, const State& y,
                       double h) {
  const BlochCoefficients c = sys.coefficients(r + 0.5 * h);
  const Complex g(-c.damping, c.phase);
  const Complex w = g * h;
  const Complex growth = std::exp(w);
  const Complex p1 = phi1(w);
  const Complex p2 = phi2(w);
  const Complex c0(y[1], y[2]);
  double y_bar = y[0];
  State out = y;
  for (int pass = 0; pass < 2; ++pass) {
    const double source = -c.z * y_bar;
    const Complex c1 = growth * c0 + h * p1 * source;
    const Complex c_int = h * p1 * c0 + h * h * p2 * source;
    const double y1 = y[0] + 4.0 * c.z * c_int.real();
    out = {y1, c1.real(), c1.imag()};
    y_bar = 0.5 * (y[0] + y1);
  }
  return out;
}

double error_norm(const State& a, const State& b, const State& scale_a,
                  const State& scale_b, double tol) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double sc =
        tol + tol * std::max(std::abs(scale_a[i]), std::abs(scale_b[i]));
    const double e = (a[i] - b[i]) / sc;
    sum += e * e;
  }
  return std::sqrt(sum / 3.0);
}

// Cubic Hermite interpolation of all three components on an accepted step
// (used by the exponential branch, where the solution is smooth and slaved).
State hermite(const State& y0, const State& f0, const State& y1,
              const State& f1, double h, double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  State out;
  for (int i = 0; i < 3; ++i) {
    out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
  }
  return out;
}

// Continuous extension of the 5(4) pair over an accepted step.
struct DenseOutput {
  State c1{}, c2{}, c3{}, c4{}, c5{};
  State eval(double t) const {
    State out;
    const double s = 1.0 - t;
    for (int i = 0; i < 3; ++i) {
      out[i] = c1[i] + t * (c2[i] + s * (c3[i] + t * (c4[i] + s * c5[i])));
    }
    return out;
  }
};

}  // namespace

DecoherenceParams::DecoherenceParams(double a, double b, double t,
                                     CouplingSpec c)
    : a_weight(a), b_weight(b), runtime(t), coupling(std::move(c)) {
  if (!(a >= 0.0) || !(b >= 0.0)) {
    throw std::invalid_argument("generator weights must be nonnegative");
  }
  if (!(t >= 0.0)) {
    throw std::invalid_argument("run-time must be nonnegative");
  }
}

DecoherenceParams DecoherenceParams::from_omega(double omega, double runtime,
                                                CouplingSpec c) {
  if (!(omega >= 0.0 && omega <= 1.0)) {
    throw std::invalid_argument("omega must lie in [0, 1]");
  }
  constexpr double kHalfPi = 1.5707963267948966;
  // cos(pi/2) rounds to 6e-17, not 0; the wide-open endpoint must have A = 0
  // exactly so the bound selection and the A = 0 fast paths see it.
  const double a = omega == 1.0 ? 0.0 : std::cos(omega * kHalfPi);
  const double b = std::sin(omega * kHalfPi);
  return DecoherenceParams(a, b, runtime, std::move(c));
}

BlochCoefficients bloch_coefficients(const SearchModel& model,
                                     const Schedule& sched,
                                     const DecoherenceParams& params,
                                     double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw std::domain_error("schedule parameter r must lie in [0, 1]");
  }
  return BlochSystem(model, sched, params).coefficients(r);
}

EigenFrameState bloch_derivative(const EigenFrameState& state, double r,
                                 const SearchModel& model,
                                 const Schedule& sched,
                                 const DecoherenceParams& params) {
  const BlochCoefficients c = bloch_coefficients(model, sched, params, r);
  return {4.0 * c.z * state.c_re,
          -c.z * state.y - c.damping * state.c_re - c.phase * state.c_im,
          c.phase * state.c_re - c.damping * state.c_im};
}

Trajectory integrate(const SearchModel& model, const Schedule& sched,
                     const DecoherenceParams& params, double tol,
                     int n_samples) {
  if (!(tol >= 1e-12 && tol <= 1e-4)) {
    throw std::domain_error("integrator tolerance must lie in [1e-12, 1e-4]");
  }
  n_samples = std::max(n_samples, 201);

  const BlochSystem sys(model, sched, params);
  Trajectory traj;
  traj.n_items = model.n_items;
  traj.a_weight = params.a_weight;
  traj.b_weight = params.b_weight;
  traj.runtime = params.runtime;
  traj.tolerance = tol;
  traj.steps_accepted = 0;
  traj.steps_rejected = 0;
  traj.rhs_evaluations = 0;
  traj.samples.reserve(static_cast<std::size_t>(n_samples));

  const double sample_dr = 1.0 / (n_samples - 1);
  const auto push_sample = [&](double r, const State& y) {
    traj.samples.push_back({r, y[0], y[1], y[2], 0.5 * (1.0 + y[0])});
  };

  State y{1.0, 0.0, 0.0};
  double r = 0.0;
  push_sample(0.0, y);
  int next_sample = 1;

  State f;
  sys.rhs(0.0, y, f);
  ++traj.rhs_evaluations;

  // Initial step from the local rates; the controller corrects quickly.
  const BlochCoefficients c0 = sys.coefficients(0.0);
  double rate = 4.0 * c0.z + c0.damping + c0.phase;
  double h = std::min(kMaxStep, 0.1 / (1.0 + rate));

  const double positivity_limit = 1.0 + 10.0 * tol + 1e-12;

  while (1.0 - r > 1e-14) {
    if (h < kMinStep) {
      throw IntegratorError("step size underflow", r);
    }
    const double hs = std::min(h, 1.0 - r);  // land exactly on r = 1

    const bool stiff = sys.coefficients(r).damping * hs > kStiffThreshold;
    State y_new;
    State f_new;
    DenseOutput dense;
    double err;
    double shrink_power;

    if (stiff) {
      // Step doubling gives the error estimate for the order-2 scheme.
      const State full = exponential_step(sys, r, y, hs);
      State half = exponential_step(sys, r, y, 0.5 * hs);
      half = exponential_step(sys, r + 0.5 * hs, half, 0.5 * hs);
      err = error_norm(full, half, y, half, tol) / 3.0;
      y_new = half;
      shrink_power = 1.0 / 3.0;
    } else {
      State k2, k3, k4, k5, k6, k7, yt;
      const State& k1 = f;
      for (int i = 0; i < 3; ++i) yt[i] = y[i] + hs * kA21 * k1[i];
      sys.rhs(r + kC2 * hs, yt, k2);
      for (int i = 0; i < 3; ++i)
        yt[i] = y[i] + hs * (kA31 * k1[i] + kA32 * k2[i]);
      sys.rhs(r + kC3 * hs, yt, k3);
      for (int i = 0; i < 3; ++i)
        yt[i] = y[i] + hs * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
      sys.rhs(r + kC4 * hs, yt, k4);
      for (int i = 0; i < 3; ++i)
        yt[i] = y[i] + hs * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] +
                             kA54 * k4[i]);
      sys.rhs(r + kC5 * hs, yt, k5);
      for (int i = 0; i < 3; ++i)
        yt[i] = y[i] + hs * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] +
                             kA64 * k4[i] + kA65 * k5[i]);
      sys.rhs(r + hs, yt, k6);
      for (int i = 0; i < 3; ++i)
        y_new[i] = y[i] + hs * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] +
                                kB5 * k5[i] + kB6 * k6[i]);
      sys.rhs(r + hs, y_new, k7);
      traj.rhs_evaluations += 6;
      double sum = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double e = hs * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] +
                               kE5 * k5[i] + kE6 * k6[i] + kE7 * k7[i]);
        const double sc =
            tol + tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        sum += (e / sc) * (e / sc);
      }
      err = std::sqrt(sum / 3.0);
      f_new = k7;  // first-same-as-last
      shrink_power = 1.0 / 5.0;
      for (int i = 0; i < 3; ++i) {
        const double ydiff = y_new[i] - y[i];
        const double bspl = hs * k1[i] - ydiff;
        dense.c1[i] = y[i];
        dense.c2[i] = ydiff;
        dense.c3[i] = bspl;
        dense.c4[i] = ydiff - hs * k7[i] - bspl;
        dense.c5[i] = hs * (kD1 * k1[i] + kD3 * k3[i] + kD4 * k4[i] +
                            kD5 * k5[i] + kD6 * k6[i] + kD7 * k7[i]);
      }
    }

    if (err <= 1.0) {
      if (stiff) {
        sys.rhs(r + hs, y_new, f_new);
        ++traj.rhs_evaluations;
      }
      const double purity =
          y_new[0] * y_new[0] +
          4.0 * (y_new[1] * y_new[1] + y_new[2] * y_new[2]);
      if (purity > positivity_limit) {
        throw IntegratorError("positivity violation", r + hs);
      }
      while (next_sample < n_samples - 1 &&
             next_sample * sample_dr <= r + hs + 1e-15) {
        const double rs = next_sample * sample_dr;
        const double t = (rs - r) / hs;
        push_sample(rs, stiff ? hermite(y, f, y_new, f_new, hs, t)
                              : dense.eval(t));
        ++next_sample;
      }
      r += hs;
      y = y_new;
      f = f_new;
      ++traj.steps_accepted;
      const double grow =
          err > 0.0 ? 0.9 * std::pow(err, -shrink_power) : 5.0;
      h = std::min(kMaxStep, hs * std::clamp(grow, 0.2, 5.0));
    } else {
      ++traj.steps_rejected;
      h = hs * std::max(0.2, 0.9 * std::pow(err, -shrink_power));
    }
  }

  push_sample(1.0, y);
  return traj;
}

double success_probability(const SearchModel& model, const Schedule& sched,
                           const DecoherenceParams& params, double tol) {
  return integrate(model, sched, params, tol).samples.back().rho00;
}

double integral_equation_residual(const SearchModel& model,
                                  const Schedule& sched,
                                  const DecoherenceParams& params,
                                  const Trajectory& trajectory) {
  const double t_b = params.runtime * params.b_weight;
  const double t_a = params.runtime * params.a_weight;
  const QAccumulator q(sched, params.coupling);

  // Y(r) from the sampled trajectory by cubic Hermite interpolation; the
  // sampled coherence supplies the exact derivative dY/dr = 4 Z c_re.
  const auto& samples = trajectory.samples;
  const double dr = samples[1].r - samples[0].r;
  const auto y_interp = [&](double r) {
    auto k = static_cast<std::size_t>(r / dr);
    k = std::min(k, samples.size() - 2);
    const auto& s0 = samples[k];
    const auto& s1 = samples[k + 1];
    const double t = (r - s0.r) / dr;
    const double d0 = 4.0 * coupling_z(model, s0.r) * s0.c_re;
    const double d1 = 4.0 * coupling_z(model, s1.r) * s1.c_re;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * s0.y + (t3 - 2 * t2 + t) * dr * d0 +
           (-2 * t3 + 3 * t2) * s1.y + (t3 - t2) * dr * d1;
  };

  LayeredIntegrand I;
  I.decay = [&](double r) { return t_b * q(r); };
  I.phase = t_a != 0.0
                ? std::function<double(double)>(
                      [&, t_a](double r) { return t_a * sched.r_phase(r); })
                : std::function<double(double)>();
  I.inner = [&](double r) { return coupling_z(model, r) * y_interp(r); };
  I.outer = [&](double r) { return coupling_z(model, r); };

  // I = (I_+ + I_-)/2 = Re I_+ because Y is real.
  const Complex i_plus =
      layered_exponential_integral_checked(I, 0.0, 1.0, 1e-7);
  const double y_final = samples.back().y;
  return std::abs(1.0 - y_final - 4.0 * i_plus.real());
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  out << "r,y,c_re,c_im,rho00\n";
  char buf[160];
  for (const auto& s : trajectory.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.r,
                  s.y, s.c_re, s.c_im, s.rho00);
    out << buf;
  }
}

}  // namespace adsearch
