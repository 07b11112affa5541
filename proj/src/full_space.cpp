// full_space.cpp — validation of the two-level reduction: the same generator
// integrated in the fixed N-dimensional basis and projected back onto the
// instantaneous eigenbasis.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "adsearch/dynamics.hpp"

namespace adsearch {

namespace {

using Complex = std::complex<double>;
using Matrix = std::vector<Complex>;  // row-major n x n

// rank-1 accumulation: M += w * |a><b| applied to rho from the left, i.e.
// out += w * a (b^T rho). Vectors are real.
void add_projected(Matrix& out, double w, const std::vector<double>& a,
                   const std::vector<double>& b, const Matrix& rho,
                   std::size_t n) {
  std::vector<Complex> row(n, Complex(0.0));
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc(0.0);
    for (std::size_t k = 0; k < n; ++k) acc += b[k] * rho[k * n + j];
    row[j] = acc;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double wa = w * a[i];
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] += wa * row[j];
  }
}

struct FullSpaceSystem {
  FullSpaceSystem(const SearchModel& model, const Schedule& sched,
                  const DecoherenceParams& params)
      : n(static_cast<std::size_t>(model.n_items)),
        model_(model),
        sched_(sched),
        params_(params),
        psi(n, 1.0 / std::sqrt(static_cast<double>(model.n_items))),
        mu(n, 0.0),
        b1(n, 0.0) {
    mu[0] = 1.0;  // marked item; the choice is immaterial by symmetry
    const double q = psi[0];
    const double p = std::sqrt(1.0 - q * q);
    for (std::size_t i = 0; i < n; ++i) b1[i] = (psi[i] - q * mu[i]) / p;
  }

  void eigvec(double r, std::vector<double>& e0, std::vector<double>& e1)
      const {
    const double theta = mixing_angle(model_, r);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    e0.resize(n);
    e1.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      e0[i] = c * b1[i] + s * mu[i];
      e1[i] = -s * b1[i] + c * mu[i];
    }
  }

  void rhs(double r, const Matrix& rho, Matrix& out) const {
    const double v = sched_.velocity(r);
    const double at = params_.a_weight * params_.runtime;
    const double bt = params_.b_weight * params_.runtime;
    const double delta = gap(model_, r);

    out.assign(n * n, Complex(0.0));

    if (at != 0.0) {
      // [H, rho] with H = -(1-r)|psi><psi| - r|mu><mu| (rank 2).
      Matrix h_rho(n * n, Complex(0.0));
      add_projected(h_rho, -(1.0 - r), psi, psi, rho, n);
      add_projected(h_rho, -r, mu, mu, rho, n);
      const Complex coeff(0.0, -at * v);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const Complex comm =
              h_rho[i * n + j] - std::conj(h_rho[j * n + i]);
          out[i * n + j] += coeff * comm;
        }
      }
    }

    if (bt != 0.0) {
      std::vector<double> e0, e1;
      eigvec(r, e0, e1);
      double w0, w1;
      if (params_.coupling.kind() == CouplingSpec::Kind::hamiltonian) {
        w0 = 0.5 * (-1.0 - delta);  // instantaneous eigenvalues of H
        w1 = 0.5 * (-1.0 + delta);
      } else {
        const double g = params_.coupling.splitting_of_gap(delta);
        w0 = -0.5 * g;
        w1 = 0.5 * g;
      }
      // M = [W, rho] (anti-Hermitian), then [W, M] = W M + (W M)^dagger.
      Matrix w_rho(n * n, Complex(0.0));
      add_projected(w_rho, w0, e0, e0, rho, n);
      add_projected(w_rho, w1, e1, e1, rho, n);
      Matrix m(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          m[i * n + j] = w_rho[i * n + j] - std::conj(w_rho[j * n + i]);
        }
      }
      Matrix w_m(n * n, Complex(0.0));
      add_projected(w_m, w0, e0, e0, m, n);
      add_projected(w_m, w1, e1, e1, m, n);
      const double coeff = -bt * v;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          out[i * n + j] +=
              coeff * (w_m[i * n + j] + std::conj(w_m[j * n + i]));
        }
      }
    }
  }

  std::size_t n;
  SearchModel model_;
  Schedule sched_;
  DecoherenceParams params_;
  std::vector<double> psi, mu, b1;
};

}  // namespace

double full_space_deviation(const SearchModel& model, const Schedule& sched,
                            const DecoherenceParams& params, double tol) {
  if (model.n_items > 16) {
    throw std::domain_error(
        "full-space check is limited to N <= 16 (dense density matrix)");
  }
  const Trajectory reference = integrate(model, sched, params, tol);

  const FullSpaceSystem sys(model, sched, params);
  const std::size_t n = sys.n;

  Matrix rho(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rho[i * n + j] = sys.psi[i] * sys.psi[j];
    }
  }

  const auto& samples = reference.samples;
  double max_dev = 0.0;
  double max_trace_drift = 0.0;
  std::vector<double> e0, e1;

  const auto record = [&](double r, const Matrix& state, double rho00_ref) {
    sys.eigvec(r, e0, e1);
    Complex val(0.0);
    Complex trace(0.0);
    for (std::size_t i = 0; i < n; ++i) {
      trace += state[i * n + i];
      for (std::size_t j = 0; j < n; ++j) {
        val += e0[i] * state[i * n + j] * e0[j];
      }
    }
    max_dev = std::max(max_dev, std::abs(val.real() - rho00_ref));
    max_trace_drift = std::max(max_trace_drift, std::abs(trace - 1.0));
  };

  record(0.0, rho, samples[0].rho00);

  // Classic 4/5 embedded pair on the flattened density matrix; steps are
  // clipped so every sample point is hit exactly.
  Matrix k1, k2, k3, k4, k5, k6, k7, tmp, y_new;
  const auto stage = [&](const Matrix& base, double r, Matrix& out) {
    sys.rhs(r, base, out);
  };
  const auto axpy = [&](Matrix& dst, const Matrix& y0,
                        std::initializer_list<std::pair<double, const Matrix*>>
                            terms,
                        double h) {
    dst = y0;
    for (const auto& [c, m] : terms) {
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += h * c * (*m)[i];
    }
  };

  double h = 1e-3;
  double r = 0.0;
  stage(rho, 0.0, k1);
  for (std::size_t target = 1; target < samples.size(); ++target) {
    const double r_target = samples[target].r;
    while (r_target - r > 1e-14) {
      if (h < 1e-12) throw IntegratorError("full-space step underflow", r);
      const double hs = std::min(h, r_target - r);
      axpy(tmp, rho, {{1.0 / 5, &k1}}, hs);
      stage(tmp, r + hs / 5, k2);
      axpy(tmp, rho, {{3.0 / 40, &k1}, {9.0 / 40, &k2}}, hs);
      stage(tmp, r + 3 * hs / 10, k3);
      axpy(tmp, rho, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}},
           hs);
      stage(tmp, r + 4 * hs / 5, k4);
      axpy(tmp, rho,
           {{19372.0 / 6561, &k1},
            {-25360.0 / 2187, &k2},
            {64448.0 / 6561, &k3},
            {-212.0 / 729, &k4}},
           hs);
      stage(tmp, r + 8 * hs / 9, k5);
      axpy(tmp, rho,
           {{9017.0 / 3168, &k1},
            {-355.0 / 33, &k2},
            {46732.0 / 5247, &k3},
            {49.0 / 176, &k4},
            {-5103.0 / 18656, &k5}},
           hs);
      stage(tmp, r + hs, k6);
      axpy(y_new, rho,
           {{35.0 / 384, &k1},
            {500.0 / 1113, &k3},
            {125.0 / 192, &k4},
            {-2187.0 / 6784, &k5},
            {11.0 / 84, &k6}},
           hs);
      stage(y_new, r + hs, k7);

      double err_sq = 0.0;
      for (std::size_t i = 0; i < rho.size(); ++i) {
        const Complex e =
            hs * (71.0 / 57600 * k1[i] - 71.0 / 16695 * k3[i] +
                  71.0 / 1920 * k4[i] - 17253.0 / 339200 * k5[i] +
                  22.0 / 525 * k6[i] - 1.0 / 40 * k7[i]);
        const double sc =
            tol + tol * std::max(std::abs(rho[i]), std::abs(y_new[i]));
        const double en = std::abs(e) / sc;
        err_sq += en * en;
      }
      const double err = std::sqrt(err_sq / static_cast<double>(rho.size()));
      if (err <= 1.0) {
        r += hs;
        rho.swap(y_new);
        k1.swap(k7);
        h = std::min(1.0 / 64,
                     hs * std::clamp(err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0,
                                     0.2, 5.0));
      } else {
        h = hs * std::max(0.2, 0.9 * std::pow(err, -0.2));
      }
    }
    record(r_target, rho, samples[target].rho00);
  }

  if (max_trace_drift > 1e-9) {
    throw IntegratorError("full-space trace drift beyond 1e-9", 1.0);
  }
  return max_dev;
}

}  // namespace adsearch
