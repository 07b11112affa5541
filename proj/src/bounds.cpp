// bounds.cpp — analytic sufficiency bounds and the wide-open necessity
// integrals.

#include "adsearch/bounds.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "adsearch/quadrature.hpp"

namespace adsearch {

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

void require_sigma(double sigma) {
  if (!(sigma >= 1.0)) {
    throw std::domain_error("necessity analysis requires sigma >= 1");
  }
}

// Phi as a callable with the closed forms inlined and a cached prefix for
// non-integer exponents.
class PhiEvaluator {
 public:
  PhiEvaluator(double sigma, double reach)
      : sigma_(sigma) {
    if (sigma_ != 1.0 && sigma_ != 2.0) {
      prefix_.emplace(
          [s = sigma_](double t) { return std::pow(1.0 + t * t, s - 1.0); },
          0.0, std::max(1.0, reach), 2048);
    }
  }

  double operator()(double x) const {
    if (sigma_ == 1.0) return x;
    if (sigma_ == 2.0) return x + x * x * x / 3.0;
    const double mag = (*prefix_)(std::abs(x));
    return x < 0.0 ? -mag : mag;
  }

 private:
  double sigma_;
  std::optional<PrefixIntegral> prefix_;
};

}  // namespace

double lower_bound_general(std::int64_t n_items, double runtime,
                           double a_weight, double b_weight, double k_bound) {
  if (a_weight == 0.0) {
    throw std::domain_error(
        "general bound requires A > 0; use the wide-open bound instead");
  }
  if (!(runtime > 0.0) || !(k_bound >= 0.0)) {
    throw std::domain_error("general bound requires T > 0 and K >= 0");
  }
  const double n = static_cast<double>(n_items);
  return 1.0 - 2.0 * kPiSq * std::sqrt(n) / runtime *
                   (1.0 / a_weight + std::sqrt(n / (n - 1.0)) * k_bound *
                                         b_weight / (a_weight * a_weight));
}

double lower_bound_wide_open(std::int64_t n_items, double runtime,
                             double sigma) {
  require_sigma(sigma);
  if (!(runtime > 0.0)) {
    throw std::domain_error("wide-open bound requires T > 0");
  }
  const double n = static_cast<double>(n_items);
  return 1.0 - 0.5 * kPiSq * std::pow(n, sigma) / runtime;
}

double phi(double x, double sigma) {
  if (!(sigma >= 1.0)) {
    throw std::domain_error("phi requires sigma >= 1");
  }
  return PhiEvaluator(sigma, std::abs(x))(x);
}

double necessity_alpha(std::int64_t n_items, double runtime, double sigma) {
  const double n = static_cast<double>(n_items);
  return runtime /
         (2.0 * std::pow(n, sigma) * std::atan(std::sqrt(n - 1.0)));
}

NecessityParams NecessityParams::from(std::int64_t n_items, double runtime,
                                      double sigma) {
  require_sigma(sigma);
  return {necessity_alpha(n_items, runtime, sigma),
          std::sqrt(static_cast<double>(n_items) - 1.0), sigma};
}

double necessity_I(double alpha, double beta, double sigma, double abs_tol) {
  require_sigma(sigma);
  if (!(alpha >= 0.0) || !(beta > 0.0)) {
    throw std::domain_error("necessity_I requires alpha >= 0 and beta > 0");
  }
  const PhiEvaluator big_phi(sigma, beta);
  LayeredIntegrand I;
  I.decay = [&, alpha](double x) { return alpha * big_phi(x); };
  I.inner = [](double y) {
    return -y / std::pow(1.0 + y * y, 1.5);
  };
  I.outer = [](double x) { return 1.0 / (1.0 + x * x); };
  return layered_exponential_integral_checked(I, -beta, beta, abs_tol).real();
}

double necessity_I_brute(double alpha, double beta, double sigma, int n_grid) {
  const PhiEvaluator big_phi(sigma, beta);
  const double h = 2.0 * beta / n_grid;
  std::vector<double> p(n_grid), f_in(n_grid), g_out(n_grid);
  for (int j = 0; j < n_grid; ++j) {
    const double y = -beta + (j + 0.5) * h;
    p[j] = alpha * big_phi(y);
    f_in[j] = -y / std::pow(1.0 + y * y, 1.5);
    g_out[j] = 1.0 / (1.0 + y * y);
  }
  // Midpoint lattice over the triangle y <= x; exponents in difference form.
  double outer_sum = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    double inner_sum = 0.0;
    for (int j = 0; j <= i; ++j) {
      inner_sum += std::exp(-(p[i] - p[j])) * f_in[j];
    }
    outer_sum += g_out[i] * inner_sum;
  }
  return outer_sum * h * h;
}

double necessity_F_integral(double alpha, double sigma, double abs_tol) {
  require_sigma(sigma);
  if (!(alpha >= 0.0)) {
    throw std::domain_error("necessity_F_integral requires alpha >= 0");
  }
  const PhiEvaluator big_phi(sigma, 1.0);
  const PrefixIntegral inner(
      [&](double x) {
        return std::exp(-alpha * big_phi(x)) / (1.0 + x * x);
      },
      0.0, 1.0, 1024);
  const auto f_of_beta = [&](double b) {
    return 2.0 * b * std::exp(-alpha * big_phi(b)) /
           std::pow(1.0 + b * b, 1.5) * inner(b);
  };
  return integrate_checked(f_of_beta, 0.0, 1.0, abs_tol);
}

NecessityI0 necessity_I0(const SearchModel& model, const Schedule& sched,
                         const CouplingSpec& spec, double runtime) {
  double sigma = 1.0;
  if (spec.kind() == CouplingSpec::Kind::power) {
    sigma = spec.sigma();
  } else if (spec.kind() != CouplingSpec::Kind::hamiltonian) {
    throw std::domain_error(
        "necessity_I0 requires a power-law (or W = H) coupling");
  }
  require_sigma(sigma);

  const QAccumulator q(sched, spec);
  LayeredIntegrand I;
  I.decay = [&, runtime](double r) { return runtime * q(r); };
  I.inner = [&](double r) {
    return coupling_z(model, r) * y0_closed(model, r);
  };
  I.outer = [&](double r) { return coupling_z(model, r); };
  const double i0 =
      4.0 * layered_exponential_integral_checked(I, 0.0, 1.0, 1e-7).real();

  const double n = static_cast<double>(model.n_items);
  const double alpha = necessity_alpha(model.n_items, runtime, sigma);
  const double chain =
      std::sqrt((n - 1.0) / n) * necessity_I(alpha, std::sqrt(n - 1.0), sigma);
  return {i0, chain};
}

}  // namespace adsearch
