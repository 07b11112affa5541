// model.cpp — spectral quantities of the two-level reduction.

#include "adsearch/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "adsearch/quadrature.hpp"

namespace adsearch {

namespace {

void require_unit_interval(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw std::domain_error("schedule parameter r must lie in [0, 1]");
  }
}

}  // namespace

SearchModel::SearchModel(std::int64_t n) : n_items(n) {
  if (n < 2) {
    throw std::invalid_argument(
        "SearchModel requires N >= 2; N = 1 has constant gap and no level "
        "coupling");
  }
}

CouplingSpec::CouplingSpec(Kind kind, double sigma,
                           std::function<double(double)> eta)
    : kind_(kind), sigma_(sigma), eta_(std::move(eta)) {}

CouplingSpec CouplingSpec::hamiltonian() {
  return CouplingSpec(Kind::hamiltonian, 1.0, nullptr);
}

CouplingSpec CouplingSpec::power(double sigma) {
  if (!(sigma >= 0.5)) {
    throw std::invalid_argument("power coupling requires sigma >= 1/2");
  }
  return CouplingSpec(Kind::power, sigma, nullptr);
}

CouplingSpec CouplingSpec::custom(std::function<double(double)> eta) {
  if (!eta) throw std::invalid_argument("custom coupling requires a map");
  return CouplingSpec(Kind::custom, 0.0, std::move(eta));
}

double CouplingSpec::splitting_of_gap(double delta) const {
  switch (kind_) {
    case Kind::hamiltonian:
      return delta;
    case Kind::power:
      return sigma_ == 1.0 ? delta : std::pow(delta, sigma_);
    case Kind::custom: {
      const double value = eta_(delta);
      if (!(value > 0.0)) {
        throw std::domain_error(
            "custom coupling map returned a non-positive splitting");
      }
      return value;
    }
  }
  return 0.0;  // unreachable
}

double CouplingSpec::splitting_sq_of_gap_sq(double delta_sq) const {
  switch (kind_) {
    case Kind::hamiltonian:
      return delta_sq;
    case Kind::power:
      if (sigma_ == 1.0) return delta_sq;
      if (sigma_ == 2.0) return delta_sq * delta_sq;
      return std::pow(delta_sq, sigma_);
    case Kind::custom: {
      const double value = eta_(std::sqrt(delta_sq));
      if (!(value > 0.0)) {
        throw std::domain_error(
            "custom coupling map returned a non-positive splitting");
      }
      return value * value;
    }
  }
  return 0.0;  // unreachable
}

double gap(const SearchModel& model, double r) {
  require_unit_interval(r);
  const double n = static_cast<double>(model.n_items);
  const double x = 2.0 * r - 1.0;
  return std::sqrt((1.0 + (n - 1.0) * x * x) / n);
}

double gap_derivative(const SearchModel& model, double r) {
  require_unit_interval(r);
  const double n = static_cast<double>(model.n_items);
  const double x = 2.0 * r - 1.0;
  return 2.0 * (n - 1.0) * x / (n * gap(model, r));
}

double coupling_z(const SearchModel& model, double r) {
  require_unit_interval(r);
  const double n = static_cast<double>(model.n_items);
  const double x = 2.0 * r - 1.0;
  return std::sqrt(n - 1.0) / (1.0 + (n - 1.0) * x * x);
}

double z_accumulated(const SearchModel& model, double r) {
  require_unit_interval(r);
  const double root = std::sqrt(static_cast<double>(model.n_items) - 1.0);
  return 0.5 * (std::atan(root * (2.0 * r - 1.0)) + std::atan(root));
}

double z_integral(const SearchModel& model) {
  const auto z = [&](double r) { return coupling_z(model, r); };
  // Split at the peak so the refinement starts on its shoulders.
  return integrate_checked(z, 0.0, 0.5, 5e-11) +
         integrate_checked(z, 0.5, 1.0, 5e-11);
}

double gamma_split(const CouplingSpec& spec, const SearchModel& model,
                   double r) {
  return spec.splitting_of_gap(gap(model, r));
}

double zeta(const CouplingSpec& spec, const SearchModel& model) {
  const auto objective = [&](double r) {
    const double g = gamma_split(spec, model, r);
    return g * g / gap(model, r);
  };
  if (spec.kind() != CouplingSpec::Kind::custom) {
    // Gamma^2/Delta = Delta^{2 sigma - 1} with sigma >= 1/2 is a monotone
    // composition of the gap, so the minimum sits at the gap minimum.
    return objective(0.5);
  }
  // Bracketing scan followed by golden-section refinement.
  constexpr int kScan = 1025;
  double best_r = 0.0;
  double best = objective(0.0);
  for (int i = 1; i < kScan; ++i) {
    const double r = static_cast<double>(i) / (kScan - 1);
    const double value = objective(r);
    if (value < best) {
      best = value;
      best_r = r;
    }
  }
  const double width = 1.0 / (kScan - 1);
  double lo = std::max(0.0, best_r - width);
  double hi = std::min(1.0, best_r + width);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = objective(x2);
    }
  }
  return std::min({best, f1, f2});
}

double k_fluctuation(const CouplingSpec& spec, const SearchModel& model) {
  std::function<double(double)> integrand;
  if (spec.kind() == CouplingSpec::Kind::custom) {
    // No analytic derivative for a user map; central differences on Gamma^2.
    integrand = [&](double r) {
      const double h = 1e-6;
      const double lo = std::max(0.0, r - h);
      const double hi = std::min(1.0, r + h);
      const double glo = gamma_split(spec, model, lo);
      const double ghi = gamma_split(spec, model, hi);
      const double d = (ghi * ghi - glo * glo) / (hi - lo);
      return coupling_z(model, r) * std::abs(d);
    };
  } else {
    const double sigma = spec.sigma();
    const double n = static_cast<double>(model.n_items);
    integrand = [&, sigma, n](double r) {
      const double x = 2.0 * r - 1.0;
      const double delta_sq = (1.0 + (n - 1.0) * x * x) / n;
      // d Gamma^2/dr = sigma (Delta^2)^{sigma-1} d(Delta^2)/dr
      const double d_delta_sq = 4.0 * (n - 1.0) * x / n;
      const double d =
          sigma * std::pow(delta_sq, sigma - 1.0) * std::abs(d_delta_sq);
      return coupling_z(model, r) * d;
    };
  }
  // |d Delta^2/dr| kinks at the gap minimum; integrate the halves separately.
  return integrate_checked(integrand, 0.0, 0.5, 5e-9) +
         integrate_checked(integrand, 0.5, 1.0, 5e-9);
}

double mixing_angle(const SearchModel& model, double r) {
  const double root = std::sqrt(static_cast<double>(model.n_items) - 1.0);
  return std::atan(1.0 / root) + z_accumulated(model, r);
}

SpectralPoint eigensystem(const SearchModel& model, const CouplingSpec& spec,
                          double r) {
  require_unit_interval(r);
  const double theta = mixing_angle(model, r);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double delta = gap(model, r);
  return SpectralPoint{r,
                       delta,
                       coupling_z(model, r),
                       spec.splitting_of_gap(delta),
                       {c, s},
                       {-s, c}};
}

SpectralPoint eigensystem(const SearchModel& model, double r) {
  return eigensystem(model, CouplingSpec::hamiltonian(), r);
}

double y0_closed(const SearchModel& model, double r) {
  require_unit_interval(r);
  const double n = static_cast<double>(model.n_items);
  const double x = 2.0 * r - 1.0;
  return (1.0 - (n - 1.0) * x) /
         (std::sqrt(n) * std::sqrt(1.0 + (n - 1.0) * x * x));
}

}  // namespace adsearch
