// schedule.cpp — local-adiabatic reparametrization and accumulated integrals.

#include "adsearch/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adsearch {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

double normalization(const SearchModel& model) {
  const double n = static_cast<double>(model.n_items);
  const double root = std::sqrt(n - 1.0);
  return n / root * std::atan(root);
}

Schedule::Schedule(const SearchModel& m)
    : model(m), normalization(adsearch::normalization(m)) {}

Schedule Schedule::global_debug(const SearchModel& m) {
  Schedule sched(m);
  sched.local = false;
  return sched;
}

double Schedule::s_of_r(double r) const {
  require_unit_interval(r, "r");
  if (!local) return r;
  const double n = static_cast<double>(model.n_items);
  const double root = std::sqrt(n - 1.0);
  return n / (2.0 * normalization * root) *
         (std::atan(root * (2.0 * r - 1.0)) + std::atan(root));
}

double Schedule::r_of_s(double s) const {
  require_unit_interval(s, "s");
  if (!local) return s;
  const double root = std::sqrt(static_cast<double>(model.n_items) - 1.0);
  const double r =
      0.5 + std::tan((2.0 * s - 1.0) * std::atan(root)) / (2.0 * root);
  return std::clamp(r, 0.0, 1.0);  // tan(atan(.)) can overshoot by one ulp
}

double Schedule::velocity(double r) const {
  require_unit_interval(r, "r");
  if (!local) return 1.0;
  const double d = gap(model, r);
  return 1.0 / (normalization * d * d);
}

double Schedule::r_phase(double r) const {
  require_unit_interval(r, "r");
  const double n = static_cast<double>(model.n_items);
  const double root = std::sqrt(n - 1.0);
  if (!local) {
    // int_0^r Delta = [G(sqrt(N-1)(2r-1)) + G(sqrt(N-1))] / (2 sqrt(N(N-1)))
    // with G(u) = (u sqrt(1+u^2) + asinh(u)) / 2.
    const auto antiderivative = [](double u) {
      return 0.5 * (u * std::sqrt(1.0 + u * u) + std::asinh(u));
    };
    return (antiderivative(root * (2.0 * r - 1.0)) + antiderivative(root)) /
           (2.0 * std::sqrt(n * (n - 1.0)));
  }
  // int_0^r Delta^{-1} = (sqrt(N)/(2 sqrt(N-1)))
  //                      [ asinh(sqrt(N-1)(2r-1)) + asinh(sqrt(N-1)) ].
  return std::sqrt(n) / (2.0 * root) *
         (std::asinh(root * (2.0 * r - 1.0)) + std::asinh(root)) /
         normalization;
}

namespace {

bool unit_ratio(const CouplingSpec& spec) {
  // Gamma^2 / Delta^2 == 1
  return spec.kind() == CouplingSpec::Kind::hamiltonian ||
         (spec.kind() == CouplingSpec::Kind::power && spec.sigma() == 1.0);
}

// Q integrand: Gamma^2 df^{-1}/dr.
double q_rate(const Schedule& sched, const CouplingSpec& spec, double x) {
  const double d = gap(sched.model, x);
  const double g_sq = spec.splitting_sq_of_gap_sq(d * d);
  return sched.local ? g_sq / (sched.normalization * d * d) : g_sq;
}

}  // namespace

double q_accum(const Schedule& sched, const CouplingSpec& spec, double r) {
  require_unit_interval(r, "r");
  if (sched.local && unit_ratio(spec)) {
    return r / sched.normalization;
  }
  const auto integrand = [&](double x) { return q_rate(sched, spec, x); };
  if (r > 0.5) {
    return integrate_checked(integrand, 0.0, 0.5, 5e-12) +
           integrate_checked(integrand, 0.5, r, 5e-12);
  }
  return r > 0.0 ? integrate_checked(integrand, 0.0, r, 1e-11) : 0.0;
}

QAccumulator::QAccumulator(const Schedule& sched, const CouplingSpec& spec,
                           int n_intervals)
    : inv_normalization_(1.0 / sched.normalization),
      linear_(sched.local && unit_ratio(spec)) {
  if (!linear_) {
    const Schedule copy = sched;
    prefix_.emplace([copy, spec](double x) { return q_rate(copy, spec, x); },
                    0.0, 1.0, n_intervals);
  }
}

double QAccumulator::operator()(double r) const {
  if (linear_) return r * inv_normalization_;
  return (*prefix_)(r);
}

}  // namespace adsearch
