// quadrature.cpp — globally adaptive Gauss–Kronrod integration (worst-panel
// refinement against an absolute error budget), prefix integrals, and the
// layered exponential double integrals.

#include "adsearch/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>

namespace adsearch {

namespace {

// 15-point Kronrod extension of 7-point Gauss (positive half, QUADPACK).
constexpr double kXgk[8] = {
    0.99145537112081263920685469752633, 0.94910791234275852452618968404785,
    0.86486442335976907278971278864093, 0.74153118559939443986386477328079,
    0.58608723546769113029414483825873, 0.40584515137739716690660641207696,
    0.20778495500789846760068940377324, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496373200805897, 0.06309209262997855329070066318920,
    0.10479001032225018383987632254152, 0.14065325971552591874518959051024,
    0.16900472663926790282658342659855, 0.19035057806478540991325640242101,
    0.20443294007529889241416199923465, 0.20948214108472782801299917489171};
constexpr double kWg[4] = {
    0.12948496616886969327061143267908, 0.27970539148927666790146777142378,
    0.38183005050511894495036977548898, 0.41795918367346938775510204081633};

constexpr double kG7Node[7] = {
    -0.94910791234275852452618968404785, -0.74153118559939443986386477328079,
    -0.40584515137739716690660641207696, 0.0,
    0.40584515137739716690660641207696,  0.74153118559939443986386477328079,
    0.94910791234275852452618968404785};
constexpr double kG7Weight[7] = {
    0.12948496616886969327061143267908, 0.27970539148927666790146777142378,
    0.38183005050511894495036977548898, 0.41795918367346938775510204081633,
    0.38183005050511894495036977548898, 0.27970539148927666790146777142378,
    0.12948496616886969327061143267908};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a,
                     double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_mid = f(mid);
  double gk = kWgk[7] * f_mid;
  double g = kWg[3] * f_mid;
  double l1 = kWgk[7] * std::abs(f_mid);
  for (int i = 0; i < 7; ++i) {
    const double x = half * kXgk[i];
    const double lo = f(mid - x);
    const double hi = f(mid + x);
    gk += kWgk[i] * (lo + hi);
    l1 += kWgk[i] * (std::abs(lo) + std::abs(hi));
    if (i % 2 == 1) g += kWg[i / 2] * (lo + hi);
  }
  gk *= half;
  g *= half;
  l1 *= std::abs(half);
  // |GK15 - G7| with a roundoff floor; conservative but cheap.
  const double err = std::max(std::abs(gk - g), 50.0 * 1e-16 * l1);
  return {a, b, gk, err};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth) {
  if (a == b) return {0.0, 0.0};
  const int max_panels = std::max(64, 1 << std::min(max_depth, 14));

  std::priority_queue<Panel> panels;
  panels.push(evaluate_panel(f, a, b));
  double total_value = panels.top().value;
  double total_error = panels.top().error;
  int count = 1;
  while (total_error > abs_tol && count < max_panels) {
    const Panel worst = panels.top();
    panels.pop();
    if (worst.b - worst.a < 1e-15 * (b - a)) {
      // cannot subdivide further; put it back and stop
      panels.push(worst);
      break;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = evaluate_panel(f, worst.a, mid);
    const Panel right = evaluate_panel(f, mid, worst.b);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  return {total_value, total_error};
}

double integrate_checked(const std::function<double(double)>& f, double a,
                         double b, double abs_tol, int max_depth) {
  const QuadratureResult res = integrate_adaptive(f, a, b, abs_tol, max_depth);
  if (res.error_estimate > abs_tol + 1e-14 * std::abs(res.value)) {
    char msg[96];
    std::snprintf(msg, sizeof msg,
                  "quadrature stalled at error estimate %.3g (target %.3g)",
                  res.error_estimate, abs_tol);
    throw QuadratureError(msg, res.error_estimate);
  }
  return res.value;
}

double gauss7(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 7; ++i) sum += kG7Weight[i] * f(mid + half * kG7Node[i]);
  return sum * half;
}

PrefixIntegral::PrefixIntegral(std::function<double(double)> f, double a,
                               double b, int n_intervals)
    : f_(std::move(f)), a_(a), step_((b - a) / n_intervals) {
  cumulative_.resize(static_cast<std::size_t>(n_intervals) + 1);
  cumulative_[0] = 0.0;
  for (int k = 0; k < n_intervals; ++k) {
    const double lo = a_ + k * step_;
    cumulative_[static_cast<std::size_t>(k) + 1] =
        cumulative_[static_cast<std::size_t>(k)] + gauss7(f_, lo, lo + step_);
  }
}

double PrefixIntegral::operator()(double x) const {
  const auto n = static_cast<std::ptrdiff_t>(cumulative_.size()) - 1;
  auto k = static_cast<std::ptrdiff_t>((x - a_) / step_);
  k = std::clamp<std::ptrdiff_t>(k, 0, n - 1);
  const double node = a_ + static_cast<double>(k) * step_;
  return cumulative_[static_cast<std::size_t>(k)] + gauss7(f_, node, x);
}

namespace {

using Complex = std::complex<double>;

// exp(-[P(x)-P(y)] - i [S(x)-S(y)]) given the endpoint values; protects
// against roundoff making the decay difference marginally negative.
Complex decay_factor(double p_from, double p_to, double s_from, double s_to) {
  const double dp = std::max(0.0, p_to - p_from);
  return std::exp(Complex(-dp, -(s_to - s_from)));
}

}  // namespace

std::complex<double> layered_exponential_integral(const LayeredIntegrand& I,
                                                  double a, double b,
                                                  int n_intervals) {
  const auto S = [&](double x) { return I.phase ? I.phase(x) : 0.0; };
  const double h = (b - a) / n_intervals;

  // Inner integral against the moving endpoint:
  //   local(lo, x) = int_lo^x exp(-[P(x)-P(y)] - i[S(x)-S(y)]) f(y) dy.
  const auto local = [&](double lo, double x, double p_x,
                         double s_x) -> Complex {
    const double mid = 0.5 * (lo + x);
    const double half = 0.5 * (x - lo);
    Complex sum = 0.0;
    for (int i = 0; i < 7; ++i) {
      const double y = mid + half * kG7Node[i];
      sum += kG7Weight[i] * decay_factor(I.decay(y), p_x, S(y), s_x) *
             I.inner(y);
    }
    return sum * half;
  };

  Complex m = 0.0;  // inner integral accumulated up to the current node
  Complex J = 0.0;
  double p_node = I.decay(a);
  double s_node = S(a);
  for (int k = 0; k < n_intervals; ++k) {
    const double lo = a + k * h;
    const double hi = (k + 1 == n_intervals) ? b : a + (k + 1) * h;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int i = 0; i < 7; ++i) {
      const double x = mid + half * kG7Node[i];
      const double p_x = I.decay(x);
      const double s_x = S(x);
      const Complex m_x =
          m * decay_factor(p_node, p_x, s_node, s_x) + local(lo, x, p_x, s_x);
      J += kG7Weight[i] * half * I.outer(x) * m_x;
    }
    const double p_hi = I.decay(hi);
    const double s_hi = S(hi);
    m = m * decay_factor(p_node, p_hi, s_node, s_hi) +
        local(lo, hi, p_hi, s_hi);
    p_node = p_hi;
    s_node = s_hi;
  }
  return J;
}

std::complex<double> layered_exponential_integral_checked(
    const LayeredIntegrand& I, double a, double b, double abs_tol,
    int n_intervals) {
  const Complex fine = layered_exponential_integral(I, a, b, n_intervals);
  const Complex coarse =
      layered_exponential_integral(I, a, b, std::max(8, n_intervals / 2));
  const double err = std::abs(fine - coarse);
  if (err > abs_tol) {
    char msg[96];
    std::snprintf(
        msg, sizeof msg,
        "layered double integral stalled at error %.3g (target %.3g)", err,
        abs_tol);
    throw QuadratureError(msg, err);
  }
  return fine;
}

}  // namespace adsearch
