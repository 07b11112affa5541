// quadrature.hpp — adaptive Gauss–Kronrod wrappers, cached prefix integrals,
// and the layered exponential double integrals shared by the oracle and
// bound evaluations.

#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adsearch {

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error " +
                           std::to_string(achieved) + ")"),
        achieved_error(achieved) {}
  double achieved_error;
};

struct QuadratureResult {
  double value;
  double error_estimate;
};

// Adaptive 15-point Gauss–Kronrod integration of f over [a, b]. Throws
// QuadratureError when the error estimate misses abs_tol (with a small
// relative allowance for large values).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol = 1e-10,
                                    int max_depth = 22);

double integrate_checked(const std::function<double(double)>& f, double a,
                         double b, double abs_tol = 1e-10, int max_depth = 22);

// Fixed 7-point Gauss–Legendre panel on [a, b].
double gauss7(const std::function<double(double)>& f, double a, double b);

// Cumulative integral of f from a, tabulated at n_intervals+1 uniform nodes;
// arbitrary arguments are reached by one extra panel from the node below.
class PrefixIntegral {
 public:
  PrefixIntegral(std::function<double(double)> f, double a, double b,
                 int n_intervals);
  double operator()(double x) const;
  double total() const { return cumulative_.back(); }

 private:
  std::function<double(double)> f_;
  double a_;
  double step_;
  std::vector<double> cumulative_;
};

// Integrand bundle for
//   J = int_a^b g(x) int_a^x exp(-[P(x)-P(y)] - i [S(x)-S(y)]) f(y) dy dx
// with P nondecreasing. The exponent only ever appears in difference form,
// so every factor has modulus <= 1; node-to-node recursion of the inner
// integral keeps the cost linear in the interval count.
struct LayeredIntegrand {
  std::function<double(double)> decay;  // P
  std::function<double(double)> phase;  // S; empty for real integrands
  std::function<double(double)> inner;  // f
  std::function<double(double)> outer;  // g
};

std::complex<double> layered_exponential_integral(const LayeredIntegrand& I,
                                                  double a, double b,
                                                  int n_intervals = 4096);

// Coarse/fine comparison variant; throws QuadratureError when the two
// resolutions disagree beyond abs_tol.
std::complex<double> layered_exponential_integral_checked(
    const LayeredIntegrand& I, double a, double b, double abs_tol,
    int n_intervals = 4096);

}  // namespace adsearch
