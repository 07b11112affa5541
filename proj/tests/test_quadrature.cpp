// Quadrature backend: adaptive panels, prefix integrals, layered double
// integrals. Expected values are closed forms evaluated by hand.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "adsearch/quadrature.hpp"

using namespace adsearch;

TEST_SUITE("quadrature") {

TEST_CASE("smooth integrand to machine accuracy") {
  const auto res = integrate_adaptive(
      [](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12);
  CHECK(res.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(res.error_estimate <= 1e-12);
}

TEST_CASE("sharp peak against the arctan antiderivative") {
  // 1/(eps^2 + x^2) over [-1, 1] = (2/eps) atan(1/eps)
  const double eps = 1e-3;
  const double expected = 2.0 / eps * std::atan(1.0 / eps);
  const double value = integrate_checked(
      [&](double x) { return 1.0 / (eps * eps + x * x); }, -1.0, 1.0,
      1e-6 * expected);
  CHECK(value == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("unreachable tolerance reports the achieved error") {
  // far below panel resolution: the estimate cannot converge
  const auto wild = [](double x) { return std::sin(1e7 * x); };
  bool thrown = false;
  try {
    integrate_checked(wild, 0.0, 1.0, 1e-10);
  } catch (const QuadratureError& e) {
    thrown = true;
    CHECK(e.achieved_error > 1e-10);
  }
  CHECK(thrown);
}

TEST_CASE("prefix integral matches the closed form") {
  const PrefixIntegral prefix([](double x) { return std::cos(x); }, 0.0, 2.0,
                              64);
  for (double x : {0.0, 0.13, 0.5, 1.0, 1.77, 2.0}) {
    CHECK(prefix(x) == doctest::Approx(std::sin(x)).epsilon(1e-13));
  }
  CHECK(prefix.total() == doctest::Approx(std::sin(2.0)).epsilon(1e-13));
}

TEST_CASE("layered integral with constant decay reduces to a product") {
  // P = 0: J = int_0^1 g(x) int_0^x f(y) dy dx with f = g = 1 -> 1/2.
  LayeredIntegrand I;
  I.decay = [](double) { return 0.0; };
  I.inner = [](double) { return 1.0; };
  I.outer = [](double) { return 1.0; };
  const auto J = layered_exponential_integral(I, 0.0, 1.0, 64);
  CHECK(J.real() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(J.imag() == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("layered integral against a separable closed form") {
  // f = g = 1, P = a x: J = (a - 1 + e^{-a})/a^2.
  const double a = 7.0;
  LayeredIntegrand I;
  I.decay = [&](double x) { return a * x; };
  I.inner = [](double) { return 1.0; };
  I.outer = [](double) { return 1.0; };
  const double expected = (a - 1.0 + std::exp(-a)) / (a * a);
  const auto J = layered_exponential_integral_checked(I, 0.0, 1.0, 1e-10, 512);
  CHECK(J.real() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("layered integral with a pure phase") {
  // f = g = 1, S = w x: J = int_0^1 int_0^x e^{-iw(x-y)} dy dx
  //                       = (iw + 1 - e^{iw}) / w^2 conjugated ... check Re/Im
  const double w = 3.0;
  LayeredIntegrand I;
  I.decay = [](double) { return 0.0; };
  I.phase = [&](double x) { return w * x; };
  I.inner = [](double) { return 1.0; };
  I.outer = [](double) { return 1.0; };
  const auto J = layered_exponential_integral(I, 0.0, 1.0, 256);
  // int_0^1 (1 - e^{-iwx})/(iw) dx = 1/(iw) + (1 - e^{-iw})/w^2
  const std::complex<double> iw(0.0, w);
  const std::complex<double> expected =
      1.0 / iw + (1.0 - std::exp(-iw)) / (w * w);
  CHECK(J.real() == doctest::Approx(expected.real()).epsilon(1e-12));
  CHECK(J.imag() == doctest::Approx(expected.imag()).epsilon(1e-12));
}

}  // TEST_SUITE
