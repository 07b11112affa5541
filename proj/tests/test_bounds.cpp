// Run-time bounds and the wide-open necessity machinery. Frozen constants
// come from high-precision evaluation of the closed forms; the layered
// integrals are checked against a plain two-dimensional Riemann oracle.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "adsearch/bounds.hpp"
#include "adsearch/dynamics.hpp"
#include "adsearch/quadrature.hpp"

using namespace adsearch;

TEST_SUITE("bounds") {

TEST_CASE("general lower bound arithmetic") {
  CHECK(lower_bound_general(100, 1e4, 1.0, 0.0, 3.7) ==
        doctest::Approx(0.98026079119782128).epsilon(1e-14));
  // same expression factored differently as a second route
  const double direct = lower_bound_general(100, 1e3, 1.0, 1.0, 1.2);
  const double pi_sq = std::numbers::pi * std::numbers::pi;
  const double refactored =
      1.0 - (2.0 * pi_sq * 10.0 + 2.0 * pi_sq * 10.0 *
                                      std::sqrt(100.0 / 99.0) * 1.2) /
                1e3;
  CHECK(direct == doctest::Approx(refactored).epsilon(1e-13));
  CHECK(direct == doctest::Approx(0.56454409650436755).epsilon(1e-13));
  SUBCASE("limit and domain") {
    CHECK(lower_bound_general(100, 1e12, 1.0, 1.0, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(lower_bound_general(100, 1.0, 0.0, 1.0, 1.0),
                    std::domain_error);
    // vacuous bounds are returned as-is
    CHECK(lower_bound_general(100, 1.0, 1.0, 0.0, 0.0) < 0.0);
  }
}

TEST_CASE("wide-open lower bound arithmetic") {
  CHECK(lower_bound_wide_open(100, 1e5, 1.0) ==
        doctest::Approx(0.99506519779945532).epsilon(1e-14));
  CHECK(lower_bound_wide_open(10, 1e5, 2.0) ==
        doctest::Approx(0.99506519779945532).epsilon(1e-14));
  const double pi_sq = std::numbers::pi * std::numbers::pi;
  CHECK(lower_bound_wide_open(7, pi_sq / 2.0 * 7.0, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("phi closed forms, oddness, and the quadrature path") {
  for (double x : {-2.0, -0.3, 0.0, 1.7}) {
    CHECK(phi(x, 1.0) == doctest::Approx(x).epsilon(1e-15));
  }
  CHECK(phi(2.0, 2.0) == doctest::Approx(14.0 / 3.0).epsilon(1e-14));
  for (double x : {0.2, 1.1, 2.9}) {
    CHECK(phi(-x, 1.7) == doctest::Approx(-phi(x, 1.7)).epsilon(1e-12));
    const double direct = integrate_checked(
        [](double t) { return std::pow(1.0 + t * t, 0.7); }, 0.0, x, 1e-11);
    CHECK(phi(x, 1.7) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("necessity alpha") {
  CHECK(necessity_alpha(2, std::numbers::pi, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(necessity_alpha(2, std::numbers::pi / 2, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(necessity_alpha(37, 2.0 * 17.0, 1.3) ==
        doctest::Approx(2.0 * necessity_alpha(37, 17.0, 1.3))
            .epsilon(1e-14));
  const auto params = NecessityParams::from(10, 50.0, 2.0);
  CHECK(params.beta == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(params.alpha ==
        doctest::Approx(necessity_alpha(10, 50.0, 2.0)).epsilon(1e-14));
}

TEST_CASE("necessity I at alpha = 0 has a closed form") {
  // I(0, beta) = 2 (beta - atan beta) / sqrt(1 + beta^2)
  CHECK(necessity_I(0.0, 1.0, 1.0) ==
        doctest::Approx(0.30349282783350349).epsilon(1e-10));
  CHECK(necessity_I(0.0, 2.0, 1.0) ==
        doctest::Approx(0.79859046432410481).epsilon(1e-10));
}

TEST_CASE("layered evaluation against the Riemann oracle") {
  CHECK(std::abs(necessity_I(0.0, 1.0, 1.0) -
                 necessity_I_brute(0.0, 1.0, 1.0, 2000)) <= 1e-4);
  CHECK(std::abs(necessity_I(1.3, 2.5, 1.0) -
                 necessity_I_brute(1.3, 2.5, 1.0, 2000)) <= 1e-4);
  CHECK(std::abs(necessity_I(0.8, 1.5, 2.0) -
                 necessity_I_brute(0.8, 1.5, 2.0, 2000)) <= 1e-4);
}

TEST_CASE("necessity I is positive and increasing in beta") {
  for (double alpha : {0.0, 0.5, 2.0, 8.0}) {
    double prev = 0.0;
    for (int i = 0; i <= 25; ++i) {
      const double beta = 0.1 + i * (10.0 - 0.1) / 25.0;
      const double value = necessity_I(alpha, beta, 1.0);
      CHECK(value > 0.0);
      CHECK(value >= prev - 1e-9);
      prev = value;
    }
  }
}

TEST_CASE("necessity F integral: positive, decreasing, vanishing") {
  // At alpha = 0 integration by parts gives the same closed form as I(0,1).
  CHECK(necessity_F_integral(0.0, 1.0) ==
        doctest::Approx(0.30349282783350349).epsilon(1e-9));
  double prev = necessity_F_integral(0.0, 1.0);
  for (double alpha : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    const double value = necessity_F_integral(alpha, 1.0);
    CHECK(value > 0.0);
    CHECK(value < prev);
    prev = value;
  }
  CHECK(necessity_F_integral(64.0, 1.0) <
        1e-3 * necessity_F_integral(0.0, 1.0));
}

TEST_CASE("necessity I0 chain for the wide-open dynamics") {
  const auto w_h = CouplingSpec::hamiltonian();
  SUBCASE("chain inequality and the dynamic lower bound") {
    for (std::int64_t n : {4, 16}) {
      const SearchModel m(n);
      const Schedule sched(m);
      for (double t : {10.0, 100.0}) {
        const auto res = necessity_I0(m, sched, w_h, t);
        CHECK(res.i0 >= res.change_of_variables_lower - 1e-9);
        const auto traj =
            integrate(m, sched, DecoherenceParams(0.0, 1.0, t, w_h), 1e-10);
        CHECK(1.0 - traj.samples.back().y >= res.i0 - 1e-6);
      }
    }
  }
  SUBCASE("zero run-time collapses to the defect identity") {
    // With unit exponentials, I0 = 4 * I(1) = 1 - Y0(1).
    const SearchModel m(4);
    const Schedule sched(m);
    const auto res = necessity_I0(m, sched, w_h, 0.0);
    CHECK(res.i0 ==
          doctest::Approx(1.0 - y0_closed(m, 1.0)).epsilon(1e-8));
  }
  SUBCASE("power-law coupling path") {
    const SearchModel m(8);
    const Schedule sched(m);
    const auto p2 = CouplingSpec::power(2.0);
    const auto res = necessity_I0(m, sched, p2, 200.0);
    CHECK(res.i0 > 0.0);
    CHECK(res.i0 >= res.change_of_variables_lower - 1e-9);
    const auto traj =
        integrate(m, sched, DecoherenceParams(0.0, 1.0, 200.0, p2), 1e-10);
    CHECK(1.0 - traj.samples.back().y >= res.i0 - 1e-6);
  }
}

}  // TEST_SUITE
