// Local-adiabatic reparametrization: closed forms are validated against
// direct quadrature (the oracle) before anything downstream trusts them.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "adsearch/quadrature.hpp"
#include "adsearch/schedule.hpp"
#include "adsearch/verification.hpp"

using namespace adsearch;

TEST_SUITE("schedule") {

TEST_CASE("normalization closed form and bound") {
  CHECK(normalization(SearchModel(2)) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(normalization(SearchModel(5)) ==
        doctest::Approx(2.7678717944852263).epsilon(1e-15));
  for (int k = 1; k <= 16; ++k) {
    const auto n = std::int64_t{1} << k;
    const double nn = static_cast<double>(n);
    CHECK(normalization(SearchModel(n)) <=
          std::numbers::pi / 2 * nn / std::sqrt(nn - 1.0) + 1e-12);
  }
  SUBCASE("equals the quadrature of the inverse gap squared") {
    for (std::int64_t n : {2, 17, 512}) {
      const SearchModel m(n);
      const auto f = [&](double r) {
        const double d = gap(m, r);
        return 1.0 / (d * d);
      };
      const double direct = integrate_checked(f, 0.0, 0.5, 5e-12) +
                            integrate_checked(f, 0.5, 1.0, 5e-12);
      CHECK(normalization(m) == doctest::Approx(direct).epsilon(1e-11));
    }
  }
}

TEST_CASE("s_of_r endpoints, midpoint, and a hand-evaluated point") {
  const Schedule sched((SearchModel(4)));
  CHECK(sched.s_of_r(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(sched.s_of_r(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sched.s_of_r(0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(sched.s_of_r(0.75) ==
        doctest::Approx(0.84077828874275755).epsilon(1e-14));
  CHECK_THROWS_AS(sched.s_of_r(1.5), std::domain_error);
}

TEST_CASE("closed form against quadrature on a 1001-point grid") {
  const Schedule sched((SearchModel(64)));
  const auto f = [&](double x) {
    const double d = gap(sched.model, x);
    return 1.0 / (d * d);
  };
  const PrefixIntegral prefix(f, 0.0, 1.0, 4096);
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double r = i / 1000.0;
    worst = std::max(
        worst, std::abs(prefix(r) / sched.normalization - sched.s_of_r(r)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("inverse map and round trip") {
  const Schedule two((SearchModel(2)));
  CHECK(two.r_of_s(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(two.r_of_s(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(two.r_of_s(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(two.r_of_s(0.75) ==
        doctest::Approx(0.70710678118654752).epsilon(1e-14));
  CHECK(schedule_round_trip_error(Schedule(SearchModel(64))) <= 1e-10);
}

TEST_CASE("velocity normalization and peak") {
  const Schedule two((SearchModel(2)));
  CHECK(two.velocity(0.5) ==
        doctest::Approx(1.2732395447351627).epsilon(1e-14));
  for (std::int64_t n : {2, 64}) {
    const Schedule sched((SearchModel(n)));
    const double total = integrate_checked(
        [&](double r) { return sched.velocity(r); }, 0.0, 1.0, 1e-11);
    CHECK(std::abs(total - 1.0) <= 1e-10);
    CHECK(sched.velocity(0.5) ==
          doctest::Approx(static_cast<double>(n) / sched.normalization)
              .epsilon(1e-13));
  }
}

TEST_CASE("dephasing integral Q") {
  const Schedule two((SearchModel(2)));
  const auto w_h = CouplingSpec::hamiltonian();
  CHECK(q_accum(two, w_h, 1.0) ==
        doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));
  for (double r : {0.0, 0.25, 0.7, 1.0}) {
    CHECK(q_accum(two, w_h, r) == r / two.normalization);
  }
  SUBCASE("power law against direct quadrature and its floor") {
    const Schedule sched((SearchModel(16)));
    const auto p2 = CouplingSpec::power(2.0);
    for (double r : {0.2, 0.5, 0.9, 1.0}) {
      const double direct =
          integrate_checked(
              [&](double x) {
                const double d2 = gap(sched.model, x) * gap(sched.model, x);
                return d2;  // Gamma^2/Delta^2 = Delta^2 for sigma = 2
              },
              0.0, r, 1e-12) /
          sched.normalization;
      CHECK(q_accum(sched, p2, r) == doctest::Approx(direct).epsilon(1e-10));
      CHECK(q_accum(sched, p2, r) >=
            r / (sched.normalization * 16.0) - 1e-13);
    }
  }
  SUBCASE("cached accumulator agrees with the one-shot path") {
    const Schedule sched((SearchModel(32)));
    const auto p15 = CouplingSpec::power(1.5);
    const QAccumulator q(sched, p15);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const double r = unit(rng);
      CHECK(q(r) == doctest::Approx(q_accum(sched, p15, r)).epsilon(1e-10));
    }
  }
}

TEST_CASE("phase integral R") {
  const Schedule two((SearchModel(2)));
  CHECK(two.r_phase(0.0) == doctest::Approx(0.0));
  CHECK(two.r_phase(1.0) ==
        doctest::Approx(0.79351502102360954).epsilon(1e-14));
  const Schedule sched((SearchModel(100)));
  SUBCASE("against quadrature") {
    for (double r : {0.3, 0.5, 1.0}) {
      const double direct = integrate_checked(
          [&](double x) { return 1.0 / gap(sched.model, x); }, 0.0, r, 1e-12);
      CHECK(sched.r_phase(r) ==
            doctest::Approx(direct / sched.normalization).epsilon(1e-11));
    }
  }
  SUBCASE("monotone from zero") {
    double prev = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double value = sched.r_phase(i / 50.0);
      CHECK(value > prev);
      prev = value;
    }
  }
}

TEST_CASE("s_of_r derivative equals the velocity") {
  const Schedule sched((SearchModel(25)));
  const double eps = 1e-6;
  for (int i = 1; i < 20; ++i) {
    const double r = i / 20.0;
    const double fd =
        (sched.s_of_r(r + eps) - sched.s_of_r(r - eps)) / (2.0 * eps);
    CHECK(std::abs(fd - sched.velocity(r)) <= 1e-8);
  }
}

TEST_CASE("global debug schedule is the identity map") {
  const Schedule global = Schedule::global_debug(SearchModel(16));
  for (double v : {0.0, 0.3, 0.5, 1.0}) {
    CHECK(global.s_of_r(v) == v);
    CHECK(global.r_of_s(v) == v);
    CHECK(global.velocity(v) == 1.0);
  }
  SUBCASE("accumulated integrals against quadrature") {
    for (double r : {0.4, 1.0}) {
      const double r_direct = integrate_checked(
          [&](double x) { return gap(global.model, x); }, 0.0, r, 1e-12);
      CHECK(global.r_phase(r) == doctest::Approx(r_direct).epsilon(1e-12));
      const double q_direct = integrate_checked(
          [&](double x) {
            const double d = gap(global.model, x);
            return d * d;
          },
          0.0, r, 1e-12);
      CHECK(q_accum(global, CouplingSpec::hamiltonian(), r) ==
            doctest::Approx(q_direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("an injected wrong normalization is caught by both checks") {
  Schedule sched((SearchModel(64)));
  sched.normalization *= 1.001;
  CHECK(schedule_round_trip_error(sched) > 1e-6);
  CHECK(schedule_quadrature_deviation(sched) > 1e-6);
}

}  // TEST_SUITE
