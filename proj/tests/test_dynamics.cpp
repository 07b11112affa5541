// Eigenframe dynamics against its two independent oracles: the zero-run-time
// closed form and the integral-equation quadrature, plus the full-space
// reduction check.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "adsearch/dynamics.hpp"
#include "adsearch/verification.hpp"

using namespace adsearch;

namespace {
const CouplingSpec w_h = CouplingSpec::hamiltonian();
}

TEST_SUITE("dynamics") {

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(DecoherenceParams(-1.0, 0.0, 1.0, w_h),
                  std::invalid_argument);
  CHECK_THROWS_AS(DecoherenceParams(0.0, 1.0, -1.0, w_h),
                  std::invalid_argument);
  CHECK_THROWS_AS(DecoherenceParams::from_omega(1.5, 1.0, w_h),
                  std::invalid_argument);
  const auto closed = DecoherenceParams::from_omega(0.0, 1.0, w_h);
  CHECK(closed.a_weight == 1.0);
  CHECK(closed.b_weight == 0.0);
  const auto open = DecoherenceParams::from_omega(1.0, 1.0, w_h);
  CHECK(open.a_weight == 0.0);  // exactly, not cos(pi/2) roundoff
  CHECK(open.b_weight == 1.0);
}

TEST_CASE("eigenframe rates at the initial state") {
  const SearchModel m(16);
  const Schedule sched(m);
  const auto params = DecoherenceParams(1.0, 1.0, 0.0, w_h);  // T = 0
  for (double r : {0.0, 0.31, 0.5, 0.99}) {
    const auto rate =
        bloch_derivative({1.0, 0.0, 0.0}, r, m, sched, params);
    CHECK(rate.y == 0.0);
    CHECK(rate.c_re == doctest::Approx(-coupling_z(m, r)).epsilon(1e-15));
    CHECK(rate.c_im == 0.0);
  }
}

TEST_CASE("wide-open W = H damping is constant in r") {
  const SearchModel m(64);
  const Schedule sched(m);
  const auto params = DecoherenceParams(0.0, 1.0, 37.0, w_h);
  for (double r : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const auto c = bloch_coefficients(m, sched, params, r);
    CHECK(c.damping ==
          doctest::Approx(37.0 / sched.normalization).epsilon(1e-13));
    CHECK(c.phase == 0.0);
  }
}

TEST_CASE("zero run-time reproduces the closed form") {
  for (std::int64_t n : {2, 16, 1024}) {
    const SearchModel m(n);
    const Schedule sched(m);
    const auto traj = integrate(
        m, sched, DecoherenceParams::from_omega(0.7, 0.0, w_h), 1e-10);
    const auto dev = t0_oracle_deviation(m, traj);
    CHECK(dev.y_dev <= 1e-6);
    CHECK(dev.c_dev <= 1e-6);
  }
}

TEST_CASE("a flipped coupling sign is visible in the coherence oracle") {
  // Synthetic trajectory built from the closed form with the sign of z
  // flipped: Y is unchanged (c -> -c absorbs the flip) but the coherence
  // check must fail.
  const SearchModel m(16);
  const Schedule sched(m);
  Trajectory mutated = integrate(
      m, sched, DecoherenceParams::from_omega(0.0, 0.0, w_h), 1e-10);
  for (auto& s : mutated.samples) s.c_re = -s.c_re;
  const auto dev = t0_oracle_deviation(m, mutated);
  CHECK(dev.y_dev <= 1e-6);   // undetectable in the populations
  CHECK(dev.c_dev > 0.1);     // caught by the coherence comparison
}

TEST_CASE("closed-case purity is conserved") {
  const SearchModel m(8);
  const Schedule sched(m);
  const auto traj =
      integrate(m, sched, DecoherenceParams(1.0, 0.0, 7.0, w_h), 1e-10);
  CHECK(purity_drift(traj) <= 1e-8);
}

TEST_CASE("positivity holds along a dephasing run") {
  const SearchModel m(32);
  const Schedule sched(m);
  const double tol = 1e-9;
  const auto traj = integrate(
      m, sched, DecoherenceParams::from_omega(0.6, 25.0, w_h), tol);
  for (const auto& s : traj.samples) {
    CHECK(s.y * s.y + 4.0 * (s.c_re * s.c_re + s.c_im * s.c_im) <=
          1.0 + 10.0 * tol);
    CHECK(s.rho00 == doctest::Approx(0.5 * (1.0 + s.y)).epsilon(1e-15));
  }
}

TEST_CASE("trajectory sampling contract") {
  const SearchModel m(4);
  const Schedule sched(m);
  const auto params = DecoherenceParams::from_omega(0.2, 3.0, w_h);
  CHECK_THROWS_AS(integrate(m, sched, params, 1e-13), std::domain_error);
  CHECK_THROWS_AS(integrate(m, sched, params, 1e-3), std::domain_error);
  const auto traj = integrate(m, sched, params, 1e-8, 50);
  CHECK(traj.samples.size() == 201);  // clamped up to the contract minimum
  CHECK(traj.samples.front().r == 0.0);
  CHECK(traj.samples.back().r == 1.0);
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].r > traj.samples[i - 1].r);
  }
  const auto fine = integrate(m, sched, params, 1e-8, 1001);
  CHECK(fine.samples.size() == 1001);
}

TEST_CASE("success probability spot values") {
  const SearchModel m4(4);
  const Schedule s4(m4);
  for (double omega : {0.0, 0.5, 1.0}) {
    CHECK(success_probability(
              m4, s4, DecoherenceParams::from_omega(omega, 0.0, w_h), 1e-10) ==
          doctest::Approx(0.25).epsilon(1e-8));
  }
  const SearchModel m2(2);
  CHECK(success_probability(m2, Schedule(m2),
                            DecoherenceParams(1.0, 0.0, 0.0, w_h), 1e-10) ==
        doctest::Approx(0.5).epsilon(1e-8));
  SUBCASE("adiabatic regime") {
    const SearchModel m(16);
    CHECK(success_probability(m, Schedule(m),
                              DecoherenceParams(1.0, 0.0, 1000.0, w_h),
                              1e-10) >= 0.99);
  }
  SUBCASE("rises toward one below the adiabatic knee") {
    const SearchModel m(8);
    const Schedule sched(m);
    double prev = 0.0;
    for (double t : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      const double p = success_probability(
          m, sched, DecoherenceParams::from_omega(0.0, t, w_h), 1e-10);
      CHECK(p >= prev - 1e-9);
      prev = p;
    }
    CHECK(prev > 0.99);
  }
  SUBCASE("wide-open sufficiency spot check") {
    const SearchModel m(64);
    const double p = success_probability(
        m, Schedule(m), DecoherenceParams(0.0, 1.0, 64.0 * 50.0, w_h), 1e-10);
    CHECK(p >= 1.0 - std::numbers::pi * std::numbers::pi / 100.0 - 1e-6);
  }
}

TEST_CASE("protection ordering on a few deterministic sets") {
  const struct {
    std::int64_t n;
    double omega;
    double t;
  } sets[] = {{2, 0.0, 3.0}, {16, 0.5, 40.0}, {256, 0.9, 12.0},
              {64, 1.0, 777.0}, {8, 0.3, 0.25}};
  for (const auto& s : sets) {
    const SearchModel m(s.n);
    const Schedule sched(m);
    const auto traj = integrate(
        m, sched, DecoherenceParams::from_omega(s.omega, s.t, w_h), 1e-12);
    CHECK(protection_margin(m, traj) >= -1e-8);
  }
}

TEST_CASE("integral-equation residual on the oracle grid") {
  const struct {
    std::int64_t n;
    double t;
    double omega;
  } grid[] = {{64, 50.0, 0.3}, {16, 20.0, 0.6}, {256, 30.0, 0.9}};
  for (const auto& g : grid) {
    const SearchModel m(g.n);
    const Schedule sched(m);
    const auto params = DecoherenceParams::from_omega(g.omega, g.t, w_h);
    const auto traj = integrate(m, sched, params, 1e-10, 2001);
    CHECK(integral_equation_residual(m, sched, params, traj) <= 1e-5);
  }
  SUBCASE("zero run-time: the defect identity pins I(1) to (1 - Y0(1))/4") {
    const SearchModel m(2);
    const Schedule sched(m);
    const auto params = DecoherenceParams::from_omega(0.5, 0.0, w_h);
    const auto traj = integrate(m, sched, params, 1e-10, 2001);
    // Y(1) = 0 for N = 2, so a small residual certifies I(1) = 1/4.
    CHECK(std::abs(traj.samples.back().y) <= 1e-8);
    CHECK(integral_equation_residual(m, sched, params, traj) <= 1e-5);
  }
}

TEST_CASE("full-space reduction") {
  SUBCASE("N = 8 with both generator terms") {
    const SearchModel m(8);
    CHECK(full_space_deviation(m, Schedule(m),
                               DecoherenceParams::from_omega(0.5, 20.0, w_h),
                               1e-10) <= 1e-6);
  }
  SUBCASE("N = 2: the relevant subspace is the whole space") {
    const SearchModel m(2);
    CHECK(full_space_deviation(m, Schedule(m),
                               DecoherenceParams::from_omega(0.7, 5.0, w_h),
                               1e-10) <= 1e-6);
  }
  SUBCASE("zero run-time: three-way agreement") {
    const SearchModel m(8);
    const Schedule sched(m);
    const auto params = DecoherenceParams::from_omega(0.5, 0.0, w_h);
    CHECK(full_space_deviation(m, sched, params, 1e-10) <= 1e-6);
    const auto traj = integrate(m, sched, params, 1e-10);
    CHECK(t0_oracle_deviation(m, traj).y_dev <= 1e-6);
  }
  SUBCASE("dimension guard") {
    const SearchModel m(32);
    CHECK_THROWS_AS(
        full_space_deviation(m, Schedule(m),
                             DecoherenceParams::from_omega(0.5, 1.0, w_h),
                             1e-8),
        std::domain_error);
  }
}

TEST_CASE("global debug schedule: same geometry, slower adiabaticity") {
  const SearchModel m(16);
  const Schedule global = Schedule::global_debug(m);
  SUBCASE("the zero-run-time rotation is schedule independent") {
    const auto traj = integrate(
        m, global, DecoherenceParams::from_omega(0.5, 0.0, w_h), 1e-10);
    CHECK(t0_oracle_deviation(m, traj).y_dev <= 1e-6);
  }
  SUBCASE("the local schedule wins at a fixed budget") {
    const auto params = DecoherenceParams::from_omega(0.0, 30.0, w_h);
    const double p_local =
        success_probability(m, Schedule(m), params, 1e-9);
    const double p_global = success_probability(m, global, params, 1e-9);
    CHECK(p_local > p_global + 0.1);
  }
}

TEST_CASE("trajectory CSV format") {
  const SearchModel m(4);
  const Schedule sched(m);
  const auto traj = integrate(
      m, sched, DecoherenceParams::from_omega(0.4, 2.0, w_h), 1e-9);
  std::ostringstream out;
  write_trajectory_csv(traj, out);
  const std::string text = out.str();
  CHECK(text.rfind("r,y,c_re,c_im,rho00\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (rows == 17) {
      // 17 significant digits round-trip: parse the row back exactly
      double r, y;
      char comma;
      std::istringstream fields(line);
      fields >> r >> comma >> y;
      CHECK(r == traj.samples[17].r);
      CHECK(y == traj.samples[17].y);
    }
    ++rows;
  }
  CHECK(rows == traj.samples.size());
}

}  // TEST_SUITE
