"""Smoke tests for the python module (built by CMake / scikit-build-core)."""

import math

import pytest

import adsearch as ads


def test_spectral_closed_forms():
    m = ads.SearchModel(4)
    assert ads.gap(m, 0.0) == pytest.approx(1.0)
    assert ads.gap(m, 0.5) == pytest.approx(0.5)
    assert ads.gap(m, 0.75) == pytest.approx(0.66143782776614765, abs=1e-15)
    assert ads.coupling_z(m, 0.0) == pytest.approx(0.43301270189221932)
    d = ads.gap(m, 0.3)
    assert ads.coupling_z(m, 0.3) * d * d == pytest.approx(
        math.sqrt(3.0) / 4.0, abs=1e-14
    )
    assert ads.y0_closed(m, 1.0) == pytest.approx(-0.5)
    with pytest.raises(ValueError):
        ads.SearchModel(1)


def test_schedule_round_trip():
    sched = ads.Schedule(ads.SearchModel(64))
    for s in (0.0, 0.25, 0.5, 0.9, 1.0):
        assert sched.s_of_r(sched.r_of_s(s)) == pytest.approx(s, abs=1e-10)
    assert ads.normalization(ads.SearchModel(2)) == pytest.approx(math.pi / 2)


def test_integration_against_zero_time_closed_form():
    m = ads.SearchModel(16)
    sched = ads.Schedule(m)
    params = ads.DecoherenceParams.from_omega(
        0.5, 0.0, ads.CouplingSpec.hamiltonian()
    )
    traj = ads.integrate(m, sched, params, 1e-10)
    assert len(traj.samples) == 201
    worst = max(
        abs(s.y - ads.y0_closed(m, s.r)) for s in traj.samples
    )
    assert worst <= 1e-6
    assert traj.samples[-1].rho00 == pytest.approx(1.0 / 16.0, abs=1e-8)


def test_success_probability_and_bounds():
    m = ads.SearchModel(64)
    sched = ads.Schedule(m)
    spec = ads.CouplingSpec.hamiltonian()
    p = ads.success_probability(
        m, sched, ads.DecoherenceParams(0.0, 1.0, 64.0 * 50.0, spec), 1e-9
    )
    bound = ads.lower_bound_wide_open(64, 64.0 * 50.0, 1.0)
    assert p >= bound - 1e-6
    assert ads.lower_bound_wide_open(100, 1e5, 1.0) == pytest.approx(
        0.99506519779945532
    )
    assert ads.phi(2.0, 2.0) == pytest.approx(14.0 / 3.0)
    assert ads.necessity_I(0.0, 1.0, 1.0) == pytest.approx(
        0.30349282783350349, abs=1e-8
    )


def test_custom_coupling_uses_python_callable():
    m = ads.SearchModel(4)
    spec = ads.CouplingSpec.custom(lambda d: d**1.5)
    assert ads.zeta(spec, m) == pytest.approx(0.25, abs=1e-8)
    assert ads.gamma_split(spec, m, 0.5) == pytest.approx(0.5**1.5)


def test_runtime_search_record():
    rec = ads.runtime_for_success(
        ads.SearchModel(16), ads.CouplingSpec.hamiltonian(), 0.0, 0.5, 1e-4
    )
    assert abs(rec.achieved_probability - 0.5) <= 1e-4
    assert rec.runtime_at_target > 0.0
    assert rec.flag == ""


def test_trajectory_csv_export():
    m = ads.SearchModel(4)
    sched = ads.Schedule(m)
    params = ads.DecoherenceParams.from_omega(
        0.3, 2.0, ads.CouplingSpec.hamiltonian()
    )
    text = ads.integrate(m, sched, params, 1e-9).to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "r,y,c_re,c_im,rho00"
    assert len(lines) == 202
