import math

import pytest

import herbst_bs as hb


def test_special_functions():
    assert hb.bessel_k(0, 1.0) == pytest.approx(0.42102443824070834, rel=1e-13)
    assert hb.k0_moment_full(0) == pytest.approx(math.pi / 2, rel=1e-15)
    assert hb.f1_moment(0.6) == pytest.approx(math.pi / (2 * math.sqrt(1 - 0.36)), rel=1e-12)
    assert hb.h3_root() == pytest.approx(0.7451315, abs=1e-6)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        hb.bessel_k(0, -1.0)
    with pytest.raises(hb.DomainError):
        hb.PhysParams.from_mu(1.5)


def test_kernel_and_envelope():
    p = hb.PhysParams.from_mu(0.5)
    assert p.E == pytest.approx(math.sqrt(1 - 0.25) - 1)
    for r in (0.01, 0.3, 2.0, 20.0):
        assert 0 < hb.green_function(r, p) <= hb.envelope_bound(r, p, hb.h3_root())
    assert hb.green_function(0.5, hb.PhysParams.from_energy(0.0)) == pytest.approx(hb.l0_profile(0.5), rel=1e-12)
    assert hb.b_hat(0.5) < 0


def test_spectrum_and_scaling_law():
    grid = hb.gauss_legendre_grid(120, 1.0)
    p = hb.PhysParams.from_alpha(0.0)
    res = hb.leading_eigenpair(hb.s_wave_reduce(hb.bump(), p, grid))
    assert res.mu0 > 0
    assert res.lambda0 == pytest.approx(1 / res.mu0)
    doubled = hb.leading_eigenpair(hb.s_wave_reduce(hb.bump(2.0), p, grid))
    assert doubled.lambda0 == pytest.approx(res.lambda0 / 2, rel=1e-10)
    assert hb.s_wave_reduce(hb.bump(), p, grid).entries.shape == (120, 120)


def test_threshold_expansion():
    grid = hb.gauss_legendre_grid(120, 1.0)
    V = hb.bump()
    L0 = hb.s_wave_reduce(V, hb.PhysParams.from_alpha(0.0), grid)
    res = hb.leading_eigenpair(L0)
    e = hb.expansion(res, V, grid)
    assert e.branch == hb.Branch.a_nonzero
    assert e.a < 0
    assert hb.energy_of_lambda(e, e.lambda0) == 0.0
    assert hb.energy_of_lambda(e, 1.1 * e.lambda0) < 0
    pts = hb.eigen_continuation(V, grid, [0.0, 0.001])
    assert (pts[1][1] - pts[0][1]) / 0.001 == pytest.approx(e.a, rel=1e-2)
    z = hb.expansion(hb.zero_overlap_trial(L0), V, grid)
    assert z.branch == hb.Branch.a_zero
    assert z.b < 0
    with pytest.raises(ValueError):
        hb.energy_of_lambda(e, 0.5 * e.lambda0)


def test_verify_suite():
    rep = hb.run_suite("appendix_c")
    assert rep["passed"]
    assert any(c["group"] == "root" for c in rep["checks"])
    assert "continuation" in hb.suite_names
