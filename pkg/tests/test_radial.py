"""Radial eigensolver against the Bessel oracle and its own invariants."""

import dataclasses
import math

import numpy as np
import pytest

from discext import (ConvergenceError, ModeSpectrum, RadialCoefficients,
                     ValidationError, bessel_j_zero, bessel_mode_spectrum,
                     ode_residual, resolve_shift, solve_mode)

J01 = 2.404825557695773
J11 = 3.831705970207512
LAP = RadialCoefficients.laplacian()


def richardson(coarse, fine):
    """One step of h^2 Richardson extrapolation (grid doubled)."""
    return (4.0 * fine - coarse) / 3.0


def test_first_eigenvalue_matches_bessel_zero():
    ms = solve_mode(LAP, 0, 1, 2000)
    assert ms.eigenvalues[0] == pytest.approx(J01 ** 2, rel=1e-6)
    ms1 = solve_mode(LAP, 1, 1, 2000)
    assert ms1.eigenvalues[0] == pytest.approx(J11 ** 2, rel=1e-6)


def test_first_flux_matches_bessel_value():
    # nu_{10} = -sqrt(2) mu_{10}; one Richardson step recovers it to 1e-6.
    c = solve_mode(LAP, 0, 1, 1000).fluxes[0]
    f = solve_mode(LAP, 0, 1, 2000).fluxes[0]
    assert richardson(c, f) == pytest.approx(-math.sqrt(2.0) * J01, rel=1e-6)
    assert f == pytest.approx(-3.401002, rel=1e-4)


def test_eigenvalues_and_fluxes_table():
    for n in (0, 2, 5):
        coarse = solve_mode(LAP, n, 6, 1000)
        fine = solve_mode(LAP, n, 6, 2000)
        for m in range(1, 7):
            mu = bessel_j_zero(n, m)
            lam2 = richardson(coarse.eigenvalues[m - 1], fine.eigenvalues[m - 1])
            nu = richardson(coarse.fluxes[m - 1], fine.fluxes[m - 1])
            assert lam2 == pytest.approx(mu ** 2, rel=1e-7)
            assert nu == pytest.approx(-math.sqrt(2.0) * mu, rel=1e-5)


def test_fluxes_are_negative_and_proportional_to_lambda():
    for n in (0, 3):
        ms = solve_mode(LAP, n, 12, 2000)
        assert np.all(ms.fluxes < 0)
        ratio = ms.fluxes / np.sqrt(ms.eigenvalues)
        np.testing.assert_allclose(ratio, -math.sqrt(2.0), rtol=2e-3)


def test_discrete_orthonormality_includes_axis_mass():
    for n in (0, 1, 4):
        ms = solve_mode(LAP, n, 25, 1500)
        assert ms.orthonormality_defect() < 1e-8


def test_eigenvalue_count_below_cut():
    cut = 500.0
    ms = solve_mode(LAP, 1, 40, 3000)
    want = sum(1 for m in range(1, 41) if bessel_j_zero(1, m) ** 2 < cut)
    got = int(np.sum(ms.eigenvalues < cut))
    assert got == want


def test_grid_convergence_is_second_order():
    errs = []
    for grid in (500, 1000, 2000):
        lam2 = solve_mode(LAP, 0, 1, grid).eigenvalues[0]
        errs.append(abs(lam2 - J01 ** 2))
    order = np.log2(errs[0] / errs[1]), np.log2(errs[1] / errs[2])
    assert abs(order[0] - 2.0) < 0.3
    assert abs(order[1] - 2.0) < 0.3


def test_variable_coefficients_raise_eigenvalues():
    # a >= 1 and c >= 0 pointwise dominate the Laplacian case.
    co = RadialCoefficients.from_polynomials((1.0, 0.0, 0.5), (0.0, 1.0))
    ms = solve_mode(co, 0, 5, 2000)
    base = solve_mode(LAP, 0, 5, 2000)
    assert np.all(ms.eigenvalues > base.eigenvalues)
    assert ms.orthonormality_defect() < 1e-8
    assert np.all(ms.fluxes < 0)


def test_negative_c_needs_shift():
    co = RadialCoefficients.from_polynomials((1.0,), (-30.0,))
    with pytest.raises(ValidationError):
        solve_mode(co, 0, 3, 1000)
    shifted = dataclasses.replace(co, shift="auto")
    shift = resolve_shift(shifted)
    assert shift >= 30.0 - J01 ** 2 - 1e-3
    ms = solve_mode(shifted, 0, 3, 1000)
    assert ms.eigenvalues[0] > 0
    assert ms.discretization_meta["shift_applied"] > 0


def test_oracle_spectrum_matches_solver():
    oracle = bessel_mode_spectrum(2, 8, 2000)
    coarse = solve_mode(LAP, 2, 8, 1000)
    fine = solve_mode(LAP, 2, 8, 2000)
    lam2 = richardson(coarse.eigenvalues, fine.eigenvalues)
    np.testing.assert_allclose(lam2, oracle.eigenvalues, rtol=1e-7)
    nu = richardson(coarse.fluxes, fine.fluxes)
    np.testing.assert_allclose(nu, oracle.fluxes, rtol=1e-5)
    assert oracle.orthonormality_defect() < 1e-7


def test_ode_residual_of_own_eigenfunction():
    # Dirichlet modes solve the Delta-convention equation at lam = -lambda^2.
    # The floor is the tridiagonal eigensolver's eps * ||T|| ~ 1e-8 at N=2000.
    ms = solve_mode(LAP, 1, 4, 2000)
    for m in range(4):
        resid = ode_residual(ms.eigenfunctions[m], -ms.eigenvalues[m], 1, LAP)
        assert resid < 1e-7


def test_ode_residual_flags_wrong_eigenvalue():
    ms = solve_mode(LAP, 0, 1, 2000)
    good = ode_residual(ms.eigenfunctions[0], -ms.eigenvalues[0], 0, LAP)
    bad = ode_residual(ms.eigenfunctions[0], -ms.eigenvalues[0] + 1.0, 0, LAP)
    assert bad > 1e3 * max(good, 1e-12)


def test_constants_are_harmonic_for_n0():
    ms = solve_mode(LAP, 0, 1, 1000)
    ones = np.ones_like(ms.grid)
    assert ode_residual(ones, 0.0, 0, LAP) < 1e-12


def test_json_round_trip():
    ms = solve_mode(LAP, 1, 5, 800)
    doc = ms.to_json(include_eigenfunctions=True)
    back = ModeSpectrum.from_json(doc)
    np.testing.assert_array_equal(back.eigenvalues, ms.eigenvalues)
    np.testing.assert_array_equal(back.fluxes, ms.fluxes)
    np.testing.assert_array_equal(back.eigenfunctions, ms.eigenfunctions)
    assert back.n == 1

    slim = ModeSpectrum.from_json(ms.to_json(include_eigenfunctions=False))
    assert slim.discretization_meta.get("eigenfunctions_omitted") is True


def test_coefficient_validation():
    with pytest.raises(ValidationError):
        RadialCoefficients.from_polynomials((1.0, -2.0), (0.0,))  # a hits zero
    with pytest.raises(ValidationError):
        solve_mode(LAP, -1, 3, 500)
    with pytest.raises(ConvergenceError):
        solve_mode(LAP, 0, 600, 500)  # more modes than grid unknowns


def test_spectrum_invariants_enforced():
    ms = solve_mode(LAP, 0, 3, 500)
    broken = dataclasses.asdict(ms)
    broken["eigenvalues"] = np.array([5.0, 4.0, 3.0])
    with pytest.raises(ValidationError):
        ModeSpectrum(**{**broken, "eigenvalues": np.array([5.0, 4.0, 3.0])})
