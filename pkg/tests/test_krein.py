"""Series elements, Weyl function, Krein resolvent, spectral engineering."""

import math

import numpy as np
import pytest

from discext import (ExtensionParameter, PoleError, RadialCoefficients,
                     TruncationError, ValidationError, bessel_j_zero,
                     bessel_mode_spectrum, engineer_theta,
                     find_extension_eigenvalues, g0_element, gamma_diag,
                     gamma_laplacian_closed, gz_element, lambda_weight,
                     ode_residual, resolvent_block, resolvent_element,
                     resolvent_identity_defect, solve_mode,
                     synthesize_eigenfunction, zero_table)
from discext.radial import ModeSpectrum

J01 = 2.404825557695773
SQRT2 = math.sqrt(2.0)


def series_i(order, x, terms=80):
    """Ascending power series for I_order(x) (independent of scipy)."""
    half = 0.5 * x
    term = half ** order / math.factorial(order)
    total = term
    for k in range(1, terms):
        term *= (half * half) / (k * (k + order))
        total += term
    return total


@pytest.fixture(scope="module")
def ms0():
    return bessel_mode_spectrum(0, 200, 400)


@pytest.fixture(scope="module")
def ms1():
    return bessel_mode_spectrum(1, 200, 400)


# ---------------------------------------------------------------------------
# G_z elements

def test_g0_element_frozen_value(ms0):
    # nu_10/lambda^2_10 = -sqrt(2) j01 / j01^2 = -sqrt(2)/j01 = -0.5880732...
    assert g0_element(ms0, 1, 0) == pytest.approx(-SQRT2 / J01, abs=1e-12)
    assert g0_element(ms0, 1, 0) == pytest.approx(-0.588073, abs=1e-5)


def test_g0_element_weight_factor(ms1):
    # (k^2+1)^(1/4) multiplies the bare flux ratio.
    mu = bessel_j_zero(1, 3)
    expect = 2.0 ** 0.25 * (-SQRT2 * mu) / mu ** 2
    assert g0_element(ms1, 3, 1) == pytest.approx(expect, rel=1e-12)
    assert g0_element(ms1, 3, -1) == g0_element(ms1, 3, 1)


def test_gz_element_frozen_value(ms0):
    val = gz_element(ms0, 1, 0, 1.0)
    assert val == pytest.approx(-SQRT2 * J01 / (J01 ** 2 + 1.0), rel=1e-12)
    assert val.real == pytest.approx(-0.501385, abs=1e-5)
    assert val.imag == 0.0


def test_gz_reduces_to_g0_and_ratio(ms0):
    assert gz_element(ms0, 2, 0, 0.0) == pytest.approx(g0_element(ms0, 2, 0))
    for m in (1, 4, 9):
        lam2 = ms0.eigenvalues[m - 1]
        for z in (0.5, 4.0, 2.0 + 1.0j):
            ratio = gz_element(ms0, m, 0, z) / g0_element(ms0, m, 0)
            assert ratio == pytest.approx(lam2 / (lam2 + z), rel=1e-12)


def test_gz_element_errors(ms0):
    with pytest.raises(ValidationError):
        g0_element(ms0, 0, 0)
    with pytest.raises(ValidationError):
        g0_element(ms0, 201, 0)
    with pytest.raises(ValidationError):
        g0_element(ms0, 1, 2)  # spectrum is for |k| = 0
    with pytest.raises(PoleError):
        gz_element(ms0, 1, 0, -ms0.eigenvalues[0])


# ---------------------------------------------------------------------------
# Weyl function

def test_gamma_zero_is_exact(ms0):
    ev = gamma_diag(ms0, 0, 0.0)
    assert ev.value == 0.0
    assert ev.tail_estimate == 0.0


def test_gamma_frozen_value(ms0):
    # Magnitude I1(1)/I0(1); the sign is pinned by the resolvent identity
    # (see test_gamma_increment_identity_fixes_sign below).
    val = gamma_diag(ms0, 0, 1.0).value
    assert val.real == pytest.approx(0.446390, abs=1e-5)
    assert val.imag == 0.0


def test_gamma_closed_form_frozen():
    ratio = series_i(1, 1.0) / series_i(0, 1.0)
    assert gamma_laplacian_closed(0, 1.0) == pytest.approx(ratio, abs=1e-9)
    assert gamma_laplacian_closed(0, 1.0) == pytest.approx(0.4463899659, abs=1e-9)
    assert gamma_laplacian_closed(1, 2.5) == gamma_laplacian_closed(-1, 2.5)
    assert gamma_laplacian_closed(0, 1e-12) == pytest.approx(0.0, abs=1e-11)
    with pytest.raises(ValidationError):
        gamma_laplacian_closed(0, -1.0)
    with pytest.raises(ValidationError):
        gamma_laplacian_closed(0, 0.0)


def test_gamma_closed_form_vs_raw_partial_sums():
    # nu^2 = 2 lambda^2 collapses each term to 2z/(mu^2+z); the raw sum
    # (no tail model) must approach the closed form as M grows.
    for k in (0, 2):
        mu2 = zero_table(k, 20000).zeros ** 2
        for z in (0.5, 10.0):
            raw = lambda_weight(k) * np.sum(2.0 * z / (mu2 * (mu2 + z)) * mu2)
            closed = gamma_laplacian_closed(k, z)
            assert abs(raw / closed - 1.0) < 1e-3


def test_gamma_series_matches_closed_form():
    for k in (0, 3, 8):
        ms = bessel_mode_spectrum(k, 200, 400)
        for z in (0.5, 1.0, 10.0, 50.0):
            ev = gamma_diag(ms, k, z, rel_tol=1e-5)
            closed = gamma_laplacian_closed(k, z)
            assert abs(ev.value.real / closed - 1.0) < 1e-5
            assert ev.tail_estimate <= 1e-5 * max(abs(closed), 1.0)


def test_gamma_conjugation_symmetry(ms0):
    z = 1.7 + 0.9j
    a = gamma_diag(ms0, 0, z).value
    b = gamma_diag(ms0, 0, z.conjugate()).value
    assert b == pytest.approx(a.conjugate(), rel=1e-13)


def test_gamma_strictly_increasing_between_poles(ms0):
    # Principal gap (-lambda^2_1, +inf): Herglotz-type monotonicity, the
    # property that makes root bracketing in the eigenvalue search safe.
    lam2_1 = ms0.eigenvalues[0]
    samples = np.linspace(-lam2_1 + 0.3, 30.0, 40)
    vals = [gamma_diag(ms0, 0, float(s)).value.real for s in samples]
    assert np.all(np.diff(vals) > 0)
    # second gap too
    lam2_2 = ms0.eigenvalues[1]
    samples = np.linspace(-lam2_2 + 0.2, -lam2_1 - 0.2, 25)
    vals = [gamma_diag(ms0, 0, float(s)).value.real for s in samples]
    assert np.all(np.diff(vals) > 0)


def test_gamma_increment_identity_fixes_sign(ms0):
    # The rank-one Krein correction satisfies the first resolvent identity
    # iff Gamma(z) - Gamma(w) = (z-w) * weight * sum nu^2/((lam^2+z)(lam^2+w)).
    # The oppositely-signed convention fails this at O(1), so the sign of
    # Gamma is not a free choice.
    z, w = 2.3, -1.4
    gz = gamma_diag(ms0, 0, z, rel_tol=1e-6).value.real
    gw = gamma_diag(ms0, 0, w, rel_tol=1e-6).value.real
    mu2 = zero_table(0, 60000).zeros ** 2
    cross = np.sum(2.0 * mu2 / ((mu2 + z) * (mu2 + w)))
    want = (z - w) * cross
    assert gz - gw == pytest.approx(want, rel=1e-4)
    assert abs((-gz + gw) - want) > 0.1 * abs(want)


def test_gamma_tail_estimate_is_honest(ms0):
    big = bessel_mode_spectrum(0, 2000, 400)
    for z in (0.5, 5.0, 40.0):
        ev = gamma_diag(ms0, 0, z, rel_tol=1e-4)
        ref = gamma_diag(big, 0, z, rel_tol=1e-6).value.real
        actual = abs(ev.value.real - ref)
        # the estimate may be optimistic by a small factor but not orders
        assert actual < 50.0 * max(ev.tail_estimate, 1e-12)
        assert ev.tail_estimate < 1e-4 * max(abs(ref), 1.0)


def test_gamma_truncation_errors():
    tiny = bessel_mode_spectrum(0, 6, 200)
    with pytest.raises(TruncationError):
        gamma_diag(tiny, 0, 1.0)
    ms = bessel_mode_spectrum(0, 30, 200)
    with pytest.raises(TruncationError):
        gamma_diag(ms, 0, 1.0, rel_tol=1e-14)
    with pytest.raises(TruncationError):
        gamma_diag(ms, 0, -2.0 * ms.eigenvalues[-1])  # beyond the resolved gaps
    with pytest.raises(PoleError):
        gamma_diag(ms, 0, -ms.eigenvalues[2])


# ---------------------------------------------------------------------------
# Resolvent elements

def test_cross_mode_elements_vanish(ms0, ms1):
    params = ExtensionParameter({0: 0.3, 1: -0.2})
    spectra = {0: ms0, 1: ms1}
    val = resolvent_element(params, spectra, 1.0, (1, 0), (1, 1))
    assert val == 0.0


def test_friedrichs_outside_index_set(ms1):
    params = ExtensionParameter({0: 0.3})
    spectra = {1: ms1}
    z = 2.0
    for m in (1, 3):
        val = resolvent_element(params, spectra, z, (m, 1), (m, 1))
        assert val == pytest.approx(1.0 / (ms1.eigenvalues[m - 1] + z), rel=1e-14)
    off = resolvent_element(params, spectra, z, (1, 1), (2, 1))
    assert off == 0.0


def test_corrected_element_value(ms0):
    # R = Friedrichs + weight/(theta+Gamma) * gz_m * gz_mt.
    theta = 0.37
    params = ExtensionParameter({0: theta})
    z = 1.5
    gamma = gamma_diag(ms0, 0, z).value
    g1 = gz_element(ms0, 1, 0, z)
    g2 = gz_element(ms0, 2, 0, z)
    want = g1 * g2 / (theta + gamma)
    got = resolvent_element(params, {0: ms0}, z, (1, 0), (2, 0))
    assert got == pytest.approx(want, rel=1e-10)
    diag = resolvent_element(params, {0: ms0}, z, (1, 0), (1, 0))
    want_diag = 1.0 / (ms0.eigenvalues[0] + z) + g1 * g1 / (theta + gamma)
    assert diag == pytest.approx(want_diag, rel=1e-10)


def test_engineered_pole_is_detected(ms0):
    theta = engineer_theta(ms0, 1.0)
    params = ExtensionParameter({0: theta})
    with pytest.raises(PoleError):
        resolvent_element(params, {0: ms0}, 1.0, (1, 0), (1, 0))


def test_first_resolvent_identity_block(ms0):
    params = ExtensionParameter({0: 0.37})
    defect = resolvent_identity_defect(params, {0: ms0}, 0, 1.3, -2.7, 30)
    assert defect < 1e-8


def test_adjoint_symmetry(ms0):
    params = ExtensionParameter({0: -0.8})
    z = 0.9 + 1.4j
    a = resolvent_element(params, {0: ms0}, z.conjugate(), (2, 0), (5, 0))
    b = resolvent_element(params, {0: ms0}, z, (5, 0), (2, 0))
    assert a == pytest.approx(b.conjugate(), rel=1e-12)


def test_resolvent_block_consistency(ms0):
    params = ExtensionParameter({0: 1.1})
    blk = resolvent_block(params, {0: ms0}, 0, 2.0, 4)
    for m in range(1, 5):
        for mt in range(1, 5):
            el = resolvent_element(params, {0: ms0}, 2.0, (m, 0), (mt, 0))
            assert blk[m - 1, mt - 1] == pytest.approx(el, rel=1e-14)


def test_missing_spectrum_rejected(ms0):
    params = ExtensionParameter({3: 0.5})
    with pytest.raises(ValidationError):
        resolvent_element(params, {0: ms0}, 1.0, (1, 3), (1, 3))


# ---------------------------------------------------------------------------
# Spectral engineering

def test_engineer_theta_zero_target(ms0):
    assert engineer_theta(ms0, 0.0) == 0.0


def test_engineer_theta_frozen_value(ms0):
    # theta = -Gamma at the target; poles of theta + Gamma then sit at the
    # target.  With Gamma(0, 1) = +0.446390 the coupling is its negation.
    theta = engineer_theta(ms0, 1.0)
    assert theta == pytest.approx(-0.446390, abs=1e-5)
    assert theta == pytest.approx(-gamma_laplacian_closed(0, 1.0), abs=1e-5)


def test_engineer_theta_rejects_dirichlet_points(ms0):
    with pytest.raises(PoleError):
        engineer_theta(ms0, -ms0.eigenvalues[0])


def test_round_trip_places_targets():
    for k in (0, 1):
        ms = bessel_mode_spectrum(k, 200, 400)
        for target in (1.0, 7.5, -10.0):
            theta = engineer_theta(ms, target)
            params = ExtensionParameter({k: theta})
            found = find_extension_eigenvalues(params, {abs(k): ms},
                                               (target - 1.0, target + 1.0))
            lams = [lam for kk, lam in found if kk == k]
            assert lams, f"no root recovered for k={k}, target={target}"
            assert min(abs(l - target) for l in lams) < 1e-9


def test_theta_zero_places_zero(ms0):
    params = ExtensionParameter({0: 0.0})
    found = find_extension_eigenvalues(params, {0: ms0}, (-1.0, 1.0))
    lams = [lam for _, lam in found]
    assert min(abs(l) for l in lams) < 1e-9


def test_huge_theta_has_no_roots(ms0):
    params = ExtensionParameter({0: 1e8})
    found = find_extension_eigenvalues(params, {0: ms0}, (-1.0, 30.0))
    assert found == []


def test_search_across_poles(ms0):
    # Gamma sweeps (-inf, +inf) on every interior gap, so each gap inside
    # the interval contributes exactly one root for any finite theta.
    params = ExtensionParameter({0: 0.25})
    lo = -ms0.eigenvalues[2] - 1.0
    found = find_extension_eigenvalues(params, {0: ms0}, (lo, 5.0))
    lams = sorted(lam for _, lam in found)
    assert len(lams) == 3
    gaps = [(-ms0.eigenvalues[2], -ms0.eigenvalues[1]),
            (-ms0.eigenvalues[1], -ms0.eigenvalues[0]),
            (-ms0.eigenvalues[0], 5.0)]
    for lam, (a, b) in zip(lams, gaps):
        assert a < lam < b
        gval = gamma_diag(ms0, 0, lam).value.real
        assert abs(0.25 + gval) < 1e-8


def test_search_below_resolved_gap_rejected(ms0):
    params = ExtensionParameter({0: 0.1})
    with pytest.raises(TruncationError):
        find_extension_eigenvalues(params, {0: ms0},
                                   (-2.0 * ms0.eigenvalues[-1], -ms0.eigenvalues[-1]))


# ---------------------------------------------------------------------------
# Eigenfunction synthesis

def test_coefficient_decay(ms0):
    synth = synthesize_eigenfunction(ms0, 1.0)
    lam = np.sqrt(ms0.eigenvalues)
    coeff = np.abs(synth.coefficients)
    slope = np.polyfit(np.log(lam[20:]), np.log(coeff[20:]), 1)[0]
    assert abs(slope + 1.0) < 0.05


def test_synthesis_constant_at_zero():
    ms = bessel_mode_spectrum(0, 800, 2000)
    synth = synthesize_eigenfunction(ms, 0.0)
    sel = (synth.grid >= 0.05) & (synth.grid <= 0.95)
    prof = synth.radial_samples[sel]
    assert (prof.max() - prof.min()) / abs(prof.mean()) < 1e-6


def test_synthesis_matches_bessel_profiles():
    # lam > 0 -> I_k(sqrt(lam) r); lam < 0 -> J_k(sqrt(-lam) r), up to scale.
    from scipy.special import iv, jv
    ms = bessel_mode_spectrum(1, 800, 2000)
    sel_mask = None
    for lam, profile_fn in ((7.5, lambda r: iv(1, math.sqrt(7.5) * r)),
                            (-10.0, lambda r: jv(1, math.sqrt(10.0) * r))):
        synth = synthesize_eigenfunction(ms, lam)
        sel = (synth.grid >= 0.05) & (synth.grid <= 0.9)
        ref = profile_fn(synth.grid)
        scale = synth.radial_samples[1000] / ref[1000]
        err = np.abs(synth.radial_samples[sel] - scale * ref[sel]).max()
        assert err / abs(scale) < 1e-6


def test_synthesized_function_solves_ode():
    lap = RadialCoefficients.laplacian()
    ms = solve_mode(lap, 0, 800, 2000)
    for lam in (1.0, -10.0):
        synth = synthesize_eigenfunction(ms, lam)
        resid = ode_residual(synth.radial_samples, lam, 0, lap)
        assert resid < 1e-4


def test_synthesis_errors(ms0):
    with pytest.raises(PoleError):
        synthesize_eigenfunction(ms0, -ms0.eigenvalues[0])
    with pytest.raises(TruncationError):
        synthesize_eigenfunction(ms0, 1.0, M=500)
    slim = ModeSpectrum.from_json(ms0.to_json(include_eigenfunctions=False))
    with pytest.raises(ValidationError):
        synthesize_eigenfunction(slim, 1.0)


# ---------------------------------------------------------------------------
# Finite-difference spectra end to end

def test_fd_round_trip_and_theta_agreement():
    lap = RadialCoefficients.laplacian()
    ms_fd = solve_mode(lap, 0, 200, 2000)
    oracle = bessel_mode_spectrum(0, 200, 400)
    # rel_tol 1e-4: the tail fit on finite-difference data is coarser than
    # on oracle data, and the discretization error dominates anyway.
    theta_fd = engineer_theta(ms_fd, 1.0, rel_tol=1e-4)
    theta_or = engineer_theta(oracle, 1.0)
    assert abs(theta_fd - theta_or) < 1e-3
    params = ExtensionParameter({0: theta_fd})
    found = find_extension_eigenvalues(params, {0: ms_fd}, (0.5, 1.5),
                                       rel_tol=1e-4)
    assert min(abs(lam - 1.0) for _, lam in found) < 1e-9
