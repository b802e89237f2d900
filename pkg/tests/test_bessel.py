"""Bessel backend against in-test series oracles and handbook values."""

import math

import numpy as np
import pytest

from discext import (BesselZeroTable, ValidationError, bessel_i, bessel_j,
                     bessel_j_zero, zero_table)

# Handbook values (Abramowitz & Stegun, table 9.5).
J01 = 2.404825557695773
J11 = 3.831705970207512


def series_j(order, x, terms=60):
    """Ascending power series for J_order(x), adequate for x <= 15."""
    half = 0.5 * x
    term = half ** order / math.factorial(order)
    total = term
    for k in range(1, terms):
        term *= -(half * half) / (k * (k + order))
        total += term
    return total


def series_i(order, x, terms=80):
    """Ascending power series for I_order(x); all terms positive."""
    half = 0.5 * x
    term = half ** order / math.factorial(order)
    total = term
    for k in range(1, terms):
        term *= (half * half) / (k * (k + order))
        total += term
    return total


def bisect_zero(f, lo, hi, iters=80):
    flo = f(lo)
    assert flo * f(hi) < 0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if flo * f(mid) <= 0:
            hi = mid
        else:
            lo, flo = mid, f(mid)
    return 0.5 * (lo + hi)


def test_j_matches_power_series():
    for order in (0, 1, 2, 5):
        for x in (0.3, 1.0, 2.5, 6.0, 11.0):
            assert abs(bessel_j(order, x) - series_j(order, x)) < 1e-12


def test_i_matches_power_series():
    for order in (0, 1, 3):
        for x in (0.5, 1.0, 4.0, 9.0):
            assert bessel_i(order, x) == pytest.approx(series_i(order, x), rel=1e-12)


def test_i_ratio_at_one():
    # I1(1)/I0(1), the k = 0 Dirichlet-to-Neumann building block at z = 1.
    ratio = bessel_i(1, 1.0) / bessel_i(0, 1.0)
    assert ratio == pytest.approx(0.446390, abs=1e-6)
    assert ratio == pytest.approx(series_i(1, 1.0) / series_i(0, 1.0), rel=1e-13)


def test_first_zero_against_bisection():
    root = bisect_zero(lambda x: series_j(0, x), 2.0, 3.0)
    assert abs(root - J01) < 1e-12
    assert abs(bessel_j_zero(0, 1) - J01) < 1e-12
    assert abs(bessel_j(0, J01)) < 1e-12


def test_frozen_first_zeros():
    assert bessel_j_zero(0, 1) == pytest.approx(J01, abs=1e-12)
    assert bessel_j_zero(1, 1) == pytest.approx(J11, abs=1e-12)


def test_zeros_are_roots_to_high_accuracy():
    for order in (0, 1, 4, 8):
        for m in (1, 2, 10, 60):
            mu = bessel_j_zero(order, m)
            assert abs(bessel_j(order, mu)) < 1e-11


def test_three_term_recurrences():
    # J_{n-1} + J_{n+1} = (2n/x) J_n and I_{n-1} - I_{n+1} = (2n/x) I_n.
    for n in (1, 2, 6):
        for x in (0.7, 3.1, 12.0):
            lhs_j = bessel_j(n - 1, x) + bessel_j(n + 1, x)
            assert abs(lhs_j - 2 * n / x * bessel_j(n, x)) < 1e-10
            lhs_i = bessel_i(n - 1, x) - bessel_i(n + 1, x)
            assert abs(lhs_i - 2 * n / x * bessel_i(n, x)) < 1e-10 * max(1.0, bessel_i(n, x))


def test_derivative_identity_vs_central_difference():
    # J0' = -J1, checked against a centered difference of bessel_j itself.
    h = 1e-6
    for x in (0.8, 2.0, 5.5):
        fd = (bessel_j(0, x + h) - bessel_j(0, x - h)) / (2 * h)
        assert abs(fd + bessel_j(1, x)) < 1e-9


def test_zero_interlacing():
    # j_{n,m} < j_{n+1,m} < j_{n,m+1}.
    for n in (0, 1, 3):
        zn = [bessel_j_zero(n, m) for m in range(1, 8)]
        zn1 = [bessel_j_zero(n + 1, m) for m in range(1, 8)]
        for m in range(6):
            assert zn[m] < zn1[m] < zn[m + 1]


def test_zero_table_round_trip(tmp_path):
    table = zero_table(2, 25)
    assert table.count == 25
    assert np.all(np.diff(table.zeros) > 0)
    path = tmp_path / "zeros.txt"
    table.save(path)
    loaded = BesselZeroTable.load(path)
    assert loaded.order == 2
    np.testing.assert_array_equal(loaded.zeros, table.zeros)


def test_zero_table_rejects_corruption(tmp_path):
    table = zero_table(0, 5)
    path = tmp_path / "zeros.txt"
    table.save(path)
    text = path.read_text().splitlines()
    text[-1] = "3.0"  # not a zero of J0
    path.write_text("\n".join(text) + "\n")
    with pytest.raises(ValidationError):
        BesselZeroTable.load(path)


def test_input_validation():
    with pytest.raises(ValidationError):
        bessel_j(-1, 1.0)
    with pytest.raises(ValidationError):
        bessel_j(0, float("nan"))
    with pytest.raises(ValidationError):
        bessel_j_zero(0, 0)
    with pytest.raises(ValidationError):
        bessel_i(0, 1e4)  # overflow guard
