import numpy as np
import pytest

from cellform._primes import odd_primes_in
from cellform.modforms import (
    ETA4_2Z_4Z,
    ETA6_4Z,
    ETA12_2Z,
    EtaProductSpec,
    eta_qexp,
    gamma_cm,
    gamma_cm_power_identity,
    gamma_eta12_pointcount,
    legendre_trace,
    legendre_traces,
    two_squares,
)


# ---------------------------------------------------------------------------
# two squares
# ---------------------------------------------------------------------------

def test_two_squares_small():
    t = two_squares(5)
    assert (t.x, t.y) == (1, 2)
    t = two_squares(13)
    assert (t.x, t.y) == (3, 2)


def test_two_squares_bruteforce_agreement():
    for p in odd_primes_in(3, 300):
        if p % 4 != 1:
            continue
        t = two_squares(p)
        solutions = {
            (x, y)
            for x in range(1, p)
            for y in range(1, p)
            if x * x + y * y == p and x % 2 == 1 and y % 2 == 0
        }
        assert solutions == {(t.x, t.y)}


def test_two_squares_rejects():
    with pytest.raises(ValueError):
        two_squares(7)
    with pytest.raises(ValueError):
        two_squares(21)


# ---------------------------------------------------------------------------
# CM coefficients
# ---------------------------------------------------------------------------

def test_gamma_cm_values():
    assert gamma_cm(3, 5) == -6
    assert gamma_cm(5, 5) == -14
    for k in (2, 3, 4, 7):
        assert gamma_cm(k, 7) == 0


def test_gamma_cm_rejects():
    with pytest.raises(ValueError):
        gamma_cm(1, 5)
    with pytest.raises(ValueError):
        gamma_cm(3, 15)


def test_gamma_cm_sign_flip_invariance():
    # the sign prefactor and the power sum co-vary under (x,y) -> (-x,y), (x,-y)
    def variant(k, p, sx, sy):
        t = two_squares(p)
        x, y = sx * t.x, sy * t.y
        re, im = 1, 0
        for _ in range(k - 1):
            re, im = re * x - im * y, re * y + im * x
        return (-1) ** (((x + y - 1) * (k - 1) // 2) % 2) * 2 * re

    for p in odd_primes_in(3, 200):
        if p % 4 != 1:
            continue
        for k in range(2, 9):
            base = gamma_cm(k, p)
            assert variant(k, p, -1, 1) == base
            assert variant(k, p, 1, -1) == base


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_gamma_cm_power_identity(m):
    for p in odd_primes_in(3, 100):
        assert gamma_cm_power_identity(3, m, p)


def test_gamma_cm_power_identity_trivial_cases():
    assert gamma_cm_power_identity(5, 1, 13)  # m = 1 collapses to equality
    assert gamma_cm_power_identity(3, 3, 7)  # both sides vanish at p = 3 mod 4


# ---------------------------------------------------------------------------
# eta products
# ---------------------------------------------------------------------------

def test_eta12_2z_coefficients():
    s = eta_qexp(ETA12_2Z, 12)
    assert s[1] == 1
    assert s[3] == -12
    assert s[5] == 54
    assert all(s[n] == 0 for n in range(0, 12, 2))


def test_eta6_4z_coefficients():
    s = eta_qexp(ETA6_4Z, 13)
    assert s[1] == 1
    assert s[5] == -6
    assert s[13] == 10


def test_eta4_2z_4z_normalized():
    s = eta_qexp(ETA4_2Z_4Z, 5)
    assert s[1] == 1
    assert s[3] == -4
    assert s[5] == -2


def test_eta_rejects_fractional_leading_power():
    with pytest.raises(ValueError):
        eta_qexp(EtaProductSpec(((1, 1),)), 10)


# ---------------------------------------------------------------------------
# Legendre traces
# ---------------------------------------------------------------------------

def _count_points(p, lam):
    points = 1  # infinity
    for x in range(p):
        for y in range(p):
            if (y * y - x * (x - 1) * (x - lam)) % p == 0:
                points += 1
    return points


def test_legendre_trace_small_by_enumeration():
    assert _count_points(5, 2) == 8
    assert legendre_trace(5, 2) == -2
    assert _count_points(5, 3) == 4
    assert legendre_trace(5, 3) == 2
    for p in (3, 5, 7, 11):
        for lam in range(2, p):
            assert legendre_trace(p, lam) == p + 1 - _count_points(p, lam)


def test_legendre_trace_rejects():
    with pytest.raises(ValueError):
        legendre_trace(5, 0)
    with pytest.raises(ValueError):
        legendre_trace(5, 1)
    with pytest.raises(ValueError):
        legendre_trace(15, 2)


def test_trace_square_sum_identity():
    for p in odd_primes_in(3, 200):
        traces = legendre_traces(p)
        assert int((traces.astype(object) ** 2).sum()) == p * p - 2 * p - 3


def test_hasse_bound_enforced():
    for p in odd_primes_in(3, 100):
        traces = legendre_traces(p)
        assert np.all(traces * traces <= 4 * p)


# ---------------------------------------------------------------------------
# weight-6 coefficients by point count
# ---------------------------------------------------------------------------

def test_gamma_eta12_pointcount_values():
    assert gamma_eta12_pointcount(3) == -12
    assert gamma_eta12_pointcount(5) == 54
    series = eta_qexp(ETA12_2Z, 7)
    assert gamma_eta12_pointcount(7) == series[7]


def test_source_agreement_cm_vs_eta():
    series = eta_qexp(ETA6_4Z, 500)
    for p in odd_primes_in(3, 500):
        assert gamma_cm(3, p) == series[p]


def test_source_agreement_pointcount_vs_eta():
    series = eta_qexp(ETA12_2Z, 200)
    for p in odd_primes_in(3, 200):
        assert gamma_eta12_pointcount(p) == series[p]
