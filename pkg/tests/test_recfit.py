from fractions import Fraction

import pytest

from cellform.recfit import PolyRecurrence, check_self_duality_symmetry, fit
from cellform.sequences import a_sigma8, apery_a


def test_constant_sequence():
    rec = fit([1] * 30, 1, 0)
    assert rec.order == 1 and rec.degree == 0
    # s(n+1) - s(n) = 0 up to the global scalar
    assert rec.coefficients[0][0] == -rec.coefficients[1][0]


def test_insufficient_terms():
    with pytest.raises(ValueError):
        fit([1, 2, 3], 2, 2)


def test_no_recurrence_returns_none():
    # factorial growth defeats a first-order constant-coefficient ansatz
    import math

    seq = [math.factorial(n) for n in range(40)]
    assert fit(seq, 1, 0) is None


def test_apery_recurrence_and_forward_check():
    seq = [apery_a(n) for n in range(30)]
    rec = fit(seq, 2, 2)
    assert rec is not None and rec.verify(seq)
    assert rec.extend(seq, 11) == [apery_a(n) for n in range(30, 41)]


def test_fit_is_scalar_stable():
    seq = [apery_a(n) for n in range(30)]
    assert fit(seq, 2, 2) == fit(seq, 2, 2)


def test_sigma8_recurrence():
    seq = [a_sigma8(n) for n in range(121)]
    rec = fit(seq, 4, 15)
    assert rec is not None
    assert rec.order == 4 and rec.degree == 15
    assert rec.verify(seq)
    assert check_self_duality_symmetry(rec)
    assert rec.extend(seq, 10) == [a_sigma8(n) for n in range(121, 131)]


def test_symmetry_rejects_wrong_order():
    rec = fit([apery_a(n) for n in range(30)], 2, 2)
    with pytest.raises(ValueError):
        check_self_duality_symmetry(rec)


def test_symmetry_negative_control():
    seq = [a_sigma8(n) for n in range(121)]
    rec = fit(seq, 4, 15)
    perturbed = [list(row) for row in rec.coefficients]
    perturbed[1][0] += Fraction(1, 7)
    broken = PolyRecurrence(4, 15, tuple(tuple(row) for row in perturbed))
    assert not check_self_duality_symmetry(broken)
