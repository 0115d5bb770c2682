from fractions import Fraction
from math import comb

import pytest

from cellform._primes import odd_primes_in
from cellform.sequences import (
    ResidueClass,
    a_sigma8,
    apery_a,
    apery_b,
    fraction_mod,
    harmonic,
    lemma_suite,
    rising_factorial,
)


def test_apery_values():
    assert apery_a(0) == 1 and apery_b(0) == 1
    assert apery_a(1) == 3 and apery_b(1) == 5
    assert apery_a(2) == 19 and apery_b(2) == 73
    assert apery_a(3) == 147


def test_a_sigma8_initial_terms():
    values = [a_sigma8(n) for n in range(6)]
    assert values == [1, 33, 8929, 4124193, 2435948001, 1657775448033]


def test_a_sigma8_matches_direct_quadruple_sum():
    # independent oracle: iterate the constrained quadruple sum literally
    def direct(n):
        total = 0
        for k1 in range(n + 1):
            for k2 in range(n + 1):
                for k3 in range(n + 1):
                    k4 = k1 + k2 - k3
                    if 0 <= k4 <= n:
                        total += (
                            comb(n, k1) * comb(n + k1, k1)
                            * comb(n, k2) * comb(n + k2, k2)
                            * comb(n, k3) * comb(n + k3, k3)
                            * comb(n, k4) * comb(n + k4, k4)
                        )
        return total

    for n in range(7):
        assert a_sigma8(n) == direct(n)


def test_rising_factorial():
    assert rising_factorial(1, 4) == 24
    assert rising_factorial(3, 2) == 12
    assert rising_factorial(7, 0) == 1
    assert int(rising_factorial(ResidueClass(2, 5), 2)) == 1  # 2*3 mod 5
    with pytest.raises(ValueError):
        rising_factorial(2, -1)


def test_residue_class_arithmetic():
    x = ResidueClass(7, 25)
    assert int(x + 20) == 2
    assert int(3 - x) == 21
    assert int(x * x) == 24
    assert int(x ** 2) == 24
    assert int(x.inverse() * x) == 1
    with pytest.raises(ValueError):
        ResidueClass(1, 25) + ResidueClass(1, 49)


def test_harmonic_values():
    assert harmonic(0) == 0
    assert harmonic(2) == Fraction(3, 2)
    assert harmonic(4) == Fraction(25, 12)


def test_fraction_mod_requires_coprime_denominator():
    with pytest.raises(ValueError):
        fraction_mod(Fraction(1, 5), 25)


def test_lemma_suite_p5_all_pass():
    report = lemma_suite(5)
    assert report and all(v is True for v in report.values())


def test_lemma_suite_p3_skips_large_prime_checks():
    report = lemma_suite(3)
    assert report["wolstenholme_harmonic"] is None
    assert report["two_power_half_harmonic"] is None
    others = {k: v for k, v in report.items() if v is not None}
    assert others and all(others.values())


def test_lemma_suite_rejects_composites():
    with pytest.raises(ValueError):
        lemma_suite(9)
    with pytest.raises(ValueError):
        lemma_suite(2)


def test_pochhammer_sum_example_p7():
    # direct value of the square sum at p = 7 is 6, i.e. -1
    total = sum(int(rising_factorial(ResidueClass(k + 1, 7), 3)) ** 2 for k in range(7)) % 7
    assert total == 6
    assert lemma_suite(7)["pochhammer_square_sum"] is True


def test_lemma_suite_all_odd_primes_below_100():
    for p in odd_primes_in(3, 100):
        report = lemma_suite(p)
        bad = [name for name, verdict in report.items() if verdict is False]
        assert not bad, f"p={p}: {bad}"


@pytest.mark.parametrize("f", [apery_a, apery_b])
def test_apery_supercongruence_full_grid(f):
    # both sequences drop m p^(r-1) from m p^r modulo p^(3r) on the whole grid
    for p in (5, 7, 11, 13):
        for m in (1, 2):
            for r in (1, 2):
                modulus = p ** (3 * r)
                assert (f(m * p**r) - f(m * p ** (r - 1))) % modulus == 0
