"""Closed-form binomial sequences, exact residue arithmetic, and the
elementary congruence checkers that back the supercongruence proofs.

Everything is computed by direct summation in exact integer or residue
arithmetic: the checks here serve as test oracles, so they stay independent
of clever identities.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from ._primes import is_prime


def apery_a(n: int) -> int:
    """sum_k C(n,k)^2 C(n+k,k), the zeta(2) sequence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(comb(n, k) ** 2 * comb(n + k, k) for k in range(n + 1))


def apery_b(n: int) -> int:
    """sum_k C(n,k)^2 C(n+k,k)^2, the zeta(3) sequence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


def a_sigma8(n: int) -> int:
    """Constrained quadruple sum over k_i <= n with k1+k2 = k3+k4 of
    prod C(n,k_i) C(n+k_i,k_i); grouped through one self-convolution."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    c = [comb(n, k) * comb(n + k, k) for k in range(n + 1)]
    conv = [0] * (2 * n + 1)
    for i, ci in enumerate(c):
        for j, cj in enumerate(c):
            conv[i + j] += ci * cj
    return sum(x * x for x in conv)


@dataclass(frozen=True)
class ResidueClass:
    """An element of Z/m with m >= 2, supporting ring arithmetic and inversion."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> "ResidueClass":
        if isinstance(other, ResidueClass):
            if other.modulus != self.modulus:
                raise ValueError("modulus mismatch")
            return other
        return ResidueClass(int(other), self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return ResidueClass(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return ResidueClass(self.value - o.value, self.modulus)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return ResidueClass(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ResidueClass(-self.value, self.modulus)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ResidueClass(pow(self.value, e, self.modulus), self.modulus)

    def inverse(self) -> "ResidueClass":
        return ResidueClass(pow(self.value, -1, self.modulus), self.modulus)

    def __int__(self):
        return self.value


def rising_factorial(a, n: int):
    """(a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1; works for ints and residues."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = a ** 0
    for i in range(n):
        result = result * (a + i)
    return result


_harmonic_values = [Fraction(0)]


def harmonic(n: int) -> Fraction:
    """H_n = sum_{j<=n} 1/j as an exact rational, H_0 = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    while len(_harmonic_values) <= n:
        _harmonic_values.append(_harmonic_values[-1] + Fraction(1, len(_harmonic_values)))
    return _harmonic_values[n]


def fraction_mod(x: Fraction, modulus: int) -> int:
    """Reduce an exact rational with invertible denominator to a residue."""
    from math import gcd

    if gcd(x.denominator, modulus) != 1:
        raise ValueError(f"denominator {x.denominator} not invertible mod {modulus}")
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


# ---------------------------------------------------------------------------
# Lemma suite
# ---------------------------------------------------------------------------

def _check_half_factorial_fourth_power(p: int) -> bool:
    # ((p-1)/2)!^4 == 1 (mod p)
    return pow(factorial((p - 1) // 2), 4, p) == 1


def _check_central_binomial(p: int) -> bool:
    # C(p-1, (p-1)/2) == (-1)^((p-1)/2) 2^(2p-2) (mod p^2)
    m = (p - 1) // 2
    p2 = p * p
    lhs = comb(p - 1, m) % p2
    rhs = (-1) ** m * pow(2, 2 * p - 2, p2) % p2
    return lhs == rhs


def _check_fermat_quotient(p: int) -> bool:
    # 2^(p-1) - 1 == p (1 + 1/3 + ... + 1/(p-2)) (mod p^2)
    p2 = p * p
    s = sum(Fraction(1, j) for j in range(1, p - 1, 2))
    return (pow(2, p - 1, p2) - 1) % p2 == p * fraction_mod(s, p2) % p2


def _check_wolstenholme(p: int) -> bool:
    # H_{p-1} == 0 (mod p^2), p > 3
    return fraction_mod(harmonic(p - 1), p * p) == 0


def _check_two_power_harmonic(p: int) -> bool:
    # 2^(2p-2) == 1 - p H_{(p-1)/2} (mod p^2), p > 3
    p2 = p * p
    rhs = (1 - p * fraction_mod(harmonic((p - 1) // 2), p2)) % p2
    return pow(2, 2 * p - 2, p2) == rhs


def _check_pochhammer_square_sum(p: int) -> bool:
    # sum_{k=0}^{p-1} (k+1)_m^2 == -1 (mod p)
    m = (p - 1) // 2
    total = sum(int(rising_factorial(ResidueClass(k + 1, p), m)) ** 2 for k in range(p))
    return total % p == p - 1


def _harmonic_window_residues(p: int) -> list[int]:
    """(H_{m+k} - H_k) mod p for 0 <= k <= m; denominators stay below p."""
    m = (p - 1) // 2
    return [fraction_mod(harmonic(m + k) - harmonic(k), p) for k in range(m + 1)]


def _check_harmonic_quadruple_sum(p: int) -> bool:
    # sum over k_i <= m, sum k_i = p-1 of [prod (k_i+1)_m^2] (H_{m+k4} - H_k4) == 0 (mod p)
    m = (p - 1) // 2
    poch = [int(rising_factorial(ResidueClass(k + 1, p), m)) ** 2 % p for k in range(m + 1)]
    hw = _harmonic_window_residues(p)
    total = 0
    target = p - 1
    for k1 in range(m + 1):
        for k2 in range(m + 1):
            lo = max(0, target - k1 - k2 - m)
            hi = min(m, target - k1 - k2)
            for k3 in range(lo, hi + 1):
                k4 = target - k1 - k2 - k3
                total += poch[k1] * poch[k2] % p * poch[k3] % p * poch[k4] % p * hw[k4]
    return total % p == 0


def _binomial_pair_residues(p: int, modulus: int) -> list[int]:
    m = (p - 1) // 2
    return [comb(m, k) * comb(m + k, k) % modulus for k in range(m + 1)]


def _check_constrained_sum_equivalence(p: int) -> bool:
    # Quadruple sum with sum k_i = p-1 matches the one with k1+k2 = k3+k4 (mod p^2).
    p2 = p * p
    cb = _binomial_pair_residues(p, p2)
    m = (p - 1) // 2
    x = [0] * (2 * m + 1)
    for i, ci in enumerate(cb):
        for j, cj in enumerate(cb):
            x[i + j] = (x[i + j] + ci * cj) % p2
    lhs = sum(x[s] * x[p - 1 - s] for s in range(max(0, p - 1 - 2 * m), min(2 * m, p - 1) + 1)) % p2
    rhs = sum(v * v for v in x) % p2
    return lhs == rhs


def _check_binomial_to_pochhammer(p: int) -> bool:
    # C(m+k,k) == (k+1)_m / m! and C(m,k) C(m+k,k) == (-1)^k ((k+1)_m / m!)^2 (mod p)
    m = (p - 1) // 2
    inv_mfact = pow(factorial(m) % p, -1, p)
    for k in range(m + 1):
        poch = int(rising_factorial(ResidueClass(k + 1, p), m)) * inv_mfact % p
        if comb(m + k, k) % p != poch:
            return False
        if comb(m, k) * comb(m + k, k) % p != (-1) ** k * poch * poch % p:
            return False
    return True


def _check_reflected_binomial(p: int) -> bool:
    # C(p-1-k, m) == (-1)^m C(m+k, k) (mod p)
    m = (p - 1) // 2
    return all(
        comb(p - 1 - k, m) % p == (-1) ** m * comb(m + k, k) % p for k in range(m + 1)
    )


def _check_power_sums(p: int) -> bool:
    # sum_{j=1}^{p-1} j^s == -1 if (p-1) | s else 0 (mod p), for 1 <= s <= 2(p-1)
    for s in range(1, 2 * (p - 1) + 1):
        total = sum(pow(j, s, p) for j in range(1, p)) % p
        expected = p - 1 if s % (p - 1) == 0 else 0
        if total != expected:
            return False
    return True


LEMMA_CHECKS = {
    "half_factorial_fourth_power": (_check_half_factorial_fourth_power, 3),
    "central_binomial_two_power": (_check_central_binomial, 3),
    "fermat_quotient_odd_harmonic": (_check_fermat_quotient, 3),
    "wolstenholme_harmonic": (_check_wolstenholme, 5),
    "two_power_half_harmonic": (_check_two_power_harmonic, 5),
    "pochhammer_square_sum": (_check_pochhammer_square_sum, 3),
    "harmonic_quadruple_sum": (_check_harmonic_quadruple_sum, 3),
    "constrained_sum_equivalence": (_check_constrained_sum_equivalence, 3),
    "binomial_to_pochhammer": (_check_binomial_to_pochhammer, 3),
    "reflected_binomial": (_check_reflected_binomial, 3),
    "power_sums": (_check_power_sums, 3),
}


def lemma_suite(p: int) -> dict[str, bool | None]:
    """Run every elementary congruence check at an odd prime.

    Returns check name -> True/False, or None where the statement needs p > 3
    and p is 3.
    """
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    report: dict[str, bool | None] = {}
    for name, (check, min_p) in LEMMA_CHECKS.items():
        report[name] = check(p) if p >= min_p else None
    return report
