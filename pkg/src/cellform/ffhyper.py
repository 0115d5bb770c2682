"""Multiplicative character tables over F_p and finite-field hypergeometric
sums restricted to quadratic/trivial parameters.

The character sums are evaluated over complex floats with an explicitly
tracked worst-case error bound and then rounded onto the lattice of integer
multiples of p^-(n+1); a bound exceeding half the lattice spacing raises
PrecisionError rather than risking a silent mis-rounding.  The Legendre
point-count route provides an exact independent value for the 2F1 case.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from ._primes import is_prime
from .modforms import legendre_trace
from .sequences import ResidueClass, fraction_mod, harmonic

_EPS = 2.3e-16  # one ulp of double arithmetic, used per tracked operation


class PrecisionError(ArithmeticError):
    """Tracked floating error too large to round a character sum safely."""


@dataclass(frozen=True)
class CharacterTable:
    """Discrete logarithms on F_p^* over a fixed primitive root."""

    p: int
    generator: int
    dlog: tuple[int, ...]  # index x in 1..p-1 at dlog[x]; dlog[0] unused

    def char_exponent(self, chi_index: int, x: int) -> int | None:
        """Exponent t with chi(x) = zeta_(p-1)^t, or None when x = 0."""
        x %= self.p
        if x == 0:
            return None
        return chi_index * self.dlog[x] % (self.p - 1)


def _factorize(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def build_table(p: int) -> CharacterTable:
    """Find the least primitive root mod p and tabulate discrete logs."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    prime_factors = _factorize(p - 1)
    g = None
    for cand in range(2, p):
        if all(pow(cand, (p - 1) // q, p) != 1 for q in prime_factors):
            g = cand
            break
    assert g is not None
    dlog = [0] * p
    acc = 1
    for e in range(p - 1):
        dlog[acc] = e
        acc = acc * g % p
    return CharacterTable(p, g, tuple(dlog))


# ---------------------------------------------------------------------------
# Tracked complex arithmetic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Tracked:
    value: complex
    err: float

    def __add__(self, other: "_Tracked") -> "_Tracked":
        v = self.value + other.value
        return _Tracked(v, self.err + other.err + _EPS * abs(v))

    def __mul__(self, other: "_Tracked") -> "_Tracked":
        v = self.value * other.value
        err = (
            abs(self.value) * other.err
            + abs(other.value) * self.err
            + self.err * other.err
            + _EPS * abs(v)
        )
        return _Tracked(v, err)

    def scale(self, c: float) -> "_Tracked":
        v = self.value * c
        return _Tracked(v, self.err * abs(c) + _EPS * abs(v))


def _roots_of_unity(order: int) -> list[_Tracked]:
    return [_Tracked(cmath.exp(2j * cmath.pi * t / order), 2 * _EPS) for t in range(order)]


def orthogonality_check(p: int, chi_index: int) -> bool:
    """Verify sum_x chi(x) = p-1 for the trivial character and 0 otherwise."""
    table = build_table(p)
    roots = _roots_of_unity(p - 1)
    total = _Tracked(0j, 0.0)
    for x in range(1, p):
        total = total + roots[table.char_exponent(chi_index, x) % (p - 1)]
    expected = p - 1 if chi_index % (p - 1) == 0 else 0
    if total.err > 0.25:
        raise PrecisionError("orthogonality sum error bound too large")
    return abs(total.value - expected) <= total.err + 0.25


@dataclass(frozen=True)
class HypValue:
    """Exact value numerator / p^p_power."""

    numerator: int
    p_power: int
    p: int

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.p**self.p_power)

    def __eq__(self, other) -> bool:
        if isinstance(other, HypValue):
            if self.p != other.p:
                return NotImplemented
            return self.as_fraction() == other.as_fraction()
        return self.as_fraction() == other

    def __hash__(self):
        return hash((self.p, self.as_fraction()))


def _phi_index(p: int) -> int:
    return (p - 1) // 2


def _greene_binomials(table: CharacterTable) -> list[_Tracked]:
    """C(phi*chi, chi) for every chi, as tracked complex values.

    C(A, B) = B(-1)/p sum_x A(x) conj(B)(1-x); terms with a zero character
    value drop out.
    """
    p = table.p
    order = p - 1
    roots = _roots_of_unity(order)
    phi = _phi_index(p)
    dlog_m1 = table.dlog[p - 1]  # dlog(-1)
    out = []
    for j in range(order):
        total = _Tracked(0j, 0.0)
        a_idx = (phi + j) % order
        for x in range(2, p):  # x=0 kills A(x); x=1 kills conj(B)(1-x)
            e = (a_idx * table.dlog[x] - j * table.dlog[(1 - x) % p]) % order
            total = total + roots[e]
        sign = roots[j * dlog_m1 % order]
        out.append((sign * total).scale(1.0 / p))
    return out


def hyp_greene(p: int, n_upper: int, x: int, table: CharacterTable | None = None) -> HypValue:
    """(n+1)F(n) at x with all upper parameters quadratic and lower trivial.

    Evaluates p/(p-1) sum_chi C(phi chi, chi)^(n+1) chi(x) and rounds to the
    nearest multiple of p^-(n+1); raises PrecisionError when the tracked
    bound crosses half that spacing.
    """
    if not 1 <= n_upper <= 4:
        raise ValueError("supported range is 2F1 through 5F4")
    if table is None:
        table = build_table(p)
    p = table.p
    x %= p
    order = p - 1
    roots = _roots_of_unity(order)
    binoms = _greene_binomials(table)
    total = _Tracked(0j, 0.0)
    for j in range(order):
        ex = table.char_exponent(j, x)
        if ex is None:
            continue  # chi(0) = 0 for every chi, including the trivial one
        term = binoms[j]
        for _ in range(n_upper):
            term = term * binoms[j]
        total = total + term * roots[ex]
    total = total.scale(p / (p - 1))

    spacing = Fraction(1, p ** (n_upper + 1))
    scaled = total.value.real / float(spacing)
    numerator = round(scaled)
    err_budget = total.err * p ** (n_upper + 1)
    if err_budget >= 0.5 or abs(total.value.imag) > total.err:
        raise PrecisionError(
            f"cannot round {total.value} +/- {total.err} onto the p^-{n_upper + 1} lattice"
        )
    if abs(scaled - numerator) > err_budget:
        raise PrecisionError("rounded value drifts outside the tracked bound")
    return HypValue(numerator, n_upper + 1, p)


def phi_at_minus_one(p: int) -> int:
    return 1 if p % 4 == 1 else -1


def hyp2f1_exact(p: int, lam: int) -> HypValue:
    """2F1 at lambda through the elliptic point count: -phi(-1) a(p,lambda) / p."""
    lam %= p
    if lam in (0, 1):
        raise ValueError("lambda must avoid 0 and 1")
    a = legendre_trace(p, lam)
    return HypValue(-phi_at_minus_one(p) * a, 1, p)


def teichmuller(x: int, p: int, n: int) -> ResidueClass:
    """The multiplicative lift of x mod p to Z/p^n: x^(p^(n-1))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= x < p:
        raise ValueError("x must lie in 0..p-1")
    modulus = p**n
    return ResidueClass(pow(x, p ** (n - 1), modulus), modulus)


def truncated_2f1_reference(p: int, lam: int) -> ResidueClass:
    """Exact residue the truncated sum is congruent to: -phi(-1) phi(-lam) p 2F1(1/lam).

    The extra phi(-1) relative to the bare -phi(-lam) p 2F1(1/lam) lift is
    forced by the lambda = 1 special value together with
    sum_j (-1)^j C(m,j) C(m+j,j) = (-1)^m; it is invisible for p = 1 (mod 4)
    and cancels entirely in fourth powers.
    """
    lam %= p
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    p2 = p * p
    sign = -phi_at_minus_one(p) * _phi(p, (-lam) % p)
    if lam == 1:
        p_2f1 = -phi_at_minus_one(p)  # p * 2F1(1)
    else:
        p_2f1 = hyp2f1_exact(p, pow(lam, -1, p)).numerator
    return ResidueClass(sign * p_2f1, p2)


def _phi(p: int, x: int) -> int:
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


def truncated_2f1_mod_p2(p: int, lam: int) -> ResidueClass:
    """Truncated half-range sum congruent to -phi(-lambda) p 2F1(1/lambda) mod p^2.

    (p+1) sum_j C(m,j) C(m+j,j) (-1)^j (1 + 2jp (H_{m+j} - H_j)) omega(lambda)^j
    with m = (p-1)/2 and omega the multiplicative lift mod p^2.
    """
    from math import comb

    if p < 5 or not is_prime(p):
        raise ValueError("p must be a prime >= 5")
    lam %= p
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    p2 = p * p
    m = (p - 1) // 2
    omega = int(teichmuller(lam, p, 2))
    total = 0
    om_pow = 1
    for j in range(m + 1):
        hw = fraction_mod(harmonic(m + j) - harmonic(j), p)
        term = comb(m, j) * comb(m + j, j) % p2
        term = term * (1 + 2 * j * p * hw) % p2
        if j % 2:
            term = -term
        total = (total + term * om_pow) % p2
        om_pow = om_pow * omega % p2
    return ResidueClass((p + 1) * total, p2)
