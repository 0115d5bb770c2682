"""Fourier coefficients of the relevant newforms by three independent routes:
a Gaussian-integer closed form coming from Hecke characters of Q(i), eta
product q-expansions, and Legendre-curve point counts.

The weight-k CM coefficient at an odd prime p is
    (-1)^((x+y-1)(k-1)/2) [(x+iy)^(k-1) + (x-iy)^(k-1)]   for p = x^2+y^2, x odd,
and 0 for p = 3 mod 4.  No floating point appears anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt

import numpy as np

from . import kernels
from ._primes import is_prime


@dataclass(frozen=True)
class TwoSquares:
    p: int
    x: int  # odd
    y: int  # even

    def __post_init__(self):
        if self.x * self.x + self.y * self.y != self.p:
            raise ValueError("x^2 + y^2 != p")
        if self.x % 2 != 1 or self.y % 2 != 0 or self.x < 0 or self.y < 0:
            raise ValueError("need x positive odd and y positive even")


def two_squares(p: int) -> TwoSquares:
    """The unique decomposition p = x^2 + y^2 with x odd, y even, both positive."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p % 4 != 1:
        raise ValueError(f"no two-squares decomposition: {p} != 1 (mod 4)")
    for x in range(1, isqrt(p) + 1, 2):
        y2 = p - x * x
        y = isqrt(y2)
        if y * y == y2:
            return TwoSquares(p, x, y)
    raise AssertionError(f"no decomposition found for prime {p} = 1 (mod 4)")


def _gauss_power(x: int, y: int, e: int) -> tuple[int, int]:
    """(x + iy)^e over exact integer pairs."""
    re, im = 1, 0
    bre, bim = x, y
    while e:
        if e & 1:
            re, im = re * bre - im * bim, re * bim + im * bre
        bre, bim = bre * bre - bim * bim, 2 * bre * bim
        e >>= 1
    return re, im


def gamma_cm(k: int, p: int) -> int:
    """Prime coefficient of the weight-k CM newform attached to Q(i)."""
    if k < 2:
        raise ValueError("weight must be >= 2")
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if p % 4 == 3:
        return 0
    ts = two_squares(p)
    re, _ = _gauss_power(ts.x, ts.y, k - 1)
    sign = -1 if ((ts.x + ts.y - 1) * (k - 1) // 2) % 2 else 1
    return sign * 2 * re


def gamma_cm_power_identity(k: int, m: int, p: int) -> bool:
    """m-th powers of prime coefficients expand over higher weights with
    p-power binomial weights, plus a central term when p = 1 (mod 4), m even."""
    if k < 2 or m < 1:
        raise ValueError("need k >= 2 and m >= 1")
    lhs = gamma_cm(k, p) ** m
    rhs = sum(
        comb(m, t) * p ** (t * (k - 1)) * gamma_cm((m - 2 * t) * (k - 1) + 1, p)
        for t in range((m - 1) // 2 + 1)
    )
    if p % 4 == 1 and m % 2 == 0:
        rhs += comb(m, m // 2) * p ** ((m // 2) * (k - 1))
    return lhs == rhs


# ---------------------------------------------------------------------------
# Eta products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EtaProductSpec:
    """prod_i eta(m_i z)^{e_i}; the leading q-power sum(m_i e_i)/24 must be integral."""

    factors: tuple[tuple[int, int], ...]

    @property
    def leading_power(self) -> int:
        total = sum(m * e for m, e in self.factors)
        if total % 24 != 0 or total <= 0:
            raise ValueError("leading q-power must be a positive integer")
        return total // 24

    def label(self) -> str:
        return "*".join(f"eta({m}z)^{e}" for m, e in self.factors)


ETA12_2Z = EtaProductSpec(((2, 12),))      # weight 6, level 4
ETA6_4Z = EtaProductSpec(((4, 6),))        # weight 3, level 16
ETA4_2Z_4Z = EtaProductSpec(((2, 4), (4, 4)))  # weight 4, level 8


@dataclass
class CoefficientSeries:
    coefficients: list[int]  # index n holds the q^n coefficient
    source: str

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)


def _euler_factor_power(scale: int, exponent: int, length: int) -> list[int]:
    """Truncated prod_{j>=1} (1 - q^(scale*j))^exponent as integer coefficients."""
    prod = [0] * length
    prod[0] = 1
    for _ in range(exponent):
        for j in range(1, (length - 1) // scale + 1):
            step = scale * j
            for i in range(length - 1, step - 1, -1):
                prod[i] -= prod[i - step]
    return prod


def eta_qexp(spec: EtaProductSpec, n_max: int) -> CoefficientSeries:
    """Exact integer q-expansion of an eta product up to q^n_max."""
    shift = spec.leading_power
    length = max(n_max + 1 - shift, 1)
    prod = [0] * length
    prod[0] = 1
    for scale, exponent in spec.factors:
        part = _euler_factor_power(scale, exponent, length)
        new = [0] * length
        for i, a in enumerate(prod):
            if a:
                for j in range(length - i):
                    if part[j]:
                        new[i + j] += a * part[j]
        prod = new
    coeffs = [0] * (n_max + 1)
    for i, a in enumerate(prod):
        if shift + i <= n_max:
            coeffs[shift + i] = a
    return CoefficientSeries(coeffs, spec.label())


# ---------------------------------------------------------------------------
# Legendre point counts
# ---------------------------------------------------------------------------

def legendre_trace(p: int, lam: int) -> int:
    """a(p, lambda) = p + 1 - #E_lambda(F_p) for y^2 = x(x-1)(x-lambda)."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    lam %= p
    if lam in (0, 1):
        raise ValueError("lambda must avoid 0 and 1")
    half = (p - 1) // 2
    total = 0
    for x in range(p):
        f = x * (x - 1) % p * (x - lam) % p
        if f:
            total += 1 if pow(f, half, p) == 1 else -1
    a = -total
    if a * a > 4 * p:
        raise AssertionError(f"Hasse bound violated: |{a}| > 2 sqrt({p})")
    return a


def legendre_traces(p: int) -> np.ndarray:
    """All a(p, lambda) for lambda = 2..p-1, through the batch kernel."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    return kernels.legendre_traces(p)


def gamma_eta12_pointcount(p: int) -> int:
    """Weight-6 prime coefficient from quartic moments of the Legendre traces."""
    traces = legendre_traces(p)
    quartic = int(np.sum(traces.astype(object) ** 4)) if traces.size else 0
    return 2 * p**3 - 4 * p**2 - 9 * p - 3 - quartic
