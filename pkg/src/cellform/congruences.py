"""Verification harness for the supercongruence statements.

Each statement compares residues computed along two independent routes
(closed-form binomial sums against modular coefficient sources), so a pass
is meaningful evidence.  Reports are deterministic: cases come out sorted by
their parameters and rerunning yields identical output.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from ._primes import is_prime, odd_primes_in
from .catalog import Catalog
from .configurations import Configuration, canonical_configuration, format_configuration
from .ctengine import leading_coefficients
from .modforms import ETA4_2Z_4Z, ETA6_4Z, ETA12_2Z, eta_qexp, gamma_cm, gamma_eta12_pointcount
from .sequences import a_sigma8, apery_a, apery_b


@dataclass(frozen=True)
class CongruenceCase:
    statement: str
    params: tuple[tuple[str, object], ...]
    lhs: int
    rhs: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "lhs", self.lhs % self.modulus)
        object.__setattr__(self, "rhs", self.rhs % self.modulus)

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "id": self.statement,
            "params": dict(self.params),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "modulus": str(self.modulus),
            "pass": self.passed,
        }


@dataclass
class CongruenceReport:
    cases: list[CongruenceCase] = field(default_factory=list)

    def add(self, case: CongruenceCase) -> None:
        self.cases.append(case)

    @property
    def total(self) -> int:
        return len(self.cases)

    @property
    def failures(self) -> list[CongruenceCase]:
        return [c for c in self.cases if not c.passed]

    @property
    def all_pass(self) -> bool:
        return not self.failures


def _case(statement, params, lhs, rhs, modulus) -> CongruenceCase:
    return CongruenceCase(statement, tuple(params), lhs, rhs, modulus)


def verify_thm1(l: int, p_max: int) -> CongruenceReport:
    """a((p-1)/2)^l against the weight 2l+1 CM coefficient, mod p^2, p >= 5."""
    if l < 1:
        raise ValueError("l must be >= 1")
    k = 2 * l + 1
    report = CongruenceReport()
    for p in odd_primes_in(5, p_max + 1):
        lhs = apery_a((p - 1) // 2) ** l
        rhs = gamma_cm(k, p)
        report.add(_case("THM1", [("l", l), ("p", p)], lhs, rhs, p * p))
    return report


def _half_range_constrained_sum(m: int) -> int:
    """The quadruple sum over 0 <= k_i <= m with k1+k2 = k3+k4 of
    prod C(m,k_i) C(m+k_i,k_i), via one self-convolution."""
    c = [comb(m, k) * comb(m + k, k) for k in range(m + 1)]
    conv = [0] * (2 * m + 1)
    for i, ci in enumerate(c):
        for j, cj in enumerate(c):
            conv[i + j] += ci * cj
    return sum(x * x for x in conv)


def verify_thm2(p_max: int) -> CongruenceReport:
    """Half-range constrained sum against the weight-6 point-count coefficient."""
    report = CongruenceReport()
    for p in odd_primes_in(3, p_max + 1):
        m = (p - 1) // 2
        lhs = _half_range_constrained_sum(m)
        # At n = m the half-range sum is the leading coefficient itself.
        if lhs != a_sigma8(m):
            raise AssertionError(f"half-range sum disagrees with closed form at p={p}")
        rhs = gamma_eta12_pointcount(p)
        report.add(_case("THM2", [("p", p)], lhs, rhs, p * p))
    return report


def verify_ahlgren(p_max: int) -> CongruenceReport:
    """a((p-1)/2) against the weight-3 eta-product coefficient, p >= 5."""
    series = eta_qexp(ETA6_4Z, p_max)
    report = CongruenceReport()
    for p in odd_primes_in(5, p_max + 1):
        report.add(_case("AHLGREN", [("p", p)], apery_a((p - 1) // 2), series[p], p * p))
    return report


def verify_beukers(p_max: int) -> CongruenceReport:
    """b((p-1)/2) against the weight-4 eta-product coefficient, odd p."""
    series = eta_qexp(ETA4_2Z_4Z, p_max)
    report = CongruenceReport()
    for p in odd_primes_in(3, p_max + 1):
        report.add(_case("BEUKERS", [("p", p)], apery_b((p - 1) // 2), series[p], p * p))
    return report


def verify_coster(which: str, p: int, m: int, r: int) -> CongruenceCase:
    """f(m p^r) against f(m p^(r-1)) mod p^(3r), f one of the two Apery sequences."""
    if which not in ("a", "b"):
        raise ValueError("which must be 'a' or 'b'")
    if p < 5 or not is_prime(p):
        raise ValueError("p must be a prime >= 5")
    if m < 1 or r < 1:
        raise ValueError("m and r must be >= 1")
    f = apery_a if which == "a" else apery_b
    statement = "COSTER_A" if which == "a" else "COSTER_B"
    return _case(
        statement,
        [("p", p), ("m", m), ("r", r)],
        f(m * p**r),
        f(m * p ** (r - 1)),
        p ** (3 * r),
    )


def verify_conjecture1(
    c: Configuration | str, p: int, m: int, r: int, catalog: Catalog | None = None
) -> CongruenceCase:
    """Leading coefficients at m p^r versus m p^(r-1), mod p^(3r).

    A recorded verdict is evidence for the supercongruence conjecture, never a
    proof; values come from the constant-term engine (cache-backed).
    """
    if p < 5 or not is_prime(p):
        raise ValueError("p must be a prime >= 5")
    if m < 1 or r < 1:
        raise ValueError("m and r must be >= 1")
    config = c if isinstance(c, Configuration) else canonical_configuration(c)
    terms = leading_coefficients(config, m * p**r, catalog).terms
    return _case(
        "CONJ1",
        [("sigma", format_configuration(config)), ("p", p), ("m", m), ("r", r)],
        terms[m * p**r],
        terms[m * p ** (r - 1)],
        p ** (3 * r),
    )
