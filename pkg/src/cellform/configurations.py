"""Dihedral structures and configurations on {1..N}.

A dihedral structure is a seating order up to rotation and reflection; a
configuration is a pair of dihedral structures up to simultaneous relabeling,
stored here through the representative [id, sigma] and canonicalized as the
lexicographic minimum over the two-sided dihedral action.  The module also
provides the convergence test, catalog enumeration, duality, and the partial
star multiplication of pairs of dihedral structures.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import kernels


class NotMultipliableError(ValueError):
    """Raised when a star product is requested along an invalid site."""


def _check_permutation(seq) -> tuple[int, ...]:
    seq = tuple(int(x) for x in seq)
    n = len(seq)
    if n == 0 or sorted(seq) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {seq}")
    return seq


def dihedral_images(seq: tuple[int, ...]):
    """All 2N rotations and reflections of a sequence."""
    n = len(seq)
    for s in (seq, seq[::-1]):
        for r in range(n):
            yield s[r:] + s[:r]


def _value_maps(n: int) -> list[tuple[int, ...]]:
    """Dihedral relabelings of the value cycle 1..n, as 1-indexed lookup tuples."""
    maps = []
    for r in range(n):
        maps.append((0,) + tuple((v - 1 + r) % n + 1 for v in range(1, n + 1)))
        maps.append((0,) + tuple((r - (v - 1)) % n + 1 for v in range(1, n + 1)))
    return maps


@dataclass(frozen=True, order=True)
class DihedralStructure:
    """A cyclic sequence up to rotation/reflection, held by its lex-least linear form."""

    order: tuple[int, ...]

    def __post_init__(self):
        seq = _check_permutation(self.order)
        object.__setattr__(self, "order", min(dihedral_images(seq)))

    def __len__(self) -> int:
        return len(self.order)


def canonical_dihedral(seq) -> DihedralStructure:
    """Lexicographically least of the 2N dihedral images of a permutation."""
    return DihedralStructure(tuple(seq))


@dataclass(frozen=True, order=True)
class Configuration:
    """The double coset of sigma, represented by [id, sigma] with sigma canonical."""

    n_points: int
    sigma: tuple[int, ...]
    canonical: bool = field(default=True, compare=False)

    def __str__(self) -> str:
        return format_configuration(self)


def format_configuration(c: Configuration) -> str:
    """One-line comma-separated form, e.g. '8,3,6,1,4,7,2,5'."""
    return ",".join(str(v) for v in c.sigma)


def parse_configuration(text: str) -> Configuration:
    return canonical_configuration(int(t) for t in text.strip().split(","))


def canonical_configuration(sigma) -> Configuration:
    """Canonical double-coset representative of [id, sigma].

    Minimizes rho1 o sigma o rho2 over dihedral rho1 (value relabeling) and
    rho2 (seat rotation/reflection); equal configurations map to equal outputs.
    """
    seq = _check_permutation(sigma)
    n = len(seq)
    vmaps = _value_maps(n)
    best = None
    for image in dihedral_images(seq):
        for vm in vmaps:
            cand = tuple(vm[x] for x in image)
            if best is None or cand < best:
                best = cand
    return Configuration(n, best)


def _as_sigma(c) -> tuple[int, ...]:
    return c.sigma if isinstance(c, Configuration) else _check_permutation(c)


def coset_images(sigma) -> list[tuple[int, ...]]:
    """All distinct representatives rho1 o sigma o rho2 of the double coset."""
    seq = _as_sigma(sigma)
    vmaps = _value_maps(len(seq))
    out = {tuple(vm[x] for x in image) for image in dihedral_images(seq) for vm in vmaps}
    return sorted(out)


def inverse_permutation(seq: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(seq)
    for i, v in enumerate(seq):
        inv[v - 1] = i + 1
    return tuple(inv)


def dual(c: Configuration) -> Configuration:
    """The configuration of sigma^{-1}; an involution on configurations."""
    return canonical_configuration(inverse_permutation(_as_sigma(c)))


def is_convergent(sigma) -> bool:
    """True iff no k-set (2 <= k <= N-2) is cyclically consecutive in both
    the natural order and sigma.

    Windows of sigma are grown one seat at a time while counting runs of
    cyclically-adjacent values; a window blocks when one run remains.
    """
    seq = _as_sigma(sigma) if isinstance(sigma, Configuration) else _check_permutation(sigma)
    n = len(seq)
    if n < 5:
        raise ValueError("convergence is defined for N >= 5")
    for i in range(n):
        member = bytearray(n + 1)
        runs = 0
        for k in range(1, n - 1):
            v = seq[(i + k - 1) % n]
            left = n if v == 1 else v - 1
            right = 1 if v == n else v + 1
            runs += 1 - member[left] - member[right]
            member[v] = 1
            if k >= 2 and runs == 1:
                return False
    return True


# ---------------------------------------------------------------------------
# Star multiplication
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultiplicationSite:
    """Gluing data: s lives in the first factor's ground set, t in the second's."""

    s: tuple[int, int, int]
    t: tuple[int, int, int]


def multiplication_triples(delta: DihedralStructure, delta_prime: DihedralStructure):
    """Triples (t1,t2,t3) consecutive in delta (t2 middle) with t1,t3 adjacent
    in delta_prime; the pair (delta, delta_prime) is multipliable along these."""
    cyc = delta.order
    n = len(cyc)
    adj = set()
    dp = delta_prime.order
    for i in range(len(dp)):
        a, b = dp[i], dp[(i + 1) % len(dp)]
        adj.add((a, b))
        adj.add((b, a))
    triples = []
    for i in range(n):
        t1, t2, t3 = cyc[i], cyc[(i + 1) % n], cyc[(i + 2) % n]
        if (t1, t3) in adj:
            triples.append((t1, t2, t3))
            triples.append((t3, t2, t1))
    return triples


def _orient_triple(cyc: tuple[int, ...], t1: int, t2: int, t3: int) -> tuple[int, ...]:
    """Traversal starting (t1, t2, t3); requires the triple consecutive with t2 middle."""
    n = len(cyc)
    i = cyc.index(t2)
    left, right = cyc[(i - 1) % n], cyc[(i + 1) % n]
    if {left, right} != {t1, t3}:
        raise NotMultipliableError(f"triple ({t1},{t2},{t3}) not consecutive in {cyc}")
    if left == t1:
        return tuple(cyc[(i - 1 + j) % n] for j in range(n))
    return tuple(cyc[(i + 1 - j) % n] for j in range(n))


def _orient_edge(cyc: tuple[int, ...], t1: int, t3: int) -> tuple[int, ...]:
    """Traversal starting (t1, t3); requires t1, t3 adjacent."""
    n = len(cyc)
    i = cyc.index(t1)
    if cyc[(i + 1) % n] == t3:
        return tuple(cyc[(i + j) % n] for j in range(n))
    if cyc[(i - 1) % n] == t3:
        return tuple(cyc[(i - j) % n] for j in range(n))
    raise NotMultipliableError(f"pair ({t1},{t3}) not adjacent in {cyc}")


def _glue(consec: tuple[int, ...], t: tuple[int, int, int], adj: tuple[int, ...]) -> tuple[int, ...]:
    """Unique shuffle of two cyclic sequences sharing exactly the triple t.

    consec carries (t1,t2,t3) consecutively, adj carries the edge t1-t3; the
    complementary arc of consec is spliced into that edge.
    """
    c = _orient_triple(consec, *t)
    d = _orient_edge(adj, t[0], t[2])
    arc = c[3:]
    return (t[0],) + tuple(reversed(arc)) + d[1:]


def star_product_pair(alpha_pair, beta_pair, site: MultiplicationSite, rest_order=None):
    """Raw star product (gamma, gamma') on the glued ground set.

    The first factor's ground set X is identified into Z = {1..M+N-3}: s_i maps
    to t_i and the remaining N-3 elements map, in increasing order by default,
    to M+1, M+2, ...; rest_order overrides that order (the resulting
    configuration does not depend on the choice).
    """
    alpha, alpha_p = alpha_pair
    beta, beta_p = beta_pair
    s, t = tuple(site.s), tuple(site.t)
    if len(set(s)) != 3 or len(set(t)) != 3:
        raise NotMultipliableError("site triples must have three distinct elements")
    n, m = len(alpha), len(beta)

    rest = [x for x in range(1, n + 1) if x not in s]
    if rest_order is not None:
        if sorted(rest_order) != sorted(rest):
            raise ValueError("rest_order must permute the non-site elements")
        rest = list(rest_order)
    fmap = {s[i]: t[i] for i in range(3)}
    for j, x in enumerate(rest):
        fmap[x] = m + 1 + j
    a = tuple(fmap[x] for x in alpha.order)
    a_p = tuple(fmap[x] for x in alpha_p.order)

    # (alpha, alpha') multipliable along s; the dual (beta', beta) along t.
    gamma = _glue(a, t, beta.order)
    gamma_p = _glue(beta_p.order, t, a_p)
    return gamma, gamma_p


def multiply(alpha_pair, beta_pair, site: MultiplicationSite, rest_order=None) -> Configuration:
    """Star product as a configuration (sign ambiguities never surface here)."""
    gamma, gamma_p = star_product_pair(alpha_pair, beta_pair, site, rest_order)
    tau = {g: i + 1 for i, g in enumerate(gamma)}
    return canonical_configuration(tau[g] for g in gamma_p)


def apery_power_sigma(m: int) -> tuple[int, ...]:
    """Literal permutation of the 2M+1 point family whose leading coefficients
    are the (M-1)-st power of the zeta(2) Apery numbers."""
    if m < 2:
        raise ValueError("family is defined for M >= 2")
    widths = list(range(m - 1, 0, -1)) + list(range(1, m))
    tail = [m + (w if i % 2 == 0 else -w) for i, w in enumerate(widths)]
    return tuple([2 * m, m, 2 * m + 1] + tail)


def apery_power_family(m: int) -> Configuration:
    return canonical_configuration(apery_power_sigma(m))


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

@dataclass
class EnumerationResult:
    n_points: int
    configurations: list[Configuration]
    count: int
    count_dual_identified: int


def enumerate_convergent(n: int) -> EnumerationResult:
    """All convergent configurations on {1..n}, with counts under both
    conventions (dual pairs distinct / identified).

    Desk-scale up to n = 10 or so; the batch kernels do the heavy scanning.
    """
    if n < 5:
        raise ValueError("enumeration needs N >= 5")
    survivors = kernels.convergent_permutations(n)
    keys = np.unique(kernels.canonical_keys(survivors)) if len(survivors) else np.array([], dtype=np.int64)
    configs = [Configuration(n, kernels.decode_key(int(k), n)) for k in keys]
    seen: set[tuple[int, ...]] = set()
    pairs = 0
    for c in configs:
        if c.sigma in seen:
            continue
        d = dual(c).sigma
        seen.add(c.sigma)
        seen.add(d)
        pairs += 1
    return EnumerationResult(n, configs, len(configs), pairs)


def enumerate_convergent_reference(n: int) -> list[Configuration]:
    """Plain-Python enumeration, for cross-checking the kernels at small N."""
    found = set()
    for suffix in itertools.permutations(range(2, n + 1)):
        seq = (1,) + suffix
        if is_convergent(seq):
            found.add(canonical_configuration(seq).sigma)
    return [Configuration(n, s) for s in sorted(found)]
