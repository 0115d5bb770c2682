"""Hot numeric kernels with numba-jitted primaries and pure-numpy fallbacks.

Two inner loops dominate desk-scale runtimes: scanning permutations for
convergence during enumeration, and counting points on the Legendre curves
over F_p.  Both work on machine integers, so they carry ``@njit`` versions.
Everything involving arbitrary-precision integers lives elsewhere in plain
Python.

Set ``CELLFORM_NO_NUMBA=1`` to force the numpy fallback path (the two paths
return identical arrays; ``benchmarks/bench_kernels.py`` compares them).
"""
from __future__ import annotations

import itertools
import os

import numpy as np

_FLAG = os.environ.get("CELLFORM_NO_NUMBA", "").strip().lower()
USE_NUMBA = _FLAG not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

_BATCH = 1 << 17


# ---------------------------------------------------------------------------
# Convergence scan
#
# A window of k seats in sigma is "blocking" if its set of values is a cyclic
# interval of 1..N.  sigma is convergent iff no window with 2 <= k <= N-2
# blocks; complementary windows block together, so scanning k <= N//2
# suffices.  Runs of cyclically-adjacent values are counted incrementally as
# the window grows: the window is a cyclic value interval iff one run remains.
# ---------------------------------------------------------------------------

def _convergent_mask_py(batch: np.ndarray) -> np.ndarray:
    rows, n = batch.shape
    kmax = n // 2
    out = np.ones(rows, dtype=np.bool_)
    for r in range(rows):
        perm = [int(v) for v in batch[r]]
        ok = True
        for i in range(n):
            member = bytearray(n + 1)
            runs = 0
            for k in range(1, kmax + 1):
                v = perm[(i + k - 1) % n]
                left = n if v == 1 else v - 1
                right = 1 if v == n else v + 1
                runs += 1 - member[left] - member[right]
                member[v] = 1
                if k >= 2 and runs == 1:
                    ok = False
                    break
            if not ok:
                break
        out[r] = ok
    return out


def _convergent_mask_np(batch: np.ndarray) -> np.ndarray:
    rows, n = batch.shape
    kmax = n // 2
    ridx = np.arange(rows)
    alive = np.ones(rows, dtype=np.bool_)
    member = np.empty((rows, n + 1), dtype=np.int8)
    runs = np.empty(rows, dtype=np.int16)
    for i in range(n):
        member[:] = 0
        runs[:] = 0
        for k in range(1, kmax + 1):
            v = batch[:, (i + k - 1) % n]
            left = np.where(v == 1, n, v - 1)
            right = np.where(v == n, 1, v + 1)
            runs += 1 - member[ridx, left] - member[ridx, right]
            member[ridx, v] = 1
            if k >= 2:
                alive &= runs != 1
    return alive


if USE_NUMBA:

    @njit(cache=True)
    def _convergent_mask_jit(batch):  # pragma: no cover - exercised via wrapper
        rows, n = batch.shape
        kmax = n // 2
        out = np.ones(rows, dtype=np.bool_)
        member = np.zeros(n + 1, dtype=np.uint8)
        for r in range(rows):
            ok = True
            for i in range(n):
                for j in range(n + 1):
                    member[j] = 0
                runs = 0
                for k in range(1, kmax + 1):
                    v = batch[r, (i + k - 1) % n]
                    left = n if v == 1 else v - 1
                    right = 1 if v == n else v + 1
                    runs += 1 - member[left] - member[right]
                    member[v] = 1
                    if k >= 2 and runs == 1:
                        ok = False
                        break
                if not ok:
                    break
            out[r] = ok
        return out


def convergent_mask(batch: np.ndarray) -> np.ndarray:
    """Boolean mask of convergent rows for a (rows, N) batch of permutations."""
    batch = np.ascontiguousarray(batch, dtype=np.int64)
    if USE_NUMBA:
        return _convergent_mask_jit(batch)
    return _convergent_mask_np(batch)


def convergent_permutations(n: int) -> np.ndarray:
    """All convergent permutations of 1..n with first entry 1, as an array.

    Fixing the first entry selects one representative per cyclic rotation of
    seats, which is enough to hit every configuration class.
    """
    rows = []
    pool = tuple(range(2, n + 1))
    it = itertools.permutations(pool)
    while True:
        chunk = list(itertools.islice(it, _BATCH))
        if not chunk:
            break
        batch = np.empty((len(chunk), n), dtype=np.int64)
        batch[:, 0] = 1
        batch[:, 1:] = chunk
        rows.append(batch[convergent_mask(batch)])
    return np.concatenate(rows) if rows else np.empty((0, n), dtype=np.int64)


# ---------------------------------------------------------------------------
# Batch canonicalization under the two-sided dihedral action
#
# Candidates rho1 o sigma o rho2 are compared through a base-(N+1) integer
# encoding, whose numeric order is the lexicographic order on sequences.
# ---------------------------------------------------------------------------

def _dihedral_maps(n: int) -> np.ndarray:
    """The 2n dihedral permutations of the cycle 1..n, as 0-based arrays."""
    maps = np.empty((2 * n, n), dtype=np.int64)
    base = np.arange(n)
    for r in range(n):
        maps[r] = (base + r) % n
        maps[n + r] = (r - base) % n
    return maps


def _encode(batch: np.ndarray) -> np.ndarray:
    n = batch.shape[1]
    weights = (n + 1) ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return batch @ weights


if USE_NUMBA:

    @njit(cache=True)
    def _canonical_keys_jit(batch, maps):  # pragma: no cover
        rows, n = batch.shape
        nmaps = maps.shape[0]
        out = np.empty(rows, dtype=np.int64)
        for r in range(rows):
            best = np.int64(0x7FFFFFFFFFFFFFFF)
            for a in range(nmaps):
                for b in range(nmaps):
                    key = np.int64(0)
                    for i in range(n):
                        v = batch[r, maps[b, i]] - 1
                        key = key * (n + 1) + maps[a, v] + 1
                    if key < best:
                        best = key
            out[r] = best
        return out


def _canonical_keys_np(batch: np.ndarray, maps: np.ndarray) -> np.ndarray:
    rows, n = batch.shape
    best = np.full(rows, np.iinfo(np.int64).max, dtype=np.int64)
    for a in range(maps.shape[0]):
        relabel = maps[a] + 1
        vals = relabel[batch - 1]
        for b in range(maps.shape[0]):
            key = _encode(vals[:, maps[b]])
            np.minimum(best, key, out=best)
    return best


def canonical_keys(batch: np.ndarray) -> np.ndarray:
    """Per-row canonical double-coset key (encoded canonical sequence)."""
    batch = np.ascontiguousarray(batch, dtype=np.int64)
    maps = _dihedral_maps(batch.shape[1])
    if USE_NUMBA:
        return _canonical_keys_jit(batch, maps)
    return _canonical_keys_np(batch, maps)


def decode_key(key: int, n: int) -> tuple[int, ...]:
    """Invert the base-(N+1) sequence encoding."""
    digits = []
    for _ in range(n):
        key, d = divmod(key, n + 1)
        digits.append(d)
    return tuple(reversed(digits))


# ---------------------------------------------------------------------------
# Legendre point counts: a(p, lambda) = -sum_x phi(x (x-1) (x-lambda))
# ---------------------------------------------------------------------------

def _legendre_traces_np(p: int) -> np.ndarray:
    qr = np.zeros(p, dtype=np.int8)
    x = np.arange(1, p, dtype=np.int64)
    qr[(x * x) % p] = 1
    xs = np.arange(p, dtype=np.int64)
    lams = np.arange(2, p, dtype=np.int64)
    f = (xs * (xs - 1))[None, :] * (xs[None, :] - lams[:, None]) % p
    phi = np.where(f == 0, 0, np.where(qr[f] == 1, 1, -1))
    return -phi.sum(axis=1)


if USE_NUMBA:

    @njit(cache=True)
    def _legendre_traces_jit(p):  # pragma: no cover
        qr = np.zeros(p, dtype=np.int8)
        for x in range(1, p):
            qr[(x * x) % p] = 1
        out = np.empty(p - 2, dtype=np.int64)
        for lam in range(2, p):
            s = 0
            for x in range(p):
                f = (x * (x - 1)) % p * ((x - lam) % p) % p
                if f != 0:
                    s += 1 if qr[f] == 1 else -1
            out[lam - 2] = -s
        return out


def legendre_traces(p: int) -> np.ndarray:
    """Traces a(p, lambda) for lambda = 2..p-1 (Hasse bound asserted)."""
    if p < 3:
        raise ValueError("p must be an odd prime >= 3")
    traces = _legendre_traces_jit(p) if USE_NUMBA else _legendre_traces_np(p)
    if traces.size and int(np.max(traces * traces)) > 4 * p:
        raise AssertionError(f"Hasse bound violated at p={p}")
    return traces
