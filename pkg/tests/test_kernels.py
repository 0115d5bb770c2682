import itertools

import numpy as np
import pytest

from cellform import kernels
from cellform.configurations import canonical_configuration, is_convergent
from cellform.modforms import legendre_trace


def _perm_batch(n):
    rows = list(itertools.permutations(range(1, n + 1)))
    return np.array(rows, dtype=np.int64)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_convergence_paths_agree(n):
    batch = _perm_batch(n)
    np_mask = kernels._convergent_mask_np(batch)
    py_mask = kernels._convergent_mask_py(batch)
    assert np.array_equal(np_mask, py_mask)
    if kernels.USE_NUMBA:
        assert np.array_equal(kernels._convergent_mask_jit(batch), np_mask)
    # agree with the reference scalar test
    expected = np.array([is_convergent(tuple(r)) for r in batch])
    assert np.array_equal(np_mask, expected)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_canonical_key_paths_agree(n):
    batch = _perm_batch(n)[:720]
    maps = kernels._dihedral_maps(n)
    np_keys = kernels._canonical_keys_np(batch, maps)
    if kernels.USE_NUMBA:
        assert np.array_equal(kernels._canonical_keys_jit(batch, maps), np_keys)
    # keys decode to the canonical double-coset representative
    for row, key in zip(batch[:60], np_keys[:60]):
        assert kernels.decode_key(int(key), n) == canonical_configuration(tuple(row)).sigma


@pytest.mark.parametrize("p", [3, 5, 7, 13, 101])
def test_legendre_paths_agree(p):
    np_traces = kernels._legendre_traces_np(p)
    if kernels.USE_NUMBA:
        assert np.array_equal(kernels._legendre_traces_jit(p), np_traces)
    assert np.array_equal(kernels.legendre_traces(p), np_traces)
    for lam in range(2, min(p, 9)):
        assert legendre_trace(p, lam) == np_traces[lam - 2]


def test_run_merge_counts_down():
    # (1,3,2,...): the window {1,3} has two runs until 2 joins them; a
    # miscounted merge would leave this row marked convergent.
    batch = np.array([[1, 3, 2, 4, 5], [1, 3, 5, 2, 4]], dtype=np.int64)
    assert kernels._convergent_mask_py(batch).tolist() == [False, True]
    assert kernels._convergent_mask_np(batch).tolist() == [False, True]
    if kernels.USE_NUMBA:
        assert kernels._convergent_mask_jit(batch).tolist() == [False, True]


def test_decode_key_inverts_encoding():
    batch = _perm_batch(5)[:40]
    keys = kernels._encode(batch)
    for row, key in zip(batch, keys):
        assert kernels.decode_key(int(key), 5) == tuple(row)


def test_env_flag_selects_fallback(monkeypatch):
    import importlib
    import subprocess
    import sys

    code = (
        "import cellform.kernels as k; "
        "assert not k.USE_NUMBA; "
        "import numpy as np; "
        "print(int(k.convergent_mask(np.array([[1,3,5,2,4],[1,2,3,4,5]])).tolist()[0]))"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"PATH": "/usr/bin:/bin", "CELLFORM_NO_NUMBA": "1"},
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "1"
