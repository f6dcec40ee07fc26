"""Hot numeric kernels with optional numba acceleration.

Two implementations of each kernel are kept side by side: an @njit one and a
pure-numpy one.  Which path is active is decided once at import time: numba is
used when it is importable and the environment variable SCHURLAB_NO_NUMBA is
unset/empty.  ``benchmarks/bench_kernels.py`` times the two paths against each
other on representative inputs.
"""

from __future__ import annotations

import os

import numpy as np

_env_off = bool(os.environ.get("SCHURLAB_NO_NUMBA"))

if not _env_off:
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:  # pragma: no cover - depends on environment
        HAS_NUMBA = False
else:
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not _env_off


# ---------------------------------------------------------------------------
# pair_counts: counts[bx, by, g] = #{(x, y) : block(x)=bx, block(y)=by, xy=g}
# This is the inner loop of S-ring verification (convolution constancy) and of
# the atom structure tensor used by the fusion enumerator.
# ---------------------------------------------------------------------------


def _pair_counts_numpy(mul: np.ndarray, block_of: np.ndarray, nblocks: int) -> np.ndarray:
    n = mul.shape[0]
    counts = np.zeros((nblocks, nblocks, n), dtype=np.int64)
    np.add.at(counts, (block_of[:, None], block_of[None, :], mul), 1)
    return counts


def _pair_counts_loops(mul, block_of, nblocks):
    n = mul.shape[0]
    counts = np.zeros((nblocks, nblocks, n), dtype=np.int64)
    for x in range(n):
        bx = block_of[x]
        for y in range(n):
            counts[bx, block_of[y], mul[x, y]] += 1
    return counts


# ---------------------------------------------------------------------------
# refine_signatures: one round of color refinement on the arc-colored complete
# digraph.  Row v of the result is (colors[v], sorted multiset of keys), where
# the key of (v, w) packs colors[w] and both arc colors.  Rows are compared
# lexicographically by the caller to split color classes.
# ---------------------------------------------------------------------------


def _refine_signatures_numpy(col: np.ndarray, colors: np.ndarray) -> np.ndarray:
    n = col.shape[0]
    base = np.int64(col.max()) + 1
    cbase = np.int64(colors.max()) + 1
    keys = (colors[None, :].astype(np.int64) * base + col.astype(np.int64)) * base + col.T
    keys = np.sort(keys, axis=1)
    sig = np.empty((n, n + 1), dtype=np.int64)
    sig[:, 0] = colors * (base * base * cbase)
    sig[:, 1:] = keys
    return sig


def _refine_signatures_loops(col, colors):
    n = col.shape[0]
    base = np.int64(col.max()) + 1
    cbase = np.int64(colors.max()) + 1
    sig = np.empty((n, n + 1), dtype=np.int64)
    for v in range(n):
        for w in range(n):
            sig[v, 1 + w] = (np.int64(colors[w]) * base + col[v, w]) * base + col[w, v]
        row = np.sort(sig[v, 1:])
        sig[v, 1:] = row
        sig[v, 0] = np.int64(colors[v]) * (base * base * cbase)
    return sig


if USE_NUMBA:
    _pair_counts_numba = njit(cache=True)(_pair_counts_loops)
    _refine_signatures_numba = njit(cache=True)(_refine_signatures_loops)
    pair_counts = _pair_counts_numba
    refine_signatures = _refine_signatures_numba
else:
    _pair_counts_numba = None
    _refine_signatures_numba = None
    pair_counts = _pair_counts_numpy
    refine_signatures = _refine_signatures_numpy


def active_path() -> str:
    return "numba" if USE_NUMBA else "numpy"
