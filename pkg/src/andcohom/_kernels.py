"""Hot integer kernels with a numba path and a pure-numpy fallback.

Set ``ANDCOHOM_DISABLE_NUMBA=1`` to force the numpy implementations (also
used automatically when numba is not importable).  Both paths return
identical results; ``benchmarks/bench_kernels.py`` times them side by side.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("ANDCOHOM_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by environment")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


# ----------------------------------------------------------------------------
# numpy reference implementations


def _rank_mod_p_numpy(a: np.ndarray, p: int) -> int:
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1:, col].copy()
        rows = np.nonzero(below)[0] + rank + 1
        if rows.size:
            a[rows] = (a[rows] - (a[rows, col][:, None] * a[rank][None, :]) % p) % p
        rank += 1
    return rank


def _subadditive_violation_numpy(h: np.ndarray) -> tuple[int, int]:
    n = h.shape[0]
    idx = np.arange(n)
    for i in range(n):
        lhs = h[idx & i]
        bad = np.nonzero(lhs > h[i] + h)[0]
        if bad.size:
            return i, int(bad[0])
    return -1, -1


def _conj_closed_violation_numpy(member: np.ndarray) -> tuple[int, int]:
    # member[k] is True iff k lies in the family C; look for f, g in C with f & g not in C
    n = member.shape[0]
    idx = np.arange(n)
    inside = np.nonzero(member)[0]
    for i in inside:
        bad = np.nonzero(member & ~member[idx & i])[0]
        if bad.size:
            return int(i), int(bad[0])
    return -1, -1


# ----------------------------------------------------------------------------
# numba versions

if HAS_NUMBA:

    @njit(cache=True)
    def _rank_mod_p_numba(a, p):
        m, n = a.shape
        rank = 0
        for col in range(n):
            if rank == m:
                break
            piv = -1
            for r in range(rank, m):
                if a[r, col] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for c in range(n):
                    t = a[rank, c]
                    a[rank, c] = a[piv, c]
                    a[piv, c] = t
            # modular inverse by Fermat
            base = a[rank, col]
            e = p - 2
            inv = 1
            while e > 0:
                if e & 1:
                    inv = (inv * base) % p
                base = (base * base) % p
                e >>= 1
            for c in range(col, n):
                a[rank, c] = (a[rank, c] * inv) % p
            for r in range(rank + 1, m):
                fac = a[r, col]
                if fac != 0:
                    for c in range(col, n):
                        a[r, c] = (a[r, c] - fac * a[rank, c]) % p
            rank += 1
        return rank

    @njit(cache=True)
    def _subadditive_violation_numba(h):
        n = h.shape[0]
        for i in range(n):
            for j in range(n):
                if h[i & j] > h[i] + h[j]:
                    return i, j
        return -1, -1

    @njit(cache=True)
    def _conj_closed_violation_numba(member):
        n = member.shape[0]
        for i in range(n):
            if not member[i]:
                continue
            for j in range(n):
                if member[j] and not member[i & j]:
                    return i, j
        return -1, -1


def rank_mod_p(a: np.ndarray, p: int, use_numba: bool | None = None) -> int:
    """Rank of an integer matrix over GF(p); ``p`` must be below 2**31."""
    a = np.asarray(a)
    if a.size == 0:
        return 0
    if use_numba is None:
        use_numba = HAS_NUMBA
    if use_numba:
        work = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
        return int(_rank_mod_p_numba(work, np.int64(p)))
    return _rank_mod_p_numpy(a, p)


def subadditive_violation(h: np.ndarray, use_numba: bool | None = None) -> tuple[int, int] | None:
    """First pair ``(i, j)`` with ``h[i & j] > h[i] + h[j]``, or None.

    ``h`` is a table indexed by bitmask; values must be integral or float.
    """
    if use_numba is None:
        use_numba = HAS_NUMBA
    fn = _subadditive_violation_numba if use_numba else _subadditive_violation_numpy
    i, j = fn(np.ascontiguousarray(h))
    return None if i < 0 else (int(i), int(j))


def conj_closed_violation(member: np.ndarray, use_numba: bool | None = None) -> tuple[int, int] | None:
    """First pair of members whose AND is not a member, or None."""
    if use_numba is None:
        use_numba = HAS_NUMBA
    fn = _conj_closed_violation_numba if use_numba else _conj_closed_violation_numpy
    i, j = fn(np.ascontiguousarray(member, dtype=np.bool_))
    return None if i < 0 else (int(i), int(j))
