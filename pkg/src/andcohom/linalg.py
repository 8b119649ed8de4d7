"""Exact linear algebra over the rationals or a prime field.

Dense matrices are numpy arrays: ``dtype=object`` holding ``int``/``Fraction``
for the rationals, ``int64`` reduced into ``[0, p)`` for GF(p).  Rank of large
sparse systems (the Hom/Ext map) goes through :meth:`Field.sparse_rank`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from . import _kernels

_MAX_PRIME = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Field:
    """An exact field: the rationals (``p is None``) or GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not _is_prime(self.p) or self.p >= _MAX_PRIME:
                raise ValueError(f"field characteristic must be a prime below 2**31, got {self.p}")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """``"rational"`` or ``"fp:<p>"``."""
        text = text.strip().lower()
        if text in ("rational", "q", "qq"):
            return cls()
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field {text!r}; expected 'rational' or 'fp:<prime>'")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "rational" if self.p is None else f"fp:{self.p}"

    # -- scalars -------------------------------------------------------------

    def scalar(self, value):
        if self.p is None:
            if isinstance(value, Fraction):
                return value.numerator if value.denominator == 1 else value
            if isinstance(value, (int, np.integer)):
                return int(value)
            return self.scalar(Fraction(value))
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        return int(value) % self.p

    def inv(self, value):
        if self.p is None:
            return Fraction(1) / value
        return pow(int(value), -1, self.p)

    # -- dense matrices ------------------------------------------------------

    @property
    def dtype(self):
        return object if self.p is None else np.int64

    def zeros(self, m: int, n: int) -> np.ndarray:
        if self.p is None:
            out = np.empty((m, n), dtype=object)
            out.fill(0)
            return out
        return np.zeros((m, n), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for k in range(n):
            out[k, k] = 1
        return out

    def array(self, rows, shape: tuple[int, int] | None = None) -> np.ndarray:
        """Coerce nested sequences (ints, Fractions or ``"p/q"`` strings)."""
        if shape is not None and shape[0] * shape[1] == 0:
            return self.zeros(*shape)
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if m else (shape[1] if shape else 0)
        out = self.zeros(m, n)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("ragged matrix")
            for j, v in enumerate(r):
                out[i, j] = self.scalar(v)
        if shape is not None and out.shape != tuple(shape):
            raise ValueError(f"matrix shape {out.shape} != expected {tuple(shape)}")
        return out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        if self.p is None:
            return a.dot(b)
        if a.shape[1] * (self.p - 1) ** 2 < 2**63:
            return (a @ b) % self.p
        return (a.astype(object).dot(b.astype(object)) % self.p).astype(np.int64)

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a - b if self.p is None else (a - b) % self.p

    def neg(self, a: np.ndarray) -> np.ndarray:
        return -a if self.p is None else (-a) % self.p

    def random_matrix(self, rng: np.random.Generator, m: int, n: int, spread: int = 2) -> np.ndarray:
        """Entries uniform in ``[-spread, spread]`` (reduced mod p when prime)."""
        vals = rng.integers(-spread, spread + 1, size=(m, n))
        if self.p is None:
            out = self.zeros(m, n)
            for i in range(m):
                for j in range(n):
                    out[i, j] = int(vals[i, j])
            return out
        return vals.astype(np.int64) % self.p

    # -- rank ----------------------------------------------------------------

    def rank(self, a: np.ndarray) -> int:
        a = np.asarray(a)
        if a.size == 0:
            return 0
        if self.p is not None:
            return _kernels.rank_mod_p(a, self.p)
        rows = []
        for i in range(a.shape[0]):
            row = {j: a[i, j] for j in range(a.shape[1]) if a[i, j] != 0}
            if row:
                rows.append(row)
        return _sparse_rank_rational(rows)

    def sparse_rank(self, rows: Iterable[Mapping[int, object]], ncols: int) -> int:
        """Rank of a matrix given as dict rows ``{col: value}``."""
        rows = [r for r in rows if r]
        if not rows:
            return 0
        if self.p is None:
            return _sparse_rank_rational([dict(r) for r in rows])
        dense = np.zeros((len(rows), ncols), dtype=np.int64)
        for i, r in enumerate(rows):
            for j, v in r.items():
                dense[i, j] = int(v) % self.p
        return _kernels.rank_mod_p(dense, self.p)

    def is_zero(self, a: np.ndarray) -> bool:
        a = np.asarray(a)
        return a.size == 0 or not np.any(a != 0)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        a, b = np.asarray(a), np.asarray(b)
        return a.shape == b.shape and (a.size == 0 or not np.any(a != b))


RATIONAL = Field()


def _sparse_rank_rational(rows: list[dict]) -> int:
    """Incremental echelon form with pivots normalised to 1; exact in Fraction."""
    pivots: dict[int, dict] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v != 0}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                lead = row[c]
                if lead != 1:
                    inv = Fraction(1) / lead
                    row = {k: _norm(v * inv) for k, v in row.items()}
                pivots[c] = row
                break
            fac = row[c]
            for k, v in piv.items():
                nv = row.get(k, 0) - fac * v
                if nv == 0:
                    row.pop(k, None)
                else:
                    row[k] = _norm(nv)
    return len(pivots)


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def block_diag(field: Field, blocks: list[np.ndarray]) -> np.ndarray:
    m = sum(b.shape[0] for b in blocks)
    n = sum(b.shape[1] for b in blocks)
    out = field.zeros(m, n)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def format_scalar(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
