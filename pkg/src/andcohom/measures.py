"""Formal AND measures and the size/depth bounds they give.

A formal AND measure is ``h: B^S -> Q>=0`` with ``h(f & g) <= h(f) + h(g)``.
By induction on formula size, ``size(f) >= h(f) / max_i h(f_i)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .boolfun import DEFAULT_SIZE_LIMIT, BoolFun, GroundSet
from .freecat import CubeCat, Path, closed_complement, enumerate_paths, in_hom_z
from .setcover import INFINITE, AndInstance, build_program

EXHAUSTIVE_LIMIT = 12


class NegationAsymmetry(ValueError):
    def __init__(self, witness: BoolFun, a, b):
        super().__init__(f"h({witness}) = {a} != h(~{witness}) = {b}")
        self.witness = witness


class Measure:
    """A lazily evaluated, memoised map B^S -> Q>=0.

    The memo table is keyed by canonical index and owned by the instance;
    share a measure across threads only after :meth:`table` has filled it.
    """

    def __init__(self, ground: GroundSet, evaluator: Callable[[BoolFun], object], name: str = "h"):
        self.ground = ground
        self._eval = evaluator
        self._memo: dict[int, Fraction] = {}
        self.name = name

    @classmethod
    def from_table(cls, ground: GroundSet, values: Sequence, name: str = "table") -> "Measure":
        values = [Fraction(v) for v in values]
        if len(values) != 1 << len(ground):
            raise ValueError("table must have one value per element of B^S")
        return cls(ground, lambda f: values[f.index], name)

    def __call__(self, f: BoolFun) -> Fraction:
        if f.ground != self.ground:
            raise ValueError("function lives on another ground set")
        v = self._memo.get(f.index)
        if v is None:
            v = Fraction(self._eval(f))
            if v < 0:
                raise ValueError(f"{self.name}({f}) = {v} is negative")
            self._memo[f.index] = v
        return v

    def table(self, limit: int = DEFAULT_SIZE_LIMIT) -> list[Fraction]:
        return [self(f) for f in self.ground.all_functions(limit)]

    def __add__(self, other: "Measure") -> "Measure":
        return combine([(1, self), (1, other)])

    def __repr__(self) -> str:
        return f"Measure({self.name}, |S|={len(self.ground)})"


def combine(terms: Iterable[tuple[object, Measure]]) -> Measure:
    """Non-negative linear combination ``sum c_k h_k``."""
    terms = [(Fraction(c), h) for c, h in terms]
    if not terms:
        raise ValueError("empty combination")
    if any(c < 0 for c, _ in terms):
        raise ValueError("coefficients must be non-negative")
    ground = terms[0][1].ground
    return Measure(ground, lambda f: sum(c * h(f) for c, h in terms), name="combination")


def zero_measure(ground: GroundSet) -> Measure:
    return Measure(ground, lambda f: 0, name="zero")


def linear_measure(ground: GroundSet, A: Mapping[str, object]) -> Measure:
    """``h(g) = sum_s A_s (1 - g(s))``."""
    A = {s: Fraction(A.get(s, 0)) for s in ground.names}
    return Measure(ground, lambda g: sum(a for s, a in A.items() if not g(s)), name="linear")


def _integer_table(values: Sequence[Fraction]) -> np.ndarray | None:
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in values]
    if ints and max(ints) >= 2**62:
        return None
    return np.array(ints, dtype=np.int64)


@dataclass(frozen=True)
class MeasureCheck:
    ok: bool
    witness: tuple[BoolFun, BoolFun] | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_and_measure(h: Measure, domain: Iterable[BoolFun] | None = None) -> MeasureCheck:
    """Subadditivity over all pairs of ``domain`` (default: all of B^S)."""
    ground = h.ground
    if domain is None:
        if len(ground) > EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive check needs |S| <= {EXHAUSTIVE_LIMIT}")
        values = h.table()
        tab = _integer_table(values)
        if tab is not None:
            bad = _kernels.subadditive_violation(tab)
            if bad is None:
                return MeasureCheck(True)
            return MeasureCheck(False, (BoolFun(ground, bad[0]), BoolFun(ground, bad[1])))
        domain = ground.all_functions()
    dom = list(domain)
    for f in dom:
        for g in dom:
            if h(f & g) > h(f) + h(g):
                return MeasureCheck(False, (f, g))
    return MeasureCheck(True)


def _admissible_max(h: Measure, inst: AndInstance) -> Fraction:
    prog = build_program(inst)
    return max((h(inst.family[i]) for i in prog.admissible), default=Fraction(0))


def size_lower_bound(h: Measure, inst: AndInstance):
    """``h(f) / M`` with ``M`` the largest value on the admissible members.

    Members not above the target can never occur in a conjunction equal to
    it, so the maximum is taken over those that can.  Returns INFINITE when
    ``M = 0 < h(f)`` (no conjunction of admissible members reaches f).
    """
    ht = h(inst.target)
    M = _admissible_max(h, inst)
    if M == 0:
        return INFINITE if ht > 0 else Fraction(0)
    return ht / M


@dataclass(frozen=True)
class DepthBound:
    ratio: Fraction
    #: log2(ratio) when ratio is an exact power of two
    exact: int | None
    #: integers lo <= log2(ratio) <= hi
    bracket: tuple[int, int]


def _log2_bracket(r: Fraction) -> tuple[int | None, tuple[int, int]]:
    p, q = r.numerator, r.denominator
    if p & (p - 1) == 0 and q & (q - 1) == 0:
        e = (p.bit_length() - 1) - (q.bit_length() - 1)
        return e, (e, e)
    lo = p.bit_length() - q.bit_length()
    # adjust so that 2**lo <= r < 2**(lo+1)
    while Fraction(2) ** lo > r:
        lo -= 1
    while Fraction(2) ** (lo + 1) <= r:
        lo += 1
    return None, (lo, lo + 1)


def negation_violation(h: Measure, domain: Iterable[BoolFun] | None = None) -> BoolFun | None:
    dom = h.ground.all_functions() if domain is None else domain
    for f in dom:
        if h(f) != h(~f):
            return f
    return None


def depth_lower_bound(h: Measure, inst: AndInstance, domain: Iterable[BoolFun] | None = None) -> DepthBound:
    bad = negation_violation(h, domain)
    if bad is not None:
        raise NegationAsymmetry(bad, h(bad), h(~bad))
    ratio = size_lower_bound(h, inst)
    if ratio is INFINITE:
        raise ValueError("M = 0 < h(f): the depth bound is vacuously infinite")
    if ratio <= 0:
        raise ValueError("depth bound needs h(f)/M > 0")
    exact, bracket = _log2_bracket(ratio)
    return DepthBound(ratio, exact, bracket)


# ----------------------------------------------------------------------------
# conjunctively closed complements


def _member_mask(ground: GroundSet, B: Iterable[BoolFun]) -> np.ndarray:
    mask = np.zeros(1 << len(ground), dtype=np.bool_)
    for f in B:
        if f.ground != ground:
            raise ValueError("function lives on another ground set")
        mask[f.index] = True
    return mask


def conj_closed_complement_failure(B: Iterable[BoolFun], ground: GroundSet) -> tuple[BoolFun, BoolFun] | None:
    """A pair f, g outside B with f & g in B, or None."""
    if len(ground) > EXHAUSTIVE_LIMIT:
        raise ValueError(f"needs |S| <= {EXHAUSTIVE_LIMIT}")
    inside = _member_mask(ground, B)
    bad = _kernels.conj_closed_violation(~inside)
    return None if bad is None else (BoolFun(ground, bad[0]), BoolFun(ground, bad[1]))


def is_conj_closed_complement(B: Iterable[BoolFun], ground: GroundSet) -> bool:
    return conj_closed_complement_failure(B, ground) is None


def chi_measure(B: Iterable[BoolFun], ground: GroundSet) -> Measure:
    B = list(B)
    bad = conj_closed_complement_failure(B, ground)
    if bad is not None:
        raise ValueError(f"complement of B is not closed under AND: {bad[0]} & {bad[1]} lands in B")
    members = frozenset(f.index for f in B)
    return Measure(ground, lambda f: 1 if f.index in members else 0, name="chi")


# ----------------------------------------------------------------------------
# path measures


@dataclass(frozen=True, eq=False)
class PathMeasure:
    cube: CubeCat
    P: int
    weights: Mapping[Path, object] = field(default_factory=dict)

    def __post_init__(self):
        for p, w in self.weights.items():
            if p.start != self.P:
                raise ValueError(f"path {p} does not start at the base vertex")
            if Fraction(w) < 0:
                raise ValueError("path weights must be non-negative")


def path_measure(pm: PathMeasure) -> Measure:
    """``h(f) = sum of A(phi)`` over weighted paths phi in Hom_{Z_f}(P, Q) with Q in Z_f."""
    dag = pm.cube.dag
    items = [(p, Fraction(w), p.end(dag)) for p, w in pm.weights.items() if w]

    def h(f: BoolFun) -> Fraction:
        z = closed_complement(pm.cube, f)
        return sum((w for p, w, end in items if end in z.members and in_hom_z(dag, p, z)), Fraction(0))

    return Measure(pm.cube.ground, h, name="path")


def hom_z_paths(cube: CubeCat, P: int, f: BoolFun, cap: int = 100_000) -> set[Path]:
    """Hom_{Z_f}(P, Q) over all Q in Z_f, as a set of paths."""
    dag = cube.dag
    z = closed_complement(cube, f)
    return {p for p in enumerate_paths(dag, P, None, cap=cap)
            if p.end(dag) in z.members and in_hom_z(dag, p, z)}


def chi_of_path(cube: CubeCat, P: int, path: Path) -> list[BoolFun]:
    """B = {f : path lies in Hom_{Z_f}(P, -) and ends in Z_f}."""
    dag = cube.dag
    out = []
    for f in cube.ground.all_functions():
        z = closed_complement(cube, f)
        if path.end(dag) in z.members and in_hom_z(dag, path, z):
            out.append(f)
    return out
