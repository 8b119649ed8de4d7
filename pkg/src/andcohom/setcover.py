"""AND-complexity as set cover: exact size, LP relaxation and its dual.

Given a target ``f`` and a family ``f_1..f_r`` only members with ``f <= f_i``
can appear in a conjunction equal to ``f`` (the admissible set ``R``).  The
conjunction of a subset of ``R`` equals ``f`` exactly when the zero sets
``f_i^{-1}(0)`` cover ``f^{-1}(0)``.

Family indices are 0-based throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .boolfun import DEFAULT_SIZE_LIMIT, BoolFun, GroundSet, GroundSetMismatch, conj_all, leq


class _Infinite:
    """The top element used for infeasible covers; compares above every number."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INFINITE"

    __str__ = lambda self: "infinite"  # noqa: E731

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("andcohom.INFINITE")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INFINITE = _Infinite()


@dataclass(frozen=True)
class AndInstance:
    target: BoolFun
    family: tuple[BoolFun, ...]

    def __init__(self, target: BoolFun, family: Sequence[BoolFun]):
        family = tuple(family)
        if not family:
            raise ValueError("family must be nonempty")
        for g in family:
            if g.ground != target.ground:
                raise GroundSetMismatch("target and family must share a ground set")
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "family", family)

    @property
    def ground(self) -> GroundSet:
        return self.target.ground


@dataclass(frozen=True)
class CoverProgram:
    instance: AndInstance
    admissible: tuple[int, ...]
    universe: tuple[str, ...]
    coverage: dict[int, frozenset[str]]

    def matrix_entry(self, s: str, i: int) -> int:
        """``1 - f_i(s)``: whether member i covers element s."""
        return 1 if s in self.coverage[i] else 0

    def masks(self) -> tuple[dict[str, int], dict[int, int]]:
        """Universe elements as bit positions and each coverage set as a bitmask."""
        pos = {s: k for k, s in enumerate(self.universe)}
        cov = {i: sum(1 << pos[s] for s in self.coverage[i]) for i in self.admissible}
        return pos, cov


@dataclass(frozen=True)
class SizeResult:
    value: int | _Infinite
    witness: tuple[int, ...] | None = None

    @property
    def finite(self) -> bool:
        return self.value is not INFINITE


@dataclass(frozen=True)
class LpResult:
    value: Fraction | _Infinite
    primal: dict[int, Fraction] | None = None
    dual: dict[str, Fraction] | None = None
    #: when infeasible: an element no admissible member covers (its alpha is unbounded)
    dual_ray: str | None = None

    @property
    def finite(self) -> bool:
        return self.value is not INFINITE


@dataclass(frozen=True)
class Certificate:
    demanders: dict[int, str]
    alpha: dict[str, int]
    value: int


def build_program(inst: AndInstance) -> CoverProgram:
    f = inst.target
    universe = tuple(f.zeros())
    admissible = tuple(i for i, g in enumerate(inst.family) if leq(f, g))
    coverage = {i: frozenset(s for s in universe if not inst.family[i](s)) for i in admissible}
    return CoverProgram(inst, admissible, universe, coverage)


# ----------------------------------------------------------------------------
# exact simplex


def _simplex_dual(prog: CoverProgram) -> LpResult:
    """Solve max sum(alpha) s.t. sum_s alpha_s [s in cov_i] <= 1 (i in R), alpha >= 0.

    The slack basis is feasible (right-hand side is all ones), so one phase
    suffices.  Bland's rule: entering = lowest-index improving column,
    leaving = minimum ratio with ties to the lowest basic variable index.
    The primal mu is read off the slack columns of the final objective row.
    """
    U = list(prog.universe)
    R = list(prog.admissible)
    n, m = len(U), len(R)
    if n == 0:
        return LpResult(Fraction(0), {i: Fraction(0) for i in R}, {})
    covered = set().union(*prog.coverage.values()) if R else set()
    for s in U:
        if s not in covered:
            return LpResult(INFINITE, None, None, dual_ray=s)

    # columns 0..n-1 are alpha_s, n..n+m-1 the slacks
    width = n + m
    rows = []
    for k, i in enumerate(R):
        row = [Fraction(prog.matrix_entry(s, i)) for s in U] + [Fraction(0)] * m
        row[n + k] = Fraction(1)
        rows.append(row)
    rhs = [Fraction(1)] * m
    basis = [n + k for k in range(m)]
    # reduced profits: c_j - z_j
    obj = [Fraction(1)] * n + [Fraction(0)] * m
    value = Fraction(0)

    while True:
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            break
        best = None
        for r in range(m):
            a = rows[r][enter]
            if a > 0:
                ratio = rhs[r] / a
                key = (ratio, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:  # cannot happen once every element is covered
            raise ArithmeticError("dual unbounded although primal feasible")
        r = best[1]
        piv = rows[r][enter]
        rows[r] = [v / piv for v in rows[r]]
        rhs[r] = rhs[r] / piv
        for k in range(m):
            if k != r and rows[k][enter] != 0:
                fac = rows[k][enter]
                rows[k] = [a - fac * b for a, b in zip(rows[k], rows[r])]
                rhs[k] -= fac * rhs[r]
        fac = obj[enter]
        obj = [a - fac * b for a, b in zip(obj, rows[r])]
        value += fac * rhs[r]
        basis[r] = enter

    alpha = {s: Fraction(0) for s in U}
    for r, b in enumerate(basis):
        if b < n:
            alpha[U[b]] = rhs[r]
    mu = {i: -obj[n + k] for k, i in enumerate(R)}
    return LpResult(value, mu, alpha)


def lp_bound(prog: CoverProgram) -> LpResult:
    res = _simplex_dual(prog)
    if res.finite:
        _check_lp(prog, res)
    return res


def _check_lp(prog: CoverProgram, res: LpResult) -> None:
    for s in prog.universe:
        if sum(res.primal[i] for i in prog.admissible if s in prog.coverage[i]) < 1:
            raise ArithmeticError(f"primal infeasible at {s}")
    for i in prog.admissible:
        if sum(res.dual[s] for s in prog.coverage[i]) > 1:
            raise ArithmeticError(f"dual infeasible at member {i}")
    if any(v < 0 for v in res.primal.values()) or any(v < 0 for v in res.dual.values()):
        raise ArithmeticError("negative LP variable")
    if sum(res.primal.values()) != res.value or sum(res.dual.values()) != res.value:
        raise ArithmeticError("strong duality violated")


# ----------------------------------------------------------------------------
# exact integer optimum


def _greedy(full: int, cov: dict[int, int]) -> list[int]:
    left, picked = full, []
    while left:
        i = max(cov, key=lambda k: (bin(cov[k] & left).count("1"), -k))
        if cov[i] & left == 0:
            raise ValueError("greedy stalled on an infeasible cover")
        picked.append(i)
        left &= ~cov[i]
    return picked


def _branch_and_bound(full: int, cov: dict[int, int], lower: int, upper: int) -> int:
    """Minimum cover size; branches on the lowest uncovered element."""
    order = sorted(cov, key=lambda k: (-bin(cov[k]).count("1"), k))
    maxcov = max(bin(c).count("1") for c in cov.values())
    best = upper

    def rec(left: int, used: int) -> None:
        nonlocal best
        if not left:
            best = min(best, used)
            return
        if used + -(-bin(left).count("1") // maxcov) >= best:
            return
        low = left & -left
        for i in order:
            if cov[i] & low:
                rec(left & ~cov[i], used + 1)
                if best == lower:
                    return

    if lower < upper:
        rec(full, 0)
    return best


def _lex_first_cover(full: int, cov: dict[int, int], k: int) -> tuple[int, ...] | None:
    """Lexicographically smallest index tuple of size k covering ``full``."""
    idx = sorted(cov)
    suffix = [0] * (len(idx) + 1)
    for t in range(len(idx) - 1, -1, -1):
        suffix[t] = suffix[t + 1] | cov[idx[t]]

    def rec(start: int, left: int, budget: int, chosen: list[int]):
        if not left:
            return tuple(chosen)
        if budget == 0 or left & ~suffix[start]:
            return None
        for t in range(start, len(idx)):
            if left & ~suffix[t]:
                return None
            got = rec(t + 1, left & ~cov[idx[t]], budget - 1, chosen + [idx[t]])
            if got is not None:
                return got
        return None

    return rec(0, full, k, [])


def exact_size(inst: AndInstance) -> SizeResult:
    prog = build_program(inst)
    if not prog.universe:
        return SizeResult(0, ())
    pos, cov = prog.masks()
    full = (1 << len(prog.universe)) - 1
    union = 0
    for c in cov.values():
        union |= c
    if union != full:
        return SizeResult(INFINITE)
    lp = lp_bound(prog)
    lower = math.ceil(lp.value)
    upper = len(_greedy(full, cov))
    value = _branch_and_bound(full, cov, lower, upper)
    witness = _lex_first_cover(full, cov, value)
    assert witness is not None and len(witness) == value
    assert conj_all(inst.ground, (inst.family[i] for i in witness)) == inst.target
    return SizeResult(value, witness)


# ----------------------------------------------------------------------------
# demand certificates


def demanders(prog: CoverProgram) -> dict[int, set[str]]:
    """s demands f_i when i is the only admissible member covering s."""
    out = {i: set() for i in prog.admissible}
    for s in prog.universe:
        hits = [i for i in prog.admissible if s in prog.coverage[i]]
        if len(hits) == 1:
            out[hits[0]].add(s)
    return out


def exactness_certificate(prog: CoverProgram) -> Certificate | None:
    dem = demanders(prog)
    if not prog.admissible or any(not v for v in dem.values()):
        return None
    if set(prog.universe) - set().union(*prog.coverage.values()):
        # f is not a conjunction of the family; size and LP are both infinite
        return None
    order = {s: k for k, s in enumerate(prog.universe)}
    chosen = {i: min(dem[i], key=order.__getitem__) for i in prog.admissible}
    alpha = {s: 0 for s in prog.universe}
    for s in chosen.values():
        alpha[s] = 1
    value = len(prog.admissible)
    lp = lp_bound(prog)
    size = exact_size(prog.instance)
    if not (lp.value == size.value == value == sum(alpha.values())):
        raise ArithmeticError(
            f"demand certificate inconsistent: lp={lp.value}, size={size.value}, |R|={value}")
    return Certificate(chosen, alpha, value)


# ----------------------------------------------------------------------------
# literal family


@dataclass(frozen=True)
class LiteralResult:
    instance: AndInstance
    leftover: tuple[str, ...]
    size: SizeResult
    lp: LpResult
    #: True when the leftover literals conjoin to the target
    is_conjunction: bool = field(default=False)


def cube_ground(n: int, limit: int = DEFAULT_SIZE_LIMIT) -> GroundSet:
    """S = {0,1}^n, labels are the n-bit strings in lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    if 2**n > limit:
        raise ValueError(f"|S| = 2**{n} exceeds configured size limit {limit}")
    return GroundSet([format(v, f"0{n}b") for v in range(2**n)])


def literals(n: int, ground: GroundSet) -> list[tuple[str, BoolFun]]:
    """x_1..x_n, then their negations; x_k reads the k-th character of a point."""
    out = []
    for neg in (False, True):
        for k in range(n):
            vals = [(pt[k] == "1") != neg for pt in ground.names]
            out.append((("~" if neg else "") + f"x{k + 1}", BoolFun.from_values(ground, vals)))
    return out


def literal_size(n: int, f: BoolFun, limit: int = DEFAULT_SIZE_LIMIT) -> LiteralResult:
    ground = cube_ground(n, limit)
    if f.ground != ground:
        raise GroundSetMismatch("f must live on the cube ground set {0,1}^n")
    # the constants are discarded along with literals that are not >= f
    kept = [(name, g) for name, g in literals(n, ground) if leq(f, g)]
    names = tuple(name for name, _ in kept)
    # an instance needs a nonempty family; constant 0 is never admissible when nothing is kept
    family = [g for _, g in kept] or [ground.const(0)]
    inst = AndInstance(f, family)
    size = exact_size(inst)
    lp = lp_bound(build_program(inst))
    is_conj = conj_all(ground, (g for _, g in kept)) == f
    return LiteralResult(inst, names, size, lp, is_conj)
