"""Presheaves of finite-dimensional vector spaces on a free category.

Under the grossiere topology every presheaf is a sheaf, so nothing here
sheafifies.  Variance convention: an edge ``e: u -> v`` carries a matrix
``F(e): F(v) -> F(u)`` of shape ``dims[u] x dims[v]``.  With open sets
predecessor-closed this makes ``G_U`` a subobject and ``G_Z`` a quotient of
``G``.  Results for the opposite convention are obtained by running on
:meth:`Dag.reversed` with transposed maps (:func:`opposite`).

A free category imposes no relations, so any choice of edge matrices is a
presheaf.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .freecat import Dag, Path, enumerate_paths, hom_counts_from
from .linalg import RATIONAL, Field, block_diag

DEFAULT_DIM_CAP = 5000


class DimensionCapExceeded(RuntimeError):
    pass


class NaturalityError(ValueError):
    def __init__(self, message: str, edge: int | None = None):
        super().__init__(message)
        self.edge = edge


@dataclass(frozen=True, eq=False)
class Presheaf:
    dag: Dag
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]
    field: Field = RATIONAL

    def __post_init__(self):
        if len(self.dims) != self.dag.vertex_count:
            raise ValueError("one dimension per vertex required")
        if any(d < 0 for d in self.dims):
            raise ValueError("dimensions must be non-negative")
        if len(self.maps) != len(self.dag.edges):
            raise ValueError("one matrix per edge required")
        for k, ((u, v), m) in enumerate(zip(self.dag.edges, self.maps)):
            if m.shape != (self.dims[u], self.dims[v]):
                raise ValueError(
                    f"edge {k} ({u}->{v}): matrix shape {m.shape} != ({self.dims[u]}, {self.dims[v]})")

    @classmethod
    def from_maps(cls, dag: Dag, dims: Sequence[int], maps: Sequence, field: Field = RATIONAL) -> "Presheaf":
        dims = tuple(int(d) for d in dims)
        mats = []
        for (u, v), m in zip(dag.edges, maps):
            mats.append(field.array(m, shape=(dims[u], dims[v])))
        if len(mats) != len(dag.edges):
            raise ValueError("one matrix per edge required")
        return cls(dag, dims, tuple(mats), field)

    @classmethod
    def zero(cls, dag: Dag, field: Field = RATIONAL) -> "Presheaf":
        return superskyscraper(dag, [0] * dag.vertex_count, field)

    def total_dim(self) -> int:
        return sum(self.dims)

    def is_superskyscraper(self) -> bool:
        return all(self.field.is_zero(m) for m in self.maps)

    def support(self) -> frozenset[int]:
        return frozenset(v for v, d in enumerate(self.dims) if d)

    def same_as(self, other: "Presheaf") -> bool:
        return (self.dag == other.dag and self.field == other.field and self.dims == other.dims
                and all(self.field.equal(a, b) for a, b in zip(self.maps, other.maps)))

    def _compatible(self, other: "Presheaf") -> None:
        if self.dag != other.dag:
            raise ValueError("presheaves live on different graphs")
        if self.field != other.field:
            raise ValueError("presheaves use different fields")


@dataclass(frozen=True, eq=False)
class NatTrans:
    """Vertexwise matrices ``eta[X]: source(X) -> target(X)``."""

    source: Presheaf
    target: Presheaf
    components: tuple[np.ndarray, ...]

    def __post_init__(self):
        self.source._compatible(self.target)
        for x, c in enumerate(self.components):
            if c.shape != (self.target.dims[x], self.source.dims[x]):
                raise ValueError(f"component at {x} has shape {c.shape}")

    @property
    def field(self) -> Field:
        return self.source.field

    def naturality_defect(self) -> int | None:
        """First edge where ``eta_u . F(e) != G(e) . eta_v``, else None."""
        fld = self.field
        F, G = self.source, self.target
        for k, (u, v) in enumerate(F.dag.edges):
            lhs = fld.matmul(self.components[u], F.maps[k])
            rhs = fld.matmul(G.maps[k], self.components[v])
            if not fld.equal(lhs, rhs):
                return k
        return None

    def is_natural(self) -> bool:
        return self.naturality_defect() is None

    def compose(self, after: "NatTrans") -> "NatTrans":
        """``after . self``."""
        if after.source is not self.target and not after.source.same_as(self.target):
            raise ValueError("transformations do not compose")
        comps = tuple(self.field.matmul(a, b) for a, b in zip(after.components, self.components))
        return NatTrans(self.source, after.target, comps)


# ----------------------------------------------------------------------------
# constructors


def superskyscraper(dag: Dag, dims: Sequence[int], field: Field = RATIONAL) -> Presheaf:
    dims = tuple(int(d) for d in dims)
    maps = tuple(field.zeros(dims[u], dims[v]) for u, v in dag.edges)
    return Presheaf(dag, dims, maps, field)


def skyscraper(dag: Dag, vertex: int, field: Field = RATIONAL) -> Presheaf:
    dims = [0] * dag.vertex_count
    dims[vertex] = 1
    return superskyscraper(dag, dims, field)


def path_bases(dag: Dag, P: int, cap: int = DEFAULT_DIM_CAP) -> list[list[Path]]:
    counts = hom_counts_from(dag, P)
    if max(counts) > cap:
        worst = max(range(dag.vertex_count), key=counts.__getitem__)
        raise DimensionCapExceeded(f"|Hom({P},{worst})| = {counts[worst]} exceeds dimension cap {cap}")
    bases: list[list[Path]] = [[] for _ in dag.vertices()]
    for p in enumerate_paths(dag, P, None, cap=max(sum(counts), 1)):
        bases[p.end(dag)].append(p)
    return bases


def kp_star(dag: Dag, P: int, field: Field = RATIONAL, cap: int = DEFAULT_DIM_CAP) -> Presheaf:
    """Functions on Hom(P, -).

    For ``e: u -> v`` the matrix sends the basis functional of a path
    ``pi in Hom(P, v)`` to the sum of functionals of ``pi' in Hom(P, u)`` with
    ``e . pi' = pi``; i.e. entry ``(pi', pi'.then(e)) = 1``.
    """
    bases = path_bases(dag, P, cap)
    index = [{p: k for k, p in enumerate(b)} for b in bases]
    dims = tuple(len(b) for b in bases)
    maps = []
    for k, (u, v) in enumerate(dag.edges):
        m = field.zeros(dims[u], dims[v])
        for r, p in enumerate(bases[u]):
            m[r, index[v][p.then(k)]] = 1
        maps.append(m)
    return Presheaf(dag, dims, tuple(maps), field)


def extend_by_zero(G: Presheaf, A: Iterable[int]) -> Presheaf:
    a = frozenset(getattr(A, "members", A))
    dims = tuple(d if x in a else 0 for x, d in enumerate(G.dims))
    maps = []
    for (u, v), m in zip(G.dag.edges, G.maps):
        if u in a and v in a:
            maps.append(m)
        else:
            maps.append(G.field.zeros(dims[u], dims[v]))
    return Presheaf(G.dag, dims, tuple(maps), G.field)


def usual_map(G: Presheaf, A: Iterable[int], B: Iterable[int]) -> NatTrans:
    """``G_A -> G_B``, identity on the common support and zero elsewhere."""
    a = frozenset(getattr(A, "members", A))
    b = frozenset(getattr(B, "members", B))
    src, tgt = extend_by_zero(G, a), extend_by_zero(G, b)
    fld = G.field
    comps = tuple(
        fld.identity(G.dims[x]) if (x in a and x in b) else fld.zeros(tgt.dims[x], src.dims[x])
        for x in G.dag.vertices())
    eta = NatTrans(src, tgt, comps)
    bad = eta.naturality_defect()
    if bad is not None:
        u, v = G.dag.edges[bad]
        raise NaturalityError(f"identity on A&B is not natural at edge {bad} ({u}->{v})", bad)
    return eta


def direct_sum(F: Presheaf, G: Presheaf) -> Presheaf:
    F._compatible(G)
    dims = tuple(a + b for a, b in zip(F.dims, G.dims))
    maps = tuple(block_diag(F.field, [a, b]) for a, b in zip(F.maps, G.maps))
    return Presheaf(F.dag, dims, maps, F.field)


def direct_sum_all(dag: Dag, parts: Sequence[Presheaf], field: Field = RATIONAL) -> Presheaf:
    if not parts:
        return Presheaf.zero(dag, field)
    dims = tuple(sum(p.dims[x] for p in parts) for x in dag.vertices())
    maps = tuple(block_diag(field, [p.maps[k] for p in parts]) for k in range(len(dag.edges)))
    return Presheaf(dag, dims, maps, field)


def hstack_trans(parts: Sequence[NatTrans], source: Presheaf, target: Presheaf) -> NatTrans:
    """``(t_1, ..., t_k): source -> target_1 (+) ... (+) target_k`` (stacked rows)."""
    fld = source.field
    comps = []
    for x in source.dag.vertices():
        blocks = [t.components[x] for t in parts]
        comps.append(np.vstack(blocks) if blocks else fld.zeros(0, source.dims[x]))
    return NatTrans(source, target, tuple(_fix(fld, c, target.dims[x], source.dims[x])
                                          for x, c in enumerate(comps)))


def vstack_trans(parts: Sequence[NatTrans], source: Presheaf, target: Presheaf) -> NatTrans:
    """``[t_1 ... t_k]: source_1 (+) ... (+) source_k -> target`` (side by side)."""
    fld = target.field
    comps = []
    for x in target.dag.vertices():
        blocks = [t.components[x] for t in parts]
        comps.append(np.hstack(blocks) if blocks else fld.zeros(target.dims[x], 0))
    return NatTrans(source, target, tuple(_fix(fld, c, target.dims[x], source.dims[x])
                                          for x, c in enumerate(comps)))


def _fix(fld: Field, c: np.ndarray, m: int, n: int) -> np.ndarray:
    if fld.p is None and c.dtype != object:
        c = c.astype(object)
    return c.reshape(m, n)


def negate_trans(eta: NatTrans) -> NatTrans:
    return NatTrans(eta.source, eta.target, tuple(eta.field.neg(m) for m in eta.components))


def zero_trans(F: Presheaf, G: Presheaf) -> NatTrans:
    return NatTrans(F, G, tuple(F.field.zeros(G.dims[x], F.dims[x]) for x in F.dag.vertices()))


def opposite(F: Presheaf) -> Presheaf:
    """The same data read on the edge-reversed graph with transposed matrices."""
    return Presheaf(F.dag.reversed(), F.dims, tuple(m.T.copy() for m in F.maps), F.field)


# ----------------------------------------------------------------------------
# exactness


@dataclass(frozen=True)
class ExactnessFailure:
    vertex: int
    stage: int
    reason: str


def exactness_failure(sequence: Sequence[NatTrans]) -> ExactnessFailure | None:
    """Check ``0 -> A_0 -> A_1 -> ... -> A_n -> 0`` vertexwise."""
    if not sequence:
        raise ValueError("empty sequence")
    for a, b in zip(sequence, sequence[1:]):
        if a.target is not b.source and not a.target.same_as(b.source):
            raise ValueError("non-composable chain")
    fld = sequence[0].field
    objs = [sequence[0].source] + [t.target for t in sequence]
    for x in objs[0].dag.vertices():
        ranks = [fld.rank(t.components[x]) for t in sequence]
        for k, (a, b) in enumerate(zip(sequence, sequence[1:])):
            if not fld.is_zero(fld.matmul(b.components[x], a.components[x])):
                return ExactnessFailure(x, k + 1, "composite is not zero")
        # exact at A_k iff rank(in) + rank(out) = dim A_k, given composites vanish
        ext = [0] + ranks + [0]
        for k, obj in enumerate(objs):
            if ext[k] + ext[k + 1] != obj.dims[x]:
                return ExactnessFailure(x, k, f"rank count {ext[k]}+{ext[k + 1]} != dim {obj.dims[x]}")
    return None


def check_exact(sequence: Sequence[NatTrans]) -> bool:
    return exactness_failure(sequence) is None
