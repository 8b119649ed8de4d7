"""Free (path) categories on finite DAGs.

Objects are vertices, morphisms are directed paths; composition is
concatenation.  Counting is done by dynamic programming in topological order
with Python integers, so cube counts such as ``d!`` never overflow.

Open sets are predecessor-closed (sieves), closed sets successor-closed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Mapping, Sequence

from .boolfun import DEFAULT_SIZE_LIMIT, BoolFun, GroundSet

DEFAULT_PATH_CAP = 100_000


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Dag:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]]):
        edges = tuple((int(u), int(v)) for u, v in edges)
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) has a vertex outside 0..{vertex_count - 1}")
        object.__setattr__(self, "vertex_count", int(vertex_count))
        object.__setattr__(self, "edges", edges)
        self.topological_order  # validates acyclicity

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        ts = TopologicalSorter({v: set() for v in range(self.vertex_count)})
        for u, v in self.edges:
            ts.add(v, u)
        try:
            order = list(ts.static_order())
        except CycleError as exc:
            raise ValueError(f"graph has a cycle: {exc.args[1]}") from None
        return tuple(order)

    @cached_property
    def out_edges(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.vertex_count)]
        for k, (u, _) in enumerate(self.edges):
            out[u].append(k)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_edges(self) -> tuple[tuple[int, ...], ...]:
        inc = [[] for _ in range(self.vertex_count)]
        for k, (_, v) in enumerate(self.edges):
            inc[v].append(k)
        return tuple(tuple(x) for x in inc)

    def reversed(self) -> "Dag":
        return Dag(self.vertex_count, [(v, u) for u, v in self.edges])

    def vertices(self) -> range:
        return range(self.vertex_count)


@dataclass(frozen=True, order=True)
class Path:
    start: int
    edges: tuple[int, ...] = ()

    def end(self, dag: Dag) -> int:
        return dag.edges[self.edges[-1]][1] if self.edges else self.start

    def vertices(self, dag: Dag) -> list[int]:
        return [self.start] + [dag.edges[k][1] for k in self.edges]

    def then(self, edge: int) -> "Path":
        """Postcompose with one more edge."""
        return Path(self.start, self.edges + (edge,))

    def __len__(self) -> int:
        return len(self.edges)


def _as_set(dag: Dag, members) -> frozenset[int]:
    if isinstance(members, (OpenSet, ClosedSet)):
        return members.members
    s = frozenset(int(v) for v in members)
    if any(not 0 <= v < dag.vertex_count for v in s):
        raise ValueError("vertex outside graph")
    return s


def is_open(dag: Dag, members) -> bool:
    s = _as_set(dag, members)
    return all(u in s for u, v in dag.edges if v in s)


def is_closed(dag: Dag, members) -> bool:
    s = _as_set(dag, members)
    return all(v in s for u, v in dag.edges if u in s)


@dataclass(frozen=True)
class OpenSet:
    dag: Dag
    members: frozenset[int]

    def __init__(self, dag: Dag, members: Iterable[int]):
        s = _as_set(dag, members)
        if not is_open(dag, s):
            raise ValueError("set is not predecessor-closed")
        object.__setattr__(self, "dag", dag)
        object.__setattr__(self, "members", s)

    def __contains__(self, v) -> bool:
        return v in self.members

    def complement(self) -> "ClosedSet":
        return ClosedSet(self.dag, set(self.dag.vertices()) - self.members)


@dataclass(frozen=True)
class ClosedSet:
    dag: Dag
    members: frozenset[int]

    def __init__(self, dag: Dag, members: Iterable[int]):
        s = _as_set(dag, members)
        if not is_closed(dag, s):
            raise ValueError("set is not successor-closed")
        object.__setattr__(self, "dag", dag)
        object.__setattr__(self, "members", s)

    def __contains__(self, v) -> bool:
        return v in self.members

    def complement(self) -> OpenSet:
        return OpenSet(self.dag, set(self.dag.vertices()) - self.members)


# ----------------------------------------------------------------------------
# counting


def hom_counts_from(dag: Dag, P: int, avoid: frozenset[int] = frozenset()) -> list[int]:
    """Number of paths P -> X for every X, using only vertices outside ``avoid``."""
    counts = [0] * dag.vertex_count
    if P in avoid:
        return counts
    counts[P] = 1
    for u in dag.topological_order:
        c = counts[u]
        if not c:
            continue
        for k in dag.out_edges[u]:
            v = dag.edges[k][1]
            if v not in avoid:
                counts[v] += c
    return counts


def hom_counts_to(dag: Dag, Q: int) -> list[int]:
    """Number of paths X -> Q for every X."""
    counts = [0] * dag.vertex_count
    counts[Q] = 1
    for v in reversed(dag.topological_order):
        c = counts[v]
        if not c:
            continue
        for k in dag.in_edges[v]:
            counts[dag.edges[k][0]] += c
    return counts


def hom_count(dag: Dag, P: int, Q: int) -> int:
    return hom_counts_from(dag, P)[Q]


def hom_z_counts(dag: Dag, Z, P: int) -> list[int]:
    """|Hom_Z(P, Q)| for every Q: paths whose vertices except the last avoid Z.

    No condition is placed on whether Q itself lies in Z; callers that sum
    over Q in Z restrict the range themselves.
    """
    if isinstance(Z, ClosedSet):
        z = Z.members
    else:
        z = _as_set(dag, Z)
        if not is_closed(dag, z):
            raise ValueError("Z is not closed")
    out = [0] * dag.vertex_count
    if P in z:
        out[P] = 1
        return out
    inside = hom_counts_from(dag, P, avoid=z)
    for q in dag.vertices():
        if q in z:
            out[q] = sum(inside[dag.edges[k][0]] for k in dag.in_edges[q])
        else:
            out[q] = inside[q]
    return out


def hom_z_count(dag: Dag, Z, P: int, Q: int) -> int:
    return hom_z_counts(dag, Z, P)[Q]


def enumerate_paths(dag: Dag, P: int, Q: int | None = None, cap: int = DEFAULT_PATH_CAP) -> list[Path]:
    """All paths P -> Q (or from P to anywhere when Q is None), lexicographic by edge index."""
    reach = None if Q is None else hom_counts_to(dag, Q)
    if reach is not None and not reach[P]:
        return []
    out: list[Path] = []

    def rec(v: int, edges: tuple[int, ...]) -> None:
        if Q is None or v == Q:
            if len(out) >= cap:
                raise CapExceeded(f"more than {cap} paths from {P}")
            out.append(Path(P, edges))
        for k in dag.out_edges[v]:
            w = dag.edges[k][1]
            if reach is None or reach[w]:
                rec(w, edges + (k,))

    rec(P, ())
    if Q is None:
        out.sort(key=lambda p: p.edges)
    return out


def in_hom_z(dag: Dag, path: Path, Z) -> bool:
    z = Z.members if isinstance(Z, ClosedSet) else frozenset(Z)
    return not any(v in z for v in path.vertices(dag)[:-1])


# ----------------------------------------------------------------------------
# the monotone S-cube


@dataclass(frozen=True)
class CubeCat:
    ground: GroundSet
    dag: Dag

    @classmethod
    def build(cls, ground: GroundSet, limit: int = DEFAULT_SIZE_LIMIT) -> "CubeCat":
        ground.check_limit(limit)
        n = len(ground)
        edges = []
        for v in range(1 << n):
            for k in range(n):
                b = ground.bit(k)
                if not v & b:
                    edges.append((v, v | b))
        return cls(ground, Dag(1 << n, edges))

    def vertex(self, f: BoolFun) -> int:
        if f.ground != self.ground:
            raise ValueError("function lives on another ground set")
        return f.index

    def function(self, v: int) -> BoolFun:
        return BoolFun(self.ground, v)

    def delta_vertex(self, s) -> int:
        return self.ground.bit(s)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.ground.full_mask


def smallest_open(cat: CubeCat, f: BoolFun) -> OpenSet:
    """U_f = {g : g <= f}."""
    b = cat.vertex(f)
    return OpenSet(cat.dag, [g for g in cat.dag.vertices() if g & ~b == 0])


def closed_complement(cat: CubeCat, f: BoolFun) -> ClosedSet:
    """Z_f, the complement of U_f."""
    return smallest_open(cat, f).complement()


@dataclass(frozen=True)
class Subcube:
    ground: GroundSet
    fixed: Mapping[str, int]

    def members(self) -> list[int]:
        mask = val = 0
        for s, b in self.fixed.items():
            bit = self.ground.bit(s)
            mask |= bit
            if b:
                val |= bit
        return [v for v in range(1 << len(self.ground)) if v & mask == val]
