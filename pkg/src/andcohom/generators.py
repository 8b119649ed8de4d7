"""Seeded random instances for the property suites."""
from __future__ import annotations

import numpy as np

from .boolfun import BoolFun, GroundSet
from .freecat import ClosedSet, Dag, OpenSet
from .linalg import RATIONAL, Field
from .setcover import AndInstance
from .sheaves import Presheaf, superskyscraper

DEFAULT_SEED = 0


def rng_for(seed: int = DEFAULT_SEED, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng([seed, stream])


def random_dag(rng: np.random.Generator, max_vertices: int = 8, edge_prob: float = 0.35,
               min_vertices: int = 1, multi_prob: float = 0.05) -> Dag:
    """Edges only go forward in a hidden random order, so the graph is acyclic."""
    n = int(rng.integers(min_vertices, max_vertices + 1))
    order = rng.permutation(n)
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < edge_prob:
                edges.append((int(order[a]), int(order[b])))
                if rng.random() < multi_prob:
                    edges.append((int(order[a]), int(order[b])))
    rng.shuffle(edges)
    return Dag(n, edges)


def random_open(rng: np.random.Generator, dag: Dag, p: float = 0.5) -> OpenSet:
    """Predecessor closure of a random vertex subset."""
    seed = {v for v in dag.vertices() if rng.random() < p}
    members = set(seed)
    for v in reversed(dag.topological_order):
        if v in members:
            for k in dag.in_edges[v]:
                members.add(dag.edges[k][0])
    return OpenSet(dag, members)


def random_closed(rng: np.random.Generator, dag: Dag, p: float = 0.5) -> ClosedSet:
    return random_open(rng, dag, p).complement()


def random_presheaf(rng: np.random.Generator, dag: Dag, max_dim: int = 3,
                    field: Field = RATIONAL, zero_prob: float = 0.15) -> Presheaf:
    dims = tuple(int(d) for d in rng.integers(0, max_dim + 1, size=dag.vertex_count))
    maps = []
    for u, v in dag.edges:
        if rng.random() < zero_prob:
            maps.append(field.zeros(dims[u], dims[v]))
        else:
            maps.append(field.random_matrix(rng, dims[u], dims[v]))
    return Presheaf(dag, dims, tuple(maps), field)


def random_superskyscraper(rng: np.random.Generator, dag: Dag, max_dim: int = 3,
                           field: Field = RATIONAL, support_prob: float = 0.5) -> Presheaf:
    dims = [int(rng.integers(1, max_dim + 1)) if rng.random() < support_prob else 0
            for _ in dag.vertices()]
    return superskyscraper(dag, dims, field)


def random_instance(rng: np.random.Generator, max_ground: int = 10, max_family: int = 8,
                    one_prob: float = 0.6) -> AndInstance:
    """Random target and family; members are biased toward lying above the target."""
    n = int(rng.integers(1, max_ground + 1))
    r = int(rng.integers(1, max_family + 1))
    ground = GroundSet.of_size(n)
    target = BoolFun(ground, int(rng.integers(0, 1 << n)))
    family = []
    for _ in range(r):
        extra = sum(1 << k for k in range(n) if rng.random() < one_prob)
        if rng.random() < 0.85:
            family.append(BoolFun(ground, target.bits | extra))
        else:
            family.append(BoolFun(ground, extra))
    return AndInstance(target, family)


def random_delta_dims(rng: np.random.Generator, ground: GroundSet, max_dim: int = 3) -> dict[str, int]:
    return {s: int(rng.integers(0, max_dim + 1)) for s in ground.names}
