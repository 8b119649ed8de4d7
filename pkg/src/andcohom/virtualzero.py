"""Virtual zero extensions on free categories.

A witness is a presheaf H with an exact sequence

    0 -> G_U --(rho, alpha)--> G_{U&Z} (+) H --(sigma, -delta)--> G_Z -> 0

where rho and sigma are the usual restriction maps.  On a free category H can
be written down directly: H has G's stalks on U|Z, keeps G's edge maps when
both endpoints lie in U|Z, alpha is the identity on U and delta the identity
on Z.  Naturality of alpha pins H on edges inside U, naturality of delta pins
it on edges inside Z; edges from U\\Z to Z\\U are free and we keep G(e).
"""
from __future__ import annotations

from dataclasses import dataclass

from .freecat import ClosedSet, OpenSet
from .sheaves import (
    NatTrans,
    Presheaf,
    direct_sum,
    exactness_failure,
    extend_by_zero,
    hstack_trans,
    negate_trans,
    usual_map,
    vstack_trans,
)


class VzeCheckFailure(AssertionError):
    def __init__(self, message: str, vertex: int | None = None, edge: int | None = None):
        super().__init__(message)
        self.vertex = vertex
        self.edge = edge


@dataclass(frozen=True, eq=False)
class VzeWitness:
    G: Presheaf
    U: OpenSet
    Z: ClosedSet
    H: Presheaf
    alpha: NatTrans  # G_U -> H
    delta: NatTrans  # H -> G_Z
    rho: NatTrans  # G_U -> G_{U&Z}
    sigma: NatTrans  # G_{U&Z} -> G_Z


def _sets(G: Presheaf, U, Z) -> tuple[OpenSet, ClosedSet]:
    u = U if isinstance(U, OpenSet) else OpenSet(G.dag, U)
    z = Z if isinstance(Z, ClosedSet) else ClosedSet(G.dag, Z)
    return u, z


def forced_dims(G: Presheaf, U, Z) -> tuple[int, ...]:
    """dim G_U + dim G_Z - dim G_{U&Z} at each vertex."""
    u, z = _sets(G, U, Z)
    out = []
    for x, d in enumerate(G.dims):
        out.append(d * (x in u.members) + d * (x in z.members) - d * (x in u.members and x in z.members))
    return tuple(out)


def construct_vze(G: Presheaf, U, Z) -> VzeWitness:
    u, z = _sets(G, U, Z)
    fld = G.field
    union = u.members | z.members
    H = extend_by_zero(G, union)
    GU = extend_by_zero(G, u.members)
    GZ = extend_by_zero(G, z.members)
    alpha = NatTrans(GU, H, tuple(
        fld.identity(G.dims[x]) if x in u.members else fld.zeros(H.dims[x], 0)
        for x in G.dag.vertices()))
    delta = NatTrans(H, GZ, tuple(
        fld.identity(G.dims[x]) if x in z.members else fld.zeros(0, H.dims[x])
        for x in G.dag.vertices()))
    uz = u.members & z.members
    rho = usual_map(G, u.members, uz)
    sigma = usual_map(G, uz, z.members)
    return VzeWitness(G, u, z, H, alpha, delta, rho, sigma)


def sequence_of(w: VzeWitness) -> list[NatTrans]:
    """The two maps of the 4-term sequence, built from the witness parts."""
    mid = direct_sum(w.rho.target, w.H)
    first = hstack_trans([w.rho, w.alpha], w.rho.source, mid)
    second = vstack_trans([w.sigma, negate_trans(w.delta)], mid, w.sigma.target)
    return [first, second]


def vze_failure(w: VzeWitness) -> VzeCheckFailure | None:
    G, u, z = w.G, w.U, w.Z
    fld = G.field
    uz = u.members & z.members
    # (a) rho and sigma are the usual maps
    for name, t, A, B in (("rho", w.rho, u.members, uz), ("sigma", w.sigma, uz, z.members)):
        ref = usual_map(G, A, B)
        if not (t.source.same_as(ref.source) and t.target.same_as(ref.target)):
            return VzeCheckFailure(f"{name} has the wrong source or target")
        for x, (a, b) in enumerate(zip(t.components, ref.components)):
            if not fld.equal(a, b):
                return VzeCheckFailure(f"{name} is not the usual map at vertex {x}", vertex=x)
    GU, GZ = w.rho.source, w.sigma.target
    if not (w.alpha.source.same_as(GU) and w.delta.target.same_as(GZ)):
        return VzeCheckFailure("alpha/delta have the wrong source or target")
    if w.alpha.target is not w.H and not w.alpha.target.same_as(w.H):
        return VzeCheckFailure("alpha does not land in H")
    if w.delta.source is not w.H and not w.delta.source.same_as(w.H):
        return VzeCheckFailure("delta does not start at H")
    # (b) naturality
    for name, t in (("alpha", w.alpha), ("delta", w.delta)):
        bad = t.naturality_defect()
        if bad is not None:
            return VzeCheckFailure(f"{name} is not natural at edge {bad}", edge=bad)
    first, second = sequence_of(w)
    # (c) composite vanishes, (d) vertexwise exactness
    for x in G.dag.vertices():
        if not fld.is_zero(fld.matmul(second.components[x], first.components[x])):
            return VzeCheckFailure(f"composite is nonzero at vertex {x}", vertex=x)
    fail = exactness_failure([first, second])
    if fail is not None:
        return VzeCheckFailure(f"not exact at vertex {fail.vertex}, stage {fail.stage}: {fail.reason}",
                               vertex=fail.vertex)
    return None


def check_vze(w: VzeWitness) -> bool:
    return vze_failure(w) is None
