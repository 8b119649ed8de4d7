"""Hom/Ext^1 and cohomological complexity on free categories.

Presheaves on a free category are representations of a quiver without
relations, a hereditary abelian category: Ext^i vanishes for i >= 2.  Both
surviving groups come from one linear map

    Phi: (+)_v Hom(F(v), G(v)) -> (+)_{e: u->v} Hom(F(v), G(u)),
    Phi(eta)_e = G(e) . eta_v - eta_u . F(e),

with Hom(F, G) = ker Phi and Ext^1(F, G) = coker Phi (the standard projective
resolution of a quiver representation, dualised).  So
``cc(F, G) = dim ker Phi + dim coker Phi``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .boolfun import BoolFun
from .freecat import (
    ClosedSet,
    CubeCat,
    Dag,
    OpenSet,
    closed_complement,
    enumerate_paths,
    hom_count,
    hom_counts_from,
    hom_counts_to,
    hom_z_counts,
    in_hom_z,
    smallest_open,
)
from .linalg import Field
from .setcover import INFINITE, AndInstance, build_program, exact_size, lp_bound
from .sheaves import (
    DEFAULT_DIM_CAP,
    NatTrans,
    Presheaf,
    direct_sum_all,
    exactness_failure,
    extend_by_zero,
    kp_star,
    opposite,
    path_bases,
    skyscraper,
    superskyscraper,
    usual_map,
)


class VerificationError(AssertionError):
    """A checked identity failed; carries the offending instance."""

    def __init__(self, message: str, instance: Mapping | None = None):
        super().__init__(message)
        self.instance = dict(instance or {})


@dataclass(frozen=True)
class ExtProfile:
    hom: int
    ext1: int

    @property
    def cc(self) -> int:
        return self.hom + self.ext1

    def as_dict(self) -> dict:
        return {"hom": self.hom, "ext1": self.ext1, "cc": self.cc}


# ----------------------------------------------------------------------------
# Ext


def phi_rows(F: Presheaf, G: Presheaf) -> tuple[list[dict], int, int]:
    """Sparse rows of Phi plus (row count, column count).

    Domain coordinates are the entries of each ``eta_v`` (a dim G(v) x dim F(v)
    matrix); only vertices with both dimensions nonzero contribute blocks.
    """
    F._compatible(G)
    dag = F.dag
    col0 = {}
    ncols = 0
    for v in dag.vertices():
        col0[v] = ncols
        ncols += G.dims[v] * F.dims[v]

    def col(v, i, j):  # eta_v[i, j]
        return col0[v] + i * F.dims[v] + j

    rows: list[dict] = []
    nrows = 0
    for k, (u, v) in enumerate(dag.edges):
        fv, gu = F.dims[v], G.dims[u]
        if fv == 0 or gu == 0:
            continue
        Ge, Fe = G.maps[k], F.maps[k]
        g_nz = [[(kk, Ge[i, kk]) for kk in range(G.dims[v]) if Ge[i, kk] != 0] for i in range(gu)]
        f_nz = [[(kk, Fe[kk, j]) for kk in range(F.dims[u]) if Fe[kk, j] != 0] for j in range(fv)]
        for i in range(gu):
            for j in range(fv):
                row: dict = {}
                # (G(e) eta_v)[i, j] = sum_k G(e)[i, k] eta_v[k, j]
                for kk, a in g_nz[i]:
                    c = col(v, kk, j)
                    row[c] = row.get(c, 0) + a
                # -(eta_u F(e))[i, j] = -sum_k eta_u[i, k] F(e)[k, j]
                for kk, a in f_nz[j]:
                    c = col(u, i, kk)
                    row[c] = row.get(c, 0) - a
                if F.field.p is not None:
                    row = {c: x % F.field.p for c, x in row.items()}
                rows.append({c: x for c, x in row.items() if x != 0})
                nrows += 1
    return rows, nrows, ncols


def ext_profile(F: Presheaf, G: Presheaf) -> ExtProfile:
    rows, nrows, ncols = phi_rows(F, G)
    r = F.field.sparse_rank(rows, ncols)
    return ExtProfile(ncols - r, nrows - r)


def cc(F: Presheaf, G: Presheaf) -> int:
    return ext_profile(F, G).cc


def euler_characteristic(F: Presheaf, G: Presheaf) -> int:
    """``dim Hom - dim Ext^1``, read off dimensions alone."""
    F._compatible(G)
    dag = F.dag
    return (sum(F.dims[v] * G.dims[v] for v in dag.vertices())
            - sum(F.dims[v] * G.dims[u] for u, v in dag.edges))


# ----------------------------------------------------------------------------
# the closed-inclusion lemma


def _z_members(dag: Dag, Z) -> frozenset[int]:
    z = Z if isinstance(Z, ClosedSet) else ClosedSet(dag, Z)
    return z.members


def lemma_rhs(dag: Dag, P: int, Z, field: Field, cap: int = DEFAULT_DIM_CAP) -> Presheaf:
    """(+)_{Q in Z} (k_{Q*})^{|Hom_Z(P, Q)|}, summands ordered by Q then copy."""
    z = _z_members(dag, Z)
    counts = hom_z_counts(dag, ClosedSet(dag, z), P)
    parts = []
    for q in sorted(z):
        if counts[q]:
            piece = kp_star(dag, q, field, cap)
            parts.extend([piece] * counts[q])
    return direct_sum_all(dag, parts, field)


def lemma_isomorphism(dag: Dag, P: int, Z, field: Field, cap: int = DEFAULT_DIM_CAP) -> NatTrans:
    """The vertexwise pullback along b_X: (sigma, tau) -> sigma then tau.

    Source is ``(k_{P*})_Z``, target :func:`lemma_rhs`; each component is a
    permutation matrix when the lemma holds.
    """
    z = _z_members(dag, Z)
    closed = ClosedSet(dag, z)
    left = extend_by_zero(kp_star(dag, P, field, cap), z)
    right = lemma_rhs(dag, P, closed, field, cap)
    lbases = path_bases(dag, P, cap)
    lindex = [{p.edges: k for k, p in enumerate(b)} for b in lbases]
    # blocks of the right side in the same order lemma_rhs used
    blocks = []
    for q in sorted(z):
        for sigma in enumerate_paths(dag, P, q, cap=cap):
            if in_hom_z(dag, sigma, closed):
                blocks.append((sigma, path_bases(dag, q, cap)))
    comps = []
    for x in dag.vertices():
        m = field.zeros(right.dims[x], left.dims[x])
        if x in z:
            row = 0
            for sigma, qbases in blocks:
                for tau in qbases[x]:
                    m[row, lindex[x][sigma.edges + tau.edges]] = 1
                    row += 1
        comps.append(m)
    return NatTrans(left, right, tuple(comps))


def check_lemma(dag: Dag, P: int, Z, F: Presheaf, cap: int = DEFAULT_DIM_CAP) -> bool:
    """Closed-inclusion decomposition of (k_{P*})_Z.

    Checks (a) dimensions at every X in Z against the path-count sum,
    (b) ext_profile(F, -) on both sides and (c) that the bijection of paths
    yields a natural isomorphism.
    """
    z = _z_members(dag, Z)
    closed = ClosedSet(dag, z)
    fld = F.field
    left = extend_by_zero(kp_star(dag, P, fld, cap), z)
    right = lemma_rhs(dag, P, closed, fld, cap)
    hz = hom_z_counts(dag, closed, P)
    for x in dag.vertices():
        expect = sum(hz[q] * hom_count(dag, q, x) for q in z) if x in z else 0
        if left.dims[x] != expect or right.dims[x] != expect:
            return False
    if ext_profile(F, left) != ext_profile(F, right):
        return False
    iso = lemma_isomorphism(dag, P, closed, fld, cap)
    if not iso.is_natural():
        return False
    return all(fld.rank(c) == c.shape[0] == c.shape[1] for c in iso.components)


# ----------------------------------------------------------------------------
# cc on open and closed sets


def cc_closed_pathsum(F: Presheaf, P: int, Z) -> int:
    """sum_{Q in Z} dim F(Q) |Hom_Z(P, Q)|; pure counting."""
    z = _z_members(F.dag, Z)
    hz = hom_z_counts(F.dag, ClosedSet(F.dag, z), P)
    return sum(F.dims[q] * hz[q] for q in z)


def cc_open(F: Presheaf, P: int, U, cap: int = DEFAULT_DIM_CAP) -> ExtProfile:
    u = U if isinstance(U, OpenSet) else OpenSet(F.dag, U)
    return ext_profile(F, extend_by_zero(kp_star(F.dag, P, F.field, cap), u.members))


# ----------------------------------------------------------------------------
# the improved inequality


@dataclass(frozen=True)
class Theorem1Report:
    cc_G: int
    cc_U: int
    cc_Zbar: int
    cc_U_Zbar: int
    cc_Z: int
    sequences_exact: bool
    vze_ok: bool

    @property
    def theorem(self) -> bool:
        return self.cc_U_Zbar <= self.cc_G + self.cc_U + self.cc_Zbar

    @property
    def first_step(self) -> bool:
        return self.cc_U_Zbar <= self.cc_Z + self.cc_U

    @property
    def second_step(self) -> bool:
        return self.cc_Z <= self.cc_G + self.cc_Zbar

    @property
    def ok(self) -> bool:
        return self.theorem and self.first_step and self.second_step and self.sequences_exact and self.vze_ok

    def as_dict(self) -> dict:
        return {
            "cc(F,G)": self.cc_G, "cc(F,G_U)": self.cc_U, "cc(F,G_Zbar)": self.cc_Zbar,
            "cc(F,G_U&Zbar)": self.cc_U_Zbar, "cc(F,G_Z)": self.cc_Z,
            "theorem": self.theorem, "first_step": self.first_step, "second_step": self.second_step,
            "sequences_exact": self.sequences_exact, "vze_ok": self.vze_ok,
        }


def instance_dump(**parts) -> dict:
    out = {}
    for name, obj in parts.items():
        if isinstance(obj, Presheaf):
            from .io import presheaf_to_json

            out[name] = presheaf_to_json(obj)
        elif isinstance(obj, (OpenSet, ClosedSet)):
            out[name] = sorted(obj.members)
        elif isinstance(obj, Dag):
            out[name] = {"vertices": obj.vertex_count, "edges": [list(e) for e in obj.edges]}
        else:
            out[name] = obj
    return out


def check_theorem1(F: Presheaf, G: Presheaf, U, Z, with_vze: bool = True) -> Theorem1Report:
    """All four cc values, both proof steps, and the exact sequences the proof uses.

    Raises :class:`VerificationError` with an instance dump on any failure.
    """
    from .virtualzero import check_vze, construct_vze

    dag = G.dag
    u = U if isinstance(U, OpenSet) else OpenSet(dag, U)
    z = Z if isinstance(Z, ClosedSet) else ClosedSet(dag, Z)
    allv = frozenset(dag.vertices())
    zbar = allv - z.members
    u_zbar = u.members & zbar
    u_z = u.members & z.members

    def c(A):
        return ext_profile(F, extend_by_zero(G, A)).cc

    # 0 -> G_{U&Zbar} -> G_U -> G_{U&Z} -> 0 and 0 -> G_Zbar -> G -> G_Z -> 0
    seq1 = [usual_map(G, u_zbar, u.members), usual_map(G, u.members, u_z)]
    seq2 = [usual_map(G, zbar, allv), usual_map(G, allv, z.members)]
    exact = exactness_failure(seq1) is None and exactness_failure(seq2) is None
    vze_ok = check_vze(construct_vze(G, u, z)) if with_vze else True
    rep = Theorem1Report(c(allv), c(u.members), c(zbar), c(u_zbar), c(z.members), exact, vze_ok)
    if not rep.ok:
        raise VerificationError(
            f"improved inequality check failed: {rep.as_dict()}",
            instance_dump(dag=dag, F=F, G=G, U=u, Z=z))
    return rep


# ----------------------------------------------------------------------------
# the cube model and the AND measure it induces


@dataclass(frozen=True, eq=False)
class CohomModel:
    cube: CubeCat
    F: Presheaf
    P: int = 0

    def __post_init__(self):
        if self.F.dag != self.cube.dag:
            raise ValueError("F must live on the cube's graph")


def delta_model(cube: CubeCat, A: Mapping[str, int] | Sequence[int], field: Field | None = None) -> CohomModel:
    """P = const 0, F a superskyscraper with dim F(delta_s) = A_s and zero elsewhere."""
    names = cube.ground.names
    if not isinstance(A, Mapping):
        A = dict(zip(names, A))
    dims = [0] * cube.dag.vertex_count
    for s in names:
        a = int(A.get(s, 0))
        if a < 0:
            raise ValueError("dimensions must be non-negative")
        dims[cube.delta_vertex(s)] = a
    kw = {} if field is None else {"field": field}
    return CohomModel(cube, superskyscraper(cube.dag, dims, **kw), 0)


def base_cc(model: CohomModel, cap: int = DEFAULT_DIM_CAP) -> int:
    """cc(F, k_{P*}).

    Computed through Ext when k_{P*} fits the dimension cap; otherwise via
    injectivity of k_{P*} (Ext^1 = 0, Hom = F(P)^*), both facts being checked
    independently in the test-suite.
    """
    dag = model.cube.dag
    if max(hom_counts_from(dag, model.P)) <= cap:
        return ext_profile(model.F, kp_star(dag, model.P, model.F.field, cap)).cc
    return model.F.dims[model.P]


def and_measure_from_model(model: CohomModel, method: str = "auto", cap: int = DEFAULT_DIM_CAP):
    """h(f) = cc(F, G_{U_f}) with G = k_{P*}; requires cc(F, G) = 0.

    ``method``: ``"ext"`` always goes through Ext of the open extension,
    ``"pathsum"`` uses the closed path-count formula, ``"auto"`` takes the
    path sum for superskyscrapers and Ext otherwise.
    """
    from .measures import Measure

    base = base_cc(model, cap)
    if base != 0:
        raise VerificationError(f"cc(F, k_P*) = {base} != 0; h is not an AND measure",
                                {"P": model.P, "dims": list(model.F.dims)})
    if method == "auto":
        method = "pathsum" if model.F.is_superskyscraper() else "ext"
    if method not in ("ext", "pathsum"):
        raise ValueError(f"unknown method {method!r}")
    cube, F, P = model.cube, model.F, model.P
    G = kp_star(cube.dag, P, F.field, cap) if method == "ext" else None

    def h(f: BoolFun) -> int:
        if method == "pathsum":
            return cc_closed_pathsum(F, P, closed_complement(cube, f))
        return ext_profile(F, extend_by_zero(G, smallest_open(cube, f).members)).cc

    return Measure(cube.ground, h, name=f"cc[{method}]")


# ----------------------------------------------------------------------------
# recovering the LP bound


@dataclass(frozen=True)
class LpRecovery:
    bound: Fraction
    lp_value: Fraction | object
    scale: int
    dims: dict[str, int]
    M: int
    h_target: int

    def as_dict(self) -> dict:
        from .linalg import format_scalar

        return {
            "bound": format_scalar(self.bound),
            "lp": "infinite" if self.lp_value is INFINITE else format_scalar(self.lp_value),
            "dims": self.dims, "M": self.M, "h_target": self.h_target, "scale": self.scale,
        }


def lp_recovery(inst: AndInstance, A: Mapping[str, object], M=None, verify_ext: bool = False) -> LpRecovery:
    """size(f) >= sum_s A_s (1 - f(s)) / M from the delta-superskyscraper model.

    Rational A (and M) are scaled by a common denominator to become sheaf
    dimensions; the bound is unchanged by scaling.  Raises ValueError if
    ``sum_s A_s (1 - f_i(s)) <= M`` fails for some admissible i.
    """
    ground = inst.ground
    A = {s: Fraction(A.get(s, 0)) for s in ground.names}
    if any(a < 0 for a in A.values()):
        raise ValueError("A must be non-negative")
    prog = build_program(inst)
    loads = [sum(A[s] for s in prog.coverage[i]) for i in prog.admissible]
    if M is None:
        M = max(loads, default=Fraction(0))
    M = Fraction(M)
    for i, load in zip(prog.admissible, loads):
        if load > M:
            raise ValueError(f"A infeasible: member {i} has load {load} > M = {M}")

    scale = 1
    for v in list(A.values()) + [M]:
        scale = scale * v.denominator // np.gcd(scale, v.denominator)
    dims = {s: int(A[s] * scale) for s in ground.names}
    Mi = int(M * scale)

    cube = CubeCat.build(ground)
    model = delta_model(cube, dims)
    h = and_measure_from_model(model, method="ext" if verify_ext else "pathsum")
    h_target = int(h(inst.target))
    # the model's own M must agree with the LP constraint loads
    model_M = max((int(h(inst.family[i])) for i in prog.admissible), default=0)
    if model_M != int(max(loads, default=Fraction(0)) * scale):
        raise VerificationError("cohomological loads disagree with LP constraint loads",
                                {"dims": dims, "model_M": model_M})
    if Mi == 0:
        if h_target:
            raise ValueError("M = 0 with h(target) > 0: bound is vacuous")
        bound = Fraction(0)
    else:
        bound = Fraction(h_target, Mi)
    lp = lp_bound(prog)
    if lp.finite and bound > lp.value:
        raise VerificationError(f"recovered bound {bound} exceeds LP value {lp.value}", {"dims": dims})
    return LpRecovery(bound, lp.value, scale, dims, Mi, h_target)


def recover_from_dual(inst: AndInstance, verify_ext: bool = False) -> LpRecovery:
    """Use an optimal LP dual (alpha, M = 1) as sheaf dimensions."""
    prog = build_program(inst)
    lp = lp_bound(prog)
    if not lp.finite:
        raise ValueError("LP is infinite; no finite dual to recover from")
    rec = lp_recovery(inst, lp.dual, 1, verify_ext=verify_ext)
    if rec.bound != lp.value:
        raise VerificationError(f"dual-derived bound {rec.bound} != LP {lp.value}", {"dims": rec.dims})
    size = exact_size(inst)
    if size.value < rec.bound:
        raise VerificationError(f"bound {rec.bound} exceeds size {size.value}", {"dims": rec.dims})
    return rec


# ----------------------------------------------------------------------------
# exploratory reports


def edge_decomposition_report(model: CohomModel, Q: int, f: BoolFun) -> dict:
    """Compare cc(f) for F = skyscraper at Q with sum_{(A,B)} N_{P,Q}(A,B) cc_{A,B}(f).

    N_{P,Q}(A,B) = |Hom(P,A)| |Hom(B,Q)|, and cc_{A,B}(f) is the closed path sum
    with base A and F the skyscraper at B.  Diagnostic only.
    """
    cube, P = model.cube, model.P
    if P != cube.bottom or Q == cube.bottom:
        raise ValueError("report requires P = const0 and Q != const0")
    dag = cube.dag
    fld = model.F.field
    z = closed_complement(cube, f)
    lhs = cc_closed_pathsum(skyscraper(dag, Q, fld), P, z)
    from_p = hom_counts_from(dag, P)
    to_q = hom_counts_to(dag, Q)
    rhs = 0
    n_total = 0
    for A, B in dag.edges:
        n = from_p[A] * to_q[B]
        n_total += n
        if n:
            rhs += n * cc_closed_pathsum(skyscraper(dag, B, fld), A, z)
    return {
        "lhs": lhs, "rhs": rhs, "difference": rhs - lhs,
        "instance": {"ground": list(cube.ground.names), "P": cube.function(P).bitstring(),
                     "Q": cube.function(Q).bitstring(), "f": f.bitstring()},
        "edge_count_sum": n_total,
    }


@dataclass(frozen=True)
class BetaData:
    Q: int
    fq_dim: int
    vq_dim: int
    m_rank: int

    @property
    def beta(self) -> int:
        return self.fq_dim + self.vq_dim - 2 * self.m_rank


def _path_map(F: Presheaf, path) -> np.ndarray:
    """F(chi): F(t chi) -> F(start) for a path chi, composed along its edges."""
    fld = F.field
    out = fld.identity(F.dims[path.start])
    for k in path.edges:
        out = fld.matmul(out, F.maps[k])
    return out


def beta_data(F: Presheaf, Q: int, U_members: frozenset[int], cap: int = DEFAULT_DIM_CAP) -> BetaData:
    dag = F.dag
    ubar = frozenset(dag.vertices()) - U_members
    chis = [p for p in enumerate_paths(dag, Q, None, cap=cap) if in_hom_z(dag, p, ubar)]
    blocks = [_path_map(F, chi) for chi in chis]
    blocks = [b for b in blocks if b.shape[1]]
    vdim = sum(b.shape[1] for b in blocks)
    if blocks and F.dims[Q]:
        m = np.hstack(blocks)
        rank = F.field.rank(m)
    else:
        rank = 0
    return BetaData(Q, F.dims[Q], vdim, rank)


def beta_report(model: CohomModel, U, f: BoolFun, cap: int = DEFAULT_DIM_CAP) -> dict:
    """Direct cc(F, ((k_{P*})_U)_{U_f}) against sum over Hom_{Z_f}(P, Q), Q in Z_f, of beta(Q).

    ``rhs_reversed`` evaluates the same formula with the opposite variance.
    Diagnostic only.
    """
    cube, F, P = model.cube, model.F, model.P
    dag = cube.dag
    u = U if isinstance(U, OpenSet) else OpenSet(dag, U)
    G = extend_by_zero(kp_star(dag, P, F.field, cap), u.members)
    uf = smallest_open(cube, f)
    z = uf.complement()
    direct = ext_profile(F, extend_by_zero(G, uf.members)).cc
    hz = hom_z_counts(dag, z, P)
    Fop = opposite(F)
    rhs = rhs_rev = 0
    for q in sorted(z.members):
        if hz[q]:
            rhs += hz[q] * beta_data(F, q, u.members, cap).beta
            rhs_rev += hz[q] * beta_data(Fop, q, u.members, cap).beta
    return {
        "lhs": direct, "rhs": rhs, "difference": rhs - direct, "rhs_reversed": rhs_rev,
        "cc_F_G": ext_profile(F, G).cc,
        "instance": {"ground": list(cube.ground.names), "P": cube.function(P).bitstring(),
                     "U": [cube.function(v).bitstring() for v in sorted(u.members)],
                     "f": f.bitstring(), "dims": list(F.dims)},
    }
