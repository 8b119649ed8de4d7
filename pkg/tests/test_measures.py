from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from andcohom.boolfun import BoolFun, GroundSet
from andcohom.cohomology import and_measure_from_model, delta_model
from andcohom.freecat import CubeCat, Path, enumerate_paths
from andcohom.generators import rng_for
from andcohom.measures import (
    Measure,
    NegationAsymmetry,
    PathMeasure,
    check_and_measure,
    chi_measure,
    chi_of_path,
    combine,
    conj_closed_complement_failure,
    depth_lower_bound,
    hom_z_paths,
    is_conj_closed_complement,
    linear_measure,
    path_measure,
    size_lower_bound,
    zero_measure,
)
from andcohom.setcover import INFINITE, AndInstance, exact_size

G2 = GroundSet(["a", "b"])
G3 = GroundSet(["a", "b", "c"])
CUBE3 = CubeCat.build(G3)
FUNCS3 = G3.all_functions()


def bf(ground, text):
    return BoolFun.from_bitstring(ground, text)


DEMAND_EXACT = AndInstance(bf(G2, "00"), [bf(G2, "01"), bf(G2, "10")])


def test_check_examples():
    assert check_and_measure(zero_measure(G3))
    assert check_and_measure(linear_measure(G3, {"a": 2, "b": 0, "c": Fraction(1, 3)}))
    # |f^-1(1)| is subadditive: (f & g) has no more ones than f
    assert check_and_measure(Measure(G3, lambda f: f.ones()))
    bottom = Measure(G3, lambda f: int(f.bits == 0))
    res = check_and_measure(bottom)
    assert not res
    f, g = res.witness
    assert bottom(f & g) > bottom(f) + bottom(g)


def test_check_on_explicit_domain():
    bottom = Measure(G3, lambda f: int(f.bits == 0))
    assert check_and_measure(bottom, [G3.const(0), G3.const(1)])
    assert not check_and_measure(bottom, [bf(G3, "100"), bf(G3, "010")])


def test_measure_memo_and_table():
    calls = []
    h = Measure(G2, lambda f: calls.append(f) or f.ones())
    assert h.table() == [0, 1, 1, 2]
    h.table()
    assert len(calls) == 4


def test_measure_rejects_negative_values():
    h = Measure(G2, lambda f: -1)
    with pytest.raises(ValueError):
        h(G2.const(0))


def test_size_lower_bound_examples():
    lp_measure = linear_measure(G2, {"a": 1, "b": 1})
    assert size_lower_bound(lp_measure, DEMAND_EXACT) == 2
    assert size_lower_bound(zero_measure(G2), DEMAND_EXACT) == 0


def test_size_lower_bound_infinite_when_no_admissible_mass():
    inst = AndInstance(bf(G2, "00"), [bf(G2, "11")])
    assert size_lower_bound(linear_measure(G2, {"a": 1, "b": 1}), inst) is INFINITE


def test_size_lower_bound_never_beats_size():
    h = and_measure_from_model(delta_model(CUBE3, {"a": 1, "b": 2, "c": 1}))
    rng = rng_for(0, 3)
    for _ in range(60):
        fam = [BoolFun(G3, int(b)) for b in rng.integers(0, 8, size=int(rng.integers(1, 6)))]
        for target in FUNCS3:
            inst = AndInstance(target, fam)
            b, size = size_lower_bound(h, inst), exact_size(inst).value
            assert b <= size


def test_depth_bound_exact_power():
    # constants weigh 4, everything else 1: invariant under negation
    h = Measure(G2, lambda f: 4 if f.bits in (0, 3) else 1)
    inst = AndInstance(G2.const(0), [bf(G2, "01"), bf(G2, "10")])
    d = depth_lower_bound(h, inst)
    assert d.ratio == 4 and d.exact == 2 and d.bracket == (2, 2)


def test_depth_bound_bracket():
    h = Measure(G2, lambda f: 3 if f.bits in (0, 3) else 1)
    inst = AndInstance(G2.const(0), [bf(G2, "01"), bf(G2, "10")])
    d = depth_lower_bound(h, inst)
    assert d.exact is None and d.bracket == (1, 2)


def test_depth_bound_needs_symmetry():
    with pytest.raises(NegationAsymmetry) as exc:
        depth_lower_bound(linear_measure(G2, {"a": 1, "b": 1}), DEMAND_EXACT)
    f = exc.value.witness
    assert f is not None


def test_depth_bound_constant_measure():
    h = Measure(G2, lambda f: len(f.zeros()) + f.ones())
    d = depth_lower_bound(h, DEMAND_EXACT)
    assert d.ratio == 1 and d.exact == 0


def test_conj_closed_complement_examples():
    assert is_conj_closed_complement([], G3)
    f0 = bf(G3, "101")
    B = [g for g in FUNCS3 if g & f0 != f0]
    assert is_conj_closed_complement(B, G3)
    g1, g2 = bf(G3, "110"), bf(G3, "011")
    g0 = g1 & g2
    assert not is_conj_closed_complement([g0], G3)
    assert conj_closed_complement_failure([g0], G3) is not None


def test_chi_measures():
    assert all(chi_measure([], G3)(g) == 0 for g in FUNCS3)
    f0 = bf(G3, "101")
    B1 = [g for g in FUNCS3 if g & f0 != f0]
    B2 = [g for g in FUNCS3 if not g("b")]
    assert check_and_measure(chi_measure(B1, G3))
    combo = combine([(2, chi_measure(B1, G3)), (3, chi_measure(B2, G3))])
    assert check_and_measure(combo)
    with pytest.raises(ValueError):
        chi_measure([bf(G3, "010")], G3)


def test_exhaustive_chi_sets_are_measures():
    # every conj-closed complement on |S| = 2 gives a measure, and only those do
    funcs = G2.all_functions()
    for mask in range(1 << len(funcs)):
        B = [funcs[k] for k in range(len(funcs)) if mask >> k & 1]
        chi = Measure(G2, lambda f, m=mask: m >> f.index & 1)
        assert bool(check_and_measure(chi)) == is_conj_closed_complement(B, G2)


def test_path_measure_length_one_paths():
    dag = CUBE3.dag
    weights = {Path(0, (k,)): 1 for k in dag.out_edges[0]}
    h = path_measure(PathMeasure(CUBE3, 0, weights))
    ref = linear_measure(G3, {s: 1 for s in G3.names})
    assert all(h(g) == ref(g) for g in FUNCS3)


def test_zero_path_measure():
    h = path_measure(PathMeasure(CUBE3, 0, {}))
    assert all(h(g) == 0 for g in FUNCS3)


def test_path_measure_rejects_bad_weights():
    with pytest.raises(ValueError):
        PathMeasure(CUBE3, 0, {Path(1, ()): 1})
    with pytest.raises(ValueError):
        PathMeasure(CUBE3, 0, {Path(0, ()): -1})


def test_hom_z_path_sets_cover_conjunction():
    for f in FUNCS3:
        for g in FUNCS3:
            both = hom_z_paths(CUBE3, 0, f) | hom_z_paths(CUBE3, 0, g)
            assert hom_z_paths(CUBE3, 0, f & g) <= both


def test_chi_of_path_matches_single_path_measure():
    for path in enumerate_paths(CUBE3.dag, 0)[:20]:
        B = chi_of_path(CUBE3, 0, path)
        assert is_conj_closed_complement(B, G3)
        h = path_measure(PathMeasure(CUBE3, 0, {path: 1}))
        chi = chi_measure(B, G3)
        assert all(h(g) == chi(g) for g in FUNCS3)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000))
def test_random_path_measures_are_subadditive(seed):
    rng = rng_for(seed)
    paths = enumerate_paths(CUBE3.dag, 0)
    chosen = rng.choice(len(paths), size=int(rng.integers(1, 8)), replace=False)
    weights = {paths[int(k)]: Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 4))) for k in chosen}
    assert check_and_measure(path_measure(PathMeasure(CUBE3, 0, weights)))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=4, max_size=4))
def test_linear_measures_sampled_at_larger_ground(A):
    g = GroundSet.of_size(4)
    h = linear_measure(g, dict(zip(g.names, A)))
    assert check_and_measure(h)


def test_cube_model_sampled_at_eight_points():
    g = GroundSet.of_size(8)
    cube = CubeCat.build(g)
    rng = rng_for(0, 8)
    A = {s: int(rng.integers(0, 4)) for s in g.names}
    h = and_measure_from_model(delta_model(cube, A))
    ref = linear_measure(g, A)
    for _ in range(300):
        f, k = (BoolFun(g, int(x)) for x in rng.integers(0, 256, size=2))
        assert h(f & k) <= h(f) + h(k)
        assert h(f) == ref(f)
