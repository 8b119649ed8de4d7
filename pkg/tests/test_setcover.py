from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from andcohom.boolfun import BoolFun, GroundSet, conj_all
from andcohom.generators import random_instance, rng_for
from andcohom.setcover import (
    INFINITE,
    AndInstance,
    build_program,
    cube_ground,
    demanders,
    exact_size,
    exactness_certificate,
    literal_size,
    literals,
    lp_bound,
)

AB = GroundSet(["a", "b"])
A = GroundSet(["a"])


def inst(ground, target, family):
    return AndInstance(BoolFun.from_bitstring(ground, target),
                       [BoolFun.from_bitstring(ground, b) for b in family])


DEMAND_EXACT = inst(AB, "00", ["01", "10"])
INFEASIBLE = inst(A, "0", ["1"])


def brute_size(instance):
    """Smallest subset of the family whose conjunction is the target."""
    g = instance.ground
    for k in range(len(instance.family) + 1):
        for combo in combinations(instance.family, k):
            if conj_all(g, combo) == instance.target:
                return k
    return INFINITE


def test_program_of_demand_exact_instance():
    prog = build_program(DEMAND_EXACT)
    assert prog.admissible == (0, 1)
    assert prog.universe == ("a", "b")
    assert prog.coverage == {0: frozenset({"a"}), 1: frozenset({"b"})}


def test_program_target_is_member():
    i = inst(AB, "10", ["10"])
    prog = build_program(i)
    assert set(prog.universe) == {"b"} and prog.coverage[0] == frozenset({"b"})


def test_empty_universe():
    i = inst(AB, "11", ["11", "01"])
    assert build_program(i).universe == ()
    assert exact_size(i).value == 0
    assert lp_bound(build_program(i)).value == 0


def test_exact_size_examples():
    assert exact_size(DEMAND_EXACT).value == 2
    assert exact_size(inst(AB, "10", ["10", "11"])).value == 1
    assert exact_size(INFEASIBLE).value is INFINITE


def test_lp_demand_exact():
    lp = lp_bound(build_program(DEMAND_EXACT))
    assert lp.value == 2
    assert lp.dual == {"a": 1, "b": 1}
    assert sum(lp.primal.values()) == 2


def test_lp_infeasible_has_unbounded_dual():
    lp = lp_bound(build_program(INFEASIBLE))
    assert lp.value is INFINITE and not lp.finite
    assert lp.dual_ray == "a"


def test_lp_fractional_optimum():
    # three points, each pair covered by one member: LP = 3/2, size = 2
    g = GroundSet(["a", "b", "c"])
    i = inst(g, "000", ["001", "100", "010"])
    assert lp_bound(build_program(i)).value == Fraction(3, 2)
    assert exact_size(i).value == 2


def test_demanders_examples():
    assert demanders(build_program(DEMAND_EXACT)) == {0: {"a"}, 1: {"b"}}
    twins = build_program(inst(AB, "00", ["01", "01", "10"]))
    d = demanders(twins)
    assert d[0] == set() and d[1] == set()
    single = build_program(inst(AB, "00", ["00"]))
    assert demanders(single) == {0: {"a", "b"}}


def test_certificate_examples():
    cert = exactness_certificate(build_program(DEMAND_EXACT))
    assert cert is not None and cert.value == 2 and cert.alpha == {"a": 1, "b": 1}
    # f3 = f1 & f2 is redundant: every point covered twice
    redundant = inst(AB, "00", ["01", "10", "00"])
    assert exactness_certificate(build_program(redundant)) is None
    one = exactness_certificate(build_program(inst(AB, "01", ["01"])))
    assert one is not None and one.value == 1


def test_certificate_absent_when_infeasible():
    # a demands member 0, but b is covered by nobody
    i = inst(AB, "00", ["01"])
    assert all(demanders(build_program(i)).values())
    assert exactness_certificate(build_program(i)) is None


def test_demand_complete_feasible_instances_are_exact():
    rng = rng_for(0, 7)
    seen = 0
    for _ in range(400):
        i = random_instance(rng, 8, 6)
        prog = build_program(i)
        size = exact_size(i)
        if prog.admissible and all(demanders(prog).values()) and size.finite:
            seen += 1
            assert lp_bound(prog).value == size.value == len(prog.admissible)
    assert seen > 0


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6), st.data())
def test_size_matches_brute_force(n, data):
    g = GroundSet.of_size(n)
    target = BoolFun(g, data.draw(st.integers(0, (1 << n) - 1)))
    fam = [BoolFun(g, v) for v in data.draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=6))]
    i = AndInstance(target, fam)
    res = exact_size(i)
    assert res.value == brute_size(i)
    lp = lp_bound(build_program(i))
    assert lp.value <= res.value
    if res.finite:
        assert conj_all(g, (fam[k] for k in res.witness)) == target


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.data())
def test_lp_dual_feasible_and_tight(n, data):
    g = GroundSet.of_size(n)
    target = BoolFun(g, data.draw(st.integers(0, (1 << n) - 1)))
    fam = [BoolFun(g, target.bits | v) for v in data.draw(st.lists(st.integers(0, (1 << n) - 1),
                                                                    min_size=1, max_size=6))]
    prog = build_program(AndInstance(target, fam))
    lp = lp_bound(prog)
    if not lp.finite:
        return
    for i in prog.admissible:
        assert sum(lp.dual[s] for s in prog.coverage[i]) <= 1
        assert lp.primal[i] >= 0
    for s in prog.universe:
        assert sum(lp.primal[i] for i in prog.admissible if s in prog.coverage[i]) >= 1
    assert sum(lp.dual.values()) == sum(lp.primal.values()) == lp.value


def test_literal_examples():
    g = cube_ground(2)
    lits = dict(literals(2, g))
    r = literal_size(2, lits["x1"] & lits["x2"])
    assert r.size.value == 2 and r.lp.value == 2
    assert literal_size(2, lits["x1"]).size.value == 1
    xor = BoolFun.from_values(g, [int(p[0] != p[1]) for p in g.names])
    r = literal_size(2, xor)
    assert not r.size.finite and not r.lp.finite


def test_literal_finite_cases_are_lp_exact():
    for n in (2, 3):
        for f in cube_ground(n).all_functions():
            r = literal_size(n, f)
            if r.size.finite:
                assert r.lp.value == r.size.value
                assert r.is_conjunction
            else:
                assert not r.lp.finite


def test_literal_satisfiable_conjunctions_count_leftovers():
    # for satisfiable conjunctions the leftover literals are the conjuncts
    for n in (2, 3):
        for f in cube_ground(n).all_functions():
            r = literal_size(n, f)
            if r.size.finite and f.bits:
                assert r.size.value == len(r.leftover)


def test_literal_const0_is_size_two():
    for n in (2, 3):
        r = literal_size(n, cube_ground(n).const(0))
        assert r.size.value == 2 == r.lp.value
        assert len(r.leftover) == 2 * n


def test_infinite_ordering():
    assert INFINITE > 10**9 and not INFINITE < 3 and INFINITE == INFINITE
    assert Fraction(1, 2) <= INFINITE


def test_empty_family_rejected():
    with pytest.raises(ValueError):
        AndInstance(AB.const(0), [])
