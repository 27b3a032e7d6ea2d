"""One test per acceptance criterion; conftest prints a PASS/FAIL line for each."""
import math
from itertools import combinations

import pytest
import suites

from affsemi.algebra import Algebra, EmbeddedRing, apery_transport, flat_base_change
from affsemi.apery import NON_UNIQUE, UNIQUE_PROVEN, UNIQUE_UP_TO, flatness_verdict
from affsemi.exactlat import lattice_from_rows, lattice_intersect
from affsemi.fibsum import (
    compare_with_sum,
    ctx_new,
    eq_cancellative,
    eq_torsionfree,
    factor_through,
    gp_condition,
    is_torsion_free,
    tilde_presentation,
)
from affsemi.gluing import IMPOSSIBLE, GluingQuery, can_glue_with, search_gluing
from affsemi.semigroup import AffineSemigroup, equal_as_submonoids

N = AffineSemigroup.of


def test_criterion_1_torsion_dichotomy():
    free = ctx_new(N(2), N(3), N(6))
    assert is_torsion_free(free)
    assert equal_as_submonoids(tilde_presentation(free).semigroup, N(2, 3))
    tors = ctx_new(N(2), N(3), N(12))
    assert not is_torsion_free(tors)
    x, y = tors.element((6,), (0,)), tors.element((0,), (6,))
    assert eq_cancellative(x, y) is False
    assert eq_torsionfree(x, y) is True


SUBSETS = [c for k in range(1, 5) for c in combinations((4, 5, 6, 7), k)] + [(8,), (12, 13), (20, 21, 22)]


@pytest.mark.parametrize("gens", SUBSETS, ids=lambda g: "-".join(map(str, g)))
def test_criterion_2_numerical_fibered_sums(gens):
    ctx = ctx_new(N(2, 5), N(3, 4, 5), N(*gens))
    # gp(S1) ∩ gp(S2) = Z, so torsion disappears exactly when gcd(S) = 1
    assert is_torsion_free(ctx) == (math.gcd(*gens) == 1)
    assert equal_as_submonoids(tilde_presentation(ctx).semigroup, N(2, 3))


def test_criterion_2_torsion_detected():
    ctx = ctx_new(N(3, 10), N(5, 6), N(6, 10))
    assert equal_as_submonoids(tilde_presentation(ctx).semigroup, N(3, 5))
    assert ctx.quot.torsion_invariants == (2,)
    assert not is_torsion_free(ctx)


def test_criterion_3_rank_obstruction():
    s1, s2, s = N((1, 0), (1, 1)), N((1, 1), (0, 1)), N((1, 1))
    ctx = ctx_new(s1, s2, s)
    assert tilde_presentation(ctx).rank == 3
    assert lattice_from_rows(2, s1.generators + s2.generators).rank == 2
    cmp = compare_with_sum(ctx, 2)
    assert cmp.verdict == "NotIsomorphic"
    x, y = cmp.witness
    # same point of Z^2, different classes in the fibered sum
    assert tuple(p + q for p, q in zip(x.a, x.b)) == tuple(p + q for p, q in zip(y.a, y.b))
    assert not eq_torsionfree(x, y)


GIM_S1 = N((4, 0, 0), (3, 1, 0), (2, 2, 0), (1, 3, 0))
GIM_S2 = N((3, 3, 0), (3, 2, 1), (3, 1, 2), (3, 0, 3))


def test_criterion_4_lattice_criterion():
    inter = lattice_intersect(GIM_S1.group, GIM_S2.group)
    assert inter == lattice_from_rows(3, [(6, 6, 0)])
    assert gp_condition(GIM_S1, GIM_S2, N((6, 6, 0)))
    rep = can_glue_with(GluingQuery(GIM_S1, GIM_S2, 1, 1))
    assert rep.is_yes and rep.w == (6, 6, 0)


def test_criterion_5_gluing_decisions():
    c1 = N((2, 1, 0), (1, 1, 1), (0, 1, 2))
    c2 = N((1, 2, 0), (1, 1, 1), (1, 0, 2))
    rep = can_glue_with(GluingQuery(c1, c2, 1, 1))
    assert rep.is_yes and rep.w == (1, 1, 1)
    quadric = N((2, 0), (1, 1), (0, 2))
    cubic = N((3, 0), (2, 1), (1, 2), (0, 3))
    assert search_gluing(quadric, quadric).verdict == IMPOSSIBLE
    assert search_gluing(cubic, cubic).verdict == IMPOSSIBLE


def test_criterion_6_flatness_verdicts():
    v = flatness_verdict(N(3, 10), N(6, 10))
    assert v.kind == UNIQUE_UP_TO and v.bound == 100 and v.witness is None
    v = flatness_verdict(N(3, 5), N(6, 10))
    assert v.kind == NON_UNIQUE
    t1, w1, t2, w2 = v.witness
    assert {(t1, w1), (t2, w2)} == {((12,), (3,)), ((10,), (5,))}
    assert flatness_verdict(N(3, 5), N(10)).kind == UNIQUE_PROVEN


def _algebras(n):
    x3 = EmbeddedRing(N(3), 1, ("X",))
    x2 = EmbeddedRing(N(2), 1, ("X",))
    base = EmbeddedRing(N(6 * n), 1, ("X",))
    return Algebra(x3, base), Algebra(x2, base)


def test_criterion_7_apery_transport():
    tr = apery_transport(*_algebras(1))
    assert tr.source == ((0,), (3,))
    bc = flat_base_change(*_algebras(1))
    assert set(tr.images) == {bc.presentation.image((0,), (0,)), bc.presentation.image((3,), (0,))}
    assert set(tr.images) == set(tr.target)
    assert tr.non_apery_images == ()
    tr2 = apery_transport(*_algebras(2))
    bc2 = flat_base_change(*_algebras(2))
    six = bc2.presentation.image((6,), (0,))
    assert six in tr2.images
    assert six in tr2.non_apery_images


SUITES = {
    "hnf-snf": suites.hnf_snf_suite,
    "membership": suites.membership_suite,
    "saturation": suites.saturation_suite,
    "congruence": suites.congruence_suite,
    "torsion-equivalence": suites.torsion_equivalence_suite,
    "gcd-law": suites.gcd_law_suite,
}


@pytest.mark.parametrize("name", list(SUITES))
def test_criterion_8_property_suites(name):
    failures = SUITES[name]()
    assert failures == []


def test_criterion_9_universal_property():
    ctx = ctx_new(N(2), N(3), N(6))
    tp = tilde_presentation(ctx)
    unique = 0
    for w in [(i, j) for i in range(10) for j in range(10)]:
        # phi1(2) = 2w, phi2(3) = 3w agree on 6
        t1, t2 = [tuple(2 * c for c in w)], [tuple(3 * c for c in w)]
        count, x = factor_through(tp, t1, t2)
        assert count == 1
        assert all(v.denominator == 1 and v >= 0 for r in x for v in r)
        for img, t in zip(tp.images1 + tp.images2, t1 + t2):
            assert tuple(sum(a * r[j] for a, r in zip(img, x)) for j in range(2)) == t
        unique += 1
    assert unique == 100
