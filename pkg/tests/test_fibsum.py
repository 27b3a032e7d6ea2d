import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import combine, combos

from affsemi.apery import positivity_preservation
from affsemi.errors import ContainmentError, NonIntegralImage, PreconditionError
from affsemi.exactlat import lattice_from_rows
from affsemi.fibsum import (
    MonoidHom,
    cancellative_witness,
    compare_with_sum,
    ctx_new,
    eq_cancellative,
    eq_torsionfree,
    gp_condition,
    gp_condition_in_tilde,
    is_torsion_free,
    tilde_presentation,
    torsion_witness,
)
from affsemi.semigroup import AffineSemigroup, equal_as_submonoids, member

N = AffineSemigroup.of


def test_relation_lattice_over_6n():
    ctx = ctx_new(N(2), N(3), N(6))
    assert ctx.rel == lattice_from_rows(2, [(6, -6)])
    assert ctx.quot.free_rank == 1
    tp = tilde_presentation(ctx)
    assert tp.semigroup == N(2, 3)
    assert tp.image((6,), (0,)) == tp.image((0,), (6,)) == (6,)


def test_witness_over_6n_is_valid():
    ctx = ctx_new(N(2), N(3), N(6))
    x, y = ctx.element((6,), (0,)), ctx.element((0,), (6,))
    assert eq_cancellative(x, y)
    p, q = cancellative_witness(x, y)
    assert member(N(6), p).is_yes and member(N(6), q).is_yes
    assert x.a[0] + p[0] == y.a[0] + q[0]
    assert x.b[0] + q[0] == y.b[0] + p[0]


def test_torsion_over_12n():
    ctx = ctx_new(N(2), N(3), N(12))
    assert not is_torsion_free(ctx)
    assert ctx.quot.torsion_invariants == (2,)
    v, order = torsion_witness(ctx)
    assert order == 2
    assert v not in ctx.rel and tuple(2 * c for c in v) in ctx.rel
    x, y = ctx.element((6,), (0,)), ctx.element((0,), (6,))
    assert cancellative_witness(x, y) is None
    assert eq_torsionfree(x, y) and eq_cancellative(2 * x, 2 * y)
    assert torsion_witness(ctx_new(N(2), N(3), N(6))) is None


def test_homomorphisms_other_than_inclusion():
    # N <- N -> N with 1 -> 2 and 1 -> 3: the pushout is <2, 3>
    ctx = ctx_new(N(1), N(1), N(1), [[2]], [[3]])
    assert is_torsion_free(ctx)
    assert equal_as_submonoids(tilde_presentation(ctx).semigroup, N(2, 3))
    with pytest.raises(NonIntegralImage):
        MonoidHom(N(2), N(1), [["1/4"]])
    with pytest.raises(ContainmentError):
        MonoidHom(N(1), N(2), [[3]])


def test_hom_injectivity():
    assert MonoidHom(N(1), N(1), [[2]]).is_injective
    assert not MonoidHom(N((1, 0), (0, 1)), N(1), [[1, 1]]).is_injective


def test_elements_are_checked():
    ctx = ctx_new(N(2), N(3), N(6))
    with pytest.raises(ContainmentError):
        ctx.element((3,), (0,))
    other = ctx_new(N(2), N(3), N(12))
    with pytest.raises(PreconditionError):
        eq_cancellative(ctx.element((2,), (0,)), other.element((2,), (0,)))


def test_rank_drop_example():
    ctx = ctx_new(N((1, 0), (1, 1)), N((1, 1), (0, 1)), N((1, 1)))
    assert ctx.rel == lattice_from_rows(4, [(1, 1, -1, -1)])
    cmp = compare_with_sum(ctx, 2)
    assert (cmp.verdict, cmp.reason, cmp.free_rank, cmp.sum_rank) == ("NotIsomorphic", "rank-drop", 3, 2)


def test_compare_reasons():
    assert compare_with_sum(ctx_new(N(2), N(3), N(6)), 1).reason == "rank-condition"
    s1 = N((4, 0, 0), (3, 1, 0), (2, 2, 0), (1, 3, 0))
    s2 = N((3, 3, 0), (3, 2, 1), (3, 1, 2), (3, 0, 3))
    cmp = compare_with_sum(ctx_new(s1, s2, N((6, 6, 0))), 3)
    assert (cmp.verdict, cmp.reason) == ("Isomorphic", "gp-condition")


def test_compare_rejects_inconsistent_embeddings():
    ctx = ctx_new(N(2), N(3), N(6))
    with pytest.raises(PreconditionError):
        compare_with_sum(ctx, 1, [[1]], [[2]])


def test_not_positive_example():
    s1, s2 = N((1, -1), (0, 1)), N((1, 1), (0, -1))
    s = N((1, 1), (1, -1))
    ctx = ctx_new(s1, s2, s)
    assert not gp_condition(s1, s2, s)
    assert not gp_condition_in_tilde(ctx)
    rep = positivity_preservation(ctx)
    assert not rep.guaranteed and not rep.tilde_positive
    assert not tilde_presentation(ctx).semigroup.positivity[0]


def test_gp_condition_requires_containment():
    with pytest.raises(ContainmentError):
        gp_condition(N(2), N(3), N(4))


def test_tilde_generator_map():
    ctx = ctx_new(N(3, 10), N(5, 6), N(6, 10))
    tp = tilde_presentation(ctx)
    gm = tp.gen_map
    assert {gm[(1, 0)], gm[(1, 1)], gm[(2, 0)], gm[(2, 1)]} == {(3,), (10,), (5,), (6,)}


def test_trivial_base():
    ctx = ctx_new(N(2), N(3), AffineSemigroup(1))
    tp = tilde_presentation(ctx)
    assert tp.rank == 2 and is_torsion_free(ctx)


@settings(max_examples=50, deadline=None, derandomize=True)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 4))
def test_cyclic_pushouts(p, q, k):
    # pN and qN over mN, m = k * lcm(p, q): torsion of order k exactly
    m = k * math.lcm(p, q)
    ctx = ctx_new(N(p), N(q), N(m))
    assert is_torsion_free(ctx) == (k == 1)
    if k > 1:
        assert ctx.quot.torsion_invariants == (k,)
    tp = tilde_presentation(ctx)
    g = math.gcd(p, q)
    assert equal_as_submonoids(tp.semigroup, N(p // g, q // g))


SHIPPED_EQUAL_PAIRS = [
    ((N(2), N(3), N(6)), ((6,), (0,)), ((0,), (6,))),
    ((N(2), N(3), N(12)), ((12,), (0,)), ((0,), (12,))),
    ((N(3, 10), N(5, 6), N(6, 10)), ((10,), (5,)), ((0,), (15,))),
    ((N((1, 0), (1, 1)), N((1, 1), (0, 1)), N((1, 1))), ((2, 1), (0, 0)), ((1, 0), (1, 1))),
    ((N((4, 0, 0), (3, 1, 0), (2, 2, 0), (1, 3, 0)), N((3, 3, 0), (3, 2, 1), (3, 1, 2), (3, 0, 3)),
      N((6, 6, 0))), ((6, 6, 0), (0, 0, 0)), ((0, 0, 0), (6, 6, 0))),
]


@pytest.mark.parametrize("triple,p1,p2", SHIPPED_EQUAL_PAIRS)
def test_equal_pairs_have_small_explicit_witnesses(triple, p1, p2):
    s1, s2, s = triple
    ctx = ctx_new(s1, s2, s)
    x, y = ctx.element(*p1), ctx.element(*p2)
    assert eq_cancellative(x, y)
    # p, q in S with x.a + p = y.a + q and x.b + q = y.b + p, coefficient sums <= 20
    elems = [combine(c, s.generators) for c in combos(len(s.generators), 20)]
    found = any(
        all(a + pp == b + qq for a, b, pp, qq in zip(x.a, y.a, p, q))
        and all(a + qq == b + pp for a, b, pp, qq in zip(x.b, y.b, p, q))
        for p in elems for q in elems)
    assert found
