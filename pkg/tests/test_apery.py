import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import numerical_set

from affsemi.apery import (
    NON_UNIQUE,
    UNIQUE_PROVEN,
    UNIQUE_UP_TO,
    apery_over_cyclic,
    apery_set,
    flatness_verdict,
    graded_elements,
    positivity_preservation,
    representation,
    representations,
)
from affsemi.errors import Cancelled, ContainmentError, PreconditionError
from affsemi.fibsum import ctx_new
from affsemi.semigroup import AffineSemigroup

N = AffineSemigroup.of


def test_apery_over_cyclic():
    # least elements of <3,5> in each class mod 3
    assert apery_over_cyclic(N(3, 5), 3) == (0, 5, 10)
    assert apery_over_cyclic(N(6, 10), 6) == (0, 10, 20)
    with pytest.raises(ContainmentError):
        apery_over_cyclic(N(3, 5), 7)


def test_small_apery_sets():
    rep = apery_set(N(3), N(6), 100)
    assert rep.elements == ((0,), (3,)) and rep.complete
    assert apery_set(N(3, 10), N(6, 10), 100).elements == ((0,), (3,))
    rep = apery_set(N((1, 0), (0, 1)), N((1, 1)), 3)
    assert set(rep.elements) == {(0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (3, 0), (0, 3)}
    assert not rep.complete


def test_completeness_needs_the_bound():
    # Apr(<3,5> / <3>) tops out at 10
    assert not apery_set(N(3, 5), N(3), 9).complete
    assert apery_set(N(3, 5), N(3), 10).complete


def test_graded_elements_sorted():
    assert graded_elements(N(2, 3), (1,), 7) == [(0,), (2,), (3,), (4,), (5,), (6,), (7,)]


def test_representations_of_fifteen():
    reps = representations(N(3, 5), N(6, 10), (15,))
    assert reps == [((10,), (5,)), ((12,), (3,))]
    # the default policy minimises the degree of t
    assert representation(N(3, 5), N(6, 10), (15,)) == ((10,), (5,))
    assert representation(N(3, 5), N(6, 10), (15,), policy="max-degree") == ((12,), (3,))


def test_flatness_verdicts():
    v = flatness_verdict(N(3, 10), N(6, 10))
    assert v.kind == UNIQUE_UP_TO and v.acceptable and v.witness is None
    v = flatness_verdict(N(3, 5), N(6, 10))
    assert v.kind == NON_UNIQUE and not v.acceptable
    t1, w1, t2, w2 = v.witness
    assert t1[0] + w1[0] == t2[0] + w2[0] == 15 and w1 < w2
    assert flatness_verdict(N(3, 5), N(10)).kind == UNIQUE_PROVEN
    assert flatness_verdict(N(3, 5), AffineSemigroup(1)).kind == UNIQUE_PROVEN
    assert flatness_verdict(N(3, 5), N(5, 3)).reason == "equal semigroups"


def test_preconditions():
    with pytest.raises(ContainmentError):
        apery_set(N(3, 5), N(4), 10)
    with pytest.raises(PreconditionError):
        apery_set(N(1, -1), N(1), 10)


def test_cancellation():
    ev = threading.Event()
    ev.set()
    with pytest.raises(Cancelled):
        apery_set(N((1, 0, 0), (0, 1, 0), (0, 0, 1)), N((1, 1, 1)), 40, cancel=ev)


def test_positivity_rules():
    numerical = ctx_new(N(3, 10), N(5, 6), N(6, 10))
    assert positivity_preservation(numerical).rule == "(ii)"
    rank2 = ctx_new(N((1, 0), (1, 1)), N((1, 1), (0, 1)), N((1, 1)))
    rep = positivity_preservation(rank2)
    assert rep.guaranteed and rep.rule == "(i)" and rep.caveat is None and rep.tilde_positive


numerical = st.lists(st.integers(2, 12), min_size=1, max_size=3)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(numerical, st.integers(1, 3), st.data())
def test_apery_defining_property(vals, k, data):
    sp = N(*vals)
    members = numerical_set(vals, 200)
    base_vals = sorted({k * data.draw(st.sampled_from(vals)) for _ in range(2)})
    s = N(*base_vals)
    rep = apery_set(sp, s, 80)
    base = numerical_set(base_vals, 80) - {0}
    got = {w[0] for w in rep.elements}
    # brute force: w is Apéry iff w - t leaves S' for every nonzero t of S
    want = {w for w in members if w <= 80 and all(w - t not in members for t in base if t <= w)}
    assert got == want


@settings(max_examples=40, deadline=None, derandomize=True)
@given(numerical, st.integers(1, 3))
def test_cyclic_base_gives_unique_representations(vals, k):
    sp = N(*vals)
    n = k * vals[0]
    for x in sorted(numerical_set(vals, 40)):
        assert len(representations(sp, N(n), (x,))) == 1
