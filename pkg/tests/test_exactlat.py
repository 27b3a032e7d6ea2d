from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import mat_mul, random_unimodular

from affsemi.errors import ContainmentError, DimensionMismatch
from affsemi.exactlat import (
    determinant,
    full_lattice,
    hnf,
    invariant_factors,
    lattice_contains,
    lattice_from_rows,
    lattice_intersect,
    lattice_sum,
    quotient_structure,
    rational_rank,
    saturation,
    snf,
    solve_rational,
    zero_lattice,
)


def test_hnf_dependent_rows():
    h, u = hnf([[2, 4], [3, 6]])
    assert h == ((1, 2), (0, 0))
    assert [list(r) for r in mat_mul(u, [[2, 4], [3, 6]])] == [[1, 2], [0, 0]]


def test_hnf_reduces_above_pivots():
    h, _ = hnf([[1, 5], [0, 3]])
    assert h == ((1, 2), (0, 3))


def test_snf_diagonal():
    d, _, _ = snf([[2, 0], [0, 3]])
    assert d == ((1, 0), (0, 6))
    assert invariant_factors([[4, 6], [6, 4]]) == [2, 10]


def test_empty_matrix_shapes():
    h, u = hnf([], ncols=3)
    assert h == () and u == ()
    assert lattice_from_rows(3, []) == zero_lattice(3)


def test_lattice_equality_ignores_presentation():
    a = lattice_from_rows(2, [(2, 0), (0, 2)])
    b = lattice_from_rows(2, [(2, 2), (2, 0), (4, 6)])
    assert a == b
    assert (2, -4) in a and (1, 0) not in a
    assert a.coordinates((4, 6)) == (2, 3)


def test_intersection_and_sum():
    two = lattice_from_rows(1, [(2,)])
    three = lattice_from_rows(1, [(3,)])
    assert lattice_intersect(two, three) == lattice_from_rows(1, [(6,)])
    assert lattice_sum(two, three) == full_lattice(1)
    assert lattice_contains(two, lattice_from_rows(1, [(4,)]))
    assert lattice_intersect(two, zero_lattice(1)) == zero_lattice(1)


def test_intersection_in_rank_two():
    # x even and x + y divisible by 3
    l1 = lattice_from_rows(2, [(2, 0), (0, 1)])
    l2 = lattice_from_rows(2, [(1, -1), (0, 3)])
    inter = lattice_intersect(l1, l2)
    brute = {(x, y) for x in range(-6, 7) for y in range(-6, 7) if x % 2 == 0 and (x + y) % 3 == 0}
    assert {(x, y) for x in range(-6, 7) for y in range(-6, 7) if (x, y) in inter} == brute


def test_saturation_and_quotient():
    amb = full_lattice(2)
    lat = lattice_from_rows(2, [(2, 4)])
    assert saturation(amb, lat) == lattice_from_rows(2, [(1, 2)])
    q = quotient_structure(amb, lat)
    assert q.free_rank == 1
    assert q.torsion_invariants == (2,)
    t = q.torsion_elements[0]
    assert t not in lat and tuple(2 * c for c in t) in lat


def test_quotient_by_full_rank():
    q = quotient_structure(full_lattice(2), lattice_from_rows(2, [(2, 0), (0, 3)]))
    assert q.free_rank == 0 and q.torsion_invariants == (6,)
    assert q.project((5, 7)) == ()


def test_quotient_projection_kills_sub():
    amb = lattice_from_rows(3, [(1, 0, 0), (0, 2, 0), (0, 0, 1)])
    lat = lattice_from_rows(3, [(1, 2, 1)])
    q = quotient_structure(amb, lat)
    assert q.free_rank == 2 and q.torsion_invariants == ()
    assert q.project((1, 2, 1)) == (0, 0)
    with pytest.raises(ContainmentError):
        q.project((0, 1, 0))


def test_containment_and_dimension_errors():
    with pytest.raises(ContainmentError):
        saturation(lattice_from_rows(1, [(2,)]), full_lattice(1))
    with pytest.raises(DimensionMismatch):
        lattice_from_rows(2, [(1, 2, 3)])
    with pytest.raises(DimensionMismatch):
        lattice_intersect(full_lattice(1), full_lattice(2))


def test_solve_rational_cases():
    assert solve_rational([[2]], [[4]]) == (1, ((Fraction(2),),))
    assert solve_rational([[1], [1]], [[1], [2]])[0] == 0
    count, x = solve_rational([[1, 1]], [[3]])
    assert count == -1 and x[0][0] + x[1][0] == 3


def test_determinant_and_rank():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert rational_rank([[1, 2], [2, 4], [0, 0]]) == 1
    assert rational_rank([[Fraction(1, 2), 1], [1, 1]]) == 2


matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=1, max_size=4))


@settings(max_examples=60, deadline=None, derandomize=True)
@given(matrices, st.randoms(use_true_random=False))
def test_lattice_from_rows_is_basis_free(m, rnd):
    p = random_unimodular(rnd, len(m))
    c = len(m[0])
    assert lattice_from_rows(c, m) == lattice_from_rows(c, mat_mul(p, m))


@settings(max_examples=60, deadline=None, derandomize=True)
@given(matrices)
def test_intersection_is_contained_in_both(m):
    c = len(m[0])
    l1 = lattice_from_rows(c, m)
    l2 = lattice_from_rows(c, [[2 * x for x in r] for r in m[::-1]] + [[3] * c])
    inter = lattice_intersect(l1, l2)
    assert lattice_contains(l1, inter) and lattice_contains(l2, inter)
    # L2 is spanned partly by 2 L1, so 2 L1 lies in both
    assert lattice_contains(inter, l1.scaled(2))
