"""Exact integer linear algebra: Smith normal form, kernels, abelian invariants."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from x4circle import intlinalg
from x4circle.intlinalg import (
    abelian_invariants,
    det,
    integer_kernel,
    mat_mul,
    primitive,
    smith_normal_form,
)


small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda rows: st.integers(min_value=1, max_value=4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(min_value=-30, max_value=30), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


def is_diagonal_chain(diag):
    for i in range(len(diag) - 1):
        d1, d2 = diag[i], diag[i + 1]
        if d1 == 0 and d2 != 0:
            return False
        if d1 != 0 and d2 % d1 != 0:
            return False
    return all(d >= 0 for d in diag)


@given(small_matrices)
@settings(max_examples=300, deadline=None)
def test_smith_form_is_equivalent_diagonal(a):
    snf = smith_normal_form(a)
    u = [list(r) for r in snf.left]
    v = [list(r) for r in snf.right]
    prod = mat_mul(mat_mul(u, a), v)
    for i, row in enumerate(prod):
        for j, x in enumerate(row):
            expected = snf.diag[i] if i == j and i < len(snf.diag) else 0
            assert x == expected
    assert abs(det(u)) == 1
    assert abs(det(v)) == 1
    assert is_diagonal_chain(snf.diag)


@given(small_matrices)
@settings(max_examples=200, deadline=None)
def test_kernel_vectors_annihilate(a):
    basis = integer_kernel(a)
    for vec in basis:
        for row in a:
            assert sum(x * y for x, y in zip(row, vec)) == 0
    # rank-nullity over Q
    snf = smith_normal_form(a)
    rank = sum(1 for d in snf.diag if d != 0)
    assert len(basis) == len(a[0]) - rank


def test_det_known_values():
    assert det([[2, 0], [0, 3]]) == 6
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[2, 4], [1, 2]]) == 0
    assert det([]) == 1


def test_primitive():
    assert primitive([4, -2, 6]) == [2, -1, 3]
    assert primitive([0, 0]) == [0, 0]
    assert primitive([5]) == [1]
    assert primitive([0, 7, 0]) == [0, 1, 0]


def test_abelian_invariants_examples():
    # Z/2 x Z/3 = Z/6 in invariant-factor form
    inv = abelian_invariants([[2, 0], [0, 3]], 2)
    assert inv.torsion == (6,)
    assert inv.free_rank == 0
    assert inv.order == 6
    # a free factor survives
    inv = abelian_invariants([[2, 0]], 2)
    assert inv.free_rank == 1
    assert inv.order is None
    # unit factors are dropped
    inv = abelian_invariants([[1, 0], [0, 5]], 2)
    assert inv.torsion == (5,)
    # no relations at all
    inv = abelian_invariants([], 3)
    assert inv.free_rank == 3 and inv.torsion == ()


def test_abelian_invariants_rejects_ragged_rows():
    with pytest.raises(ValueError):
        abelian_invariants([[1, 2, 3]], 2)


@given(
    st.lists(st.integers(min_value=-40, max_value=40), min_size=2, max_size=2).filter(
        lambda r: r != [0, 0]
    )
)
@settings(max_examples=100, deadline=None)
def test_order_of_2x2_group_matches_determinant(row):
    # |Z^2 / <(a, b), (c, d)>| = |ad - bc| when nonzero
    a, b = row
    mat = [[a, b], [-b, a]]
    inv = abelian_invariants(mat, 2)
    d = abs(det(mat))
    if d == 0:
        assert not inv.finite
    else:
        assert inv.order == d
