from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ternalg.linalg import (
    Matrix,
    Subspace,
    inverse,
    nullspace,
    rref,
    solve,
    to_scalar,
)

small = st.integers(min_value=-3, max_value=3).map(Fraction)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return Matrix([[draw(small) for _ in range(c)] for _ in range(r)], c)


@st.composite
def subspace_pairs(draw, n=5):
    def vectors():
        return st.lists(st.lists(small, min_size=n, max_size=n), max_size=4)
    return Subspace.span(n, draw(vectors())), Subspace.span(n, draw(vectors()))


def test_to_scalar_parses_rationals():
    assert to_scalar("-3/6") == Fraction(-1, 2)
    assert to_scalar(4) == 4
    with pytest.raises((TypeError, ValueError)):
        to_scalar(0.5)


def test_matrix_product_and_apply():
    a = Matrix([[1, 2], [3, 4]], 2)
    b = Matrix([[0, 1], [1, 0]], 2)
    assert (a @ b).tolist() == [[2, 1], [4, 3]]
    assert a.apply((1, 1)) == (3, 7)
    assert a.commutator(Matrix.identity(2)).is_zero()


def test_inverse_and_singular():
    a = Matrix([[2, 1], [1, 1]], 2)
    assert a @ inverse(a) == Matrix.identity(2)
    with pytest.raises(ValueError):
        inverse(Matrix([[1, 2], [2, 4]], 2))


def test_solve_inconsistent_returns_none():
    m = Matrix([[1, 1], [2, 2]], 2)
    assert solve(m, (1, 3)) is None
    x = solve(m, (1, 2))
    assert m.apply(x) == (1, 2)


def test_zero_and_full_subspaces():
    assert Subspace.zero(3).dim == 0
    full = Subspace.full(3)
    assert full.dim == 3
    assert Subspace.zero(3).issubspace(full)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(m):
    mine, pivots = rref(m)
    ref, ref_pivots = sympy.Matrix(m.tolist()).rref()
    nonzero = [list(ref.row(i)) for i in range(len(ref_pivots))]
    assert [list(r) for r in mine.tolist()][:len(pivots)] == nonzero
    assert tuple(pivots) == tuple(ref_pivots)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_nullspace_residual_and_rank_nullity(m):
    ker = nullspace(m)
    for v in ker.basis:
        assert not any(m.apply(v))
    assert ker.dim + m.rank() == m.cols


@settings(max_examples=60, deadline=None)
@given(subspace_pairs())
def test_grassmann_formula(pair):
    u, w = pair
    assert (u + w).dim + (u & w).dim == u.dim + w.dim
    assert (u & w).issubspace(u) and (u & w).issubspace(w)
    assert u.issubspace(u + w) and w.issubspace(u + w)


@settings(max_examples=60, deadline=None)
@given(subspace_pairs())
def test_canonical_basis_is_idempotent(pair):
    u, _ = pair
    assert u.canonicalize() == u
    assert Subspace.span(u.ambient_dim, u.basis) == u
    # the canonical form does not depend on the spanning set chosen
    doubled = [tuple(2 * x for x in v) for v in u.basis] + list(u.basis)
    assert Subspace.span(u.ambient_dim, doubled) == u
