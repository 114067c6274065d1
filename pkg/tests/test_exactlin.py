from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import nullspace_dim
from tphopf.exactlin import (
    Matrix,
    RowEchelon,
    Subspace,
    TensorIndex,
    format_rational,
    kernel,
    kernel_of_rows,
    kron,
    solve_linear_system,
    subspace_ops,
    to_rational,
    unit_vector,
)

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_to_rational_canonical():
    assert to_rational("2/4") == Fraction(1, 2)
    assert format_rational(to_rational("2/4")) == "1/2"
    assert format_rational(to_rational("-6/3")) == "-2"
    assert to_rational(3) == 3


@pytest.mark.parametrize("bad", ["1/0", "abc", "1.5", "", None])
def test_to_rational_rejects(bad):
    with pytest.raises((ValueError, TypeError, ZeroDivisionError)):
        to_rational(bad)


def test_tensor_index_roundtrip():
    ti = TensorIndex(2, 3, 4)
    assert ti.size == 24
    for i in range(24):
        assert ti.flatten(*ti.unflatten(i)) == i
    assert ti.flatten(1, 2, 3) == 1 * 12 + 2 * 4 + 3


def test_kernel_example():
    k = Matrix([[1, 1], [2, 2]]).kernel()
    assert k.dim == 1
    assert k.basis[0] == (Fraction(1), Fraction(-1))


def test_kron_ordering():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix.identity(2)
    k = kron(a, b)
    assert k[0, 2] == 2 and k[2, 0] == 3 and k[1, 3] == 2


def test_inverse_and_singular():
    m = Matrix([[2, 1], [1, 1]])
    assert (m @ m.inverse()).is_identity()
    assert Matrix([[1, 2], [2, 4]]).inverse() is None


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_vectors_are_killed_and_rank_nullity(rows):
    m = Matrix(rows)
    k = kernel(m)
    for v in k.basis:
        assert not any(m @ v)
    assert m.rank() + k.dim == m.cols
    assert k.dim == nullspace_dim([[Fraction(x) for x in r] for r in rows], m.cols)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_subspace_canonical(rows):
    n = len(rows[0])
    a = Subspace.span(n, rows)
    b = Subspace.span(n, list(reversed(rows)) + [[sum(c) for c in zip(*rows)]])
    assert a == b
    assert a.basis == b.basis


@settings(max_examples=50, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_intersection_and_sum_dims(r1, r2):
    n = min(len(r1[0]), len(r2[0]))
    a = Subspace.span(n, [r[:n] for r in r1])
    b = Subspace.span(n, [r[:n] for r in r2])
    ops = subspace_ops(a, b)
    assert ops["sum"].dim + ops["intersect"].dim == a.dim + b.dim
    for v in ops["intersect"].basis:
        assert v in a and v in b
    assert ops["sum"].contains(a) and ops["sum"].contains(b)


@settings(max_examples=50, deadline=None)
@given(matrices(4, 5))
def test_quotient_coords(rows):
    n = len(rows[0])
    s = Subspace.span(n, rows)
    q = s.quotient_basis()
    assert len(q) == n - s.dim
    for i, v in enumerate(q):
        assert s.quotient_coords(v) == unit_vector(len(q), i)
    for v in s.basis:
        assert not any(s.quotient_coords(v))


def test_row_echelon_incremental():
    ech = RowEchelon(3)
    assert ech.add([1, 2, 3])
    assert not ech.add([2, 4, 6])
    assert ech.add({2: Fraction(1)})
    assert ech.rank == 2


def test_kernel_of_sparse_rows():
    k = kernel_of_rows([{0: 1, 1: -1}], 3)
    assert k.dim == 2


def test_solve_linear_system():
    m = Matrix([[1, 1], [1, -1]])
    sol = solve_linear_system([(m, [2, 0])])
    assert sol.particular == (1, 1)
    assert sol.homogeneous.dim == 0
    inconsistent = solve_linear_system([(Matrix([[1, 1], [1, 1]]), [0, 1])])
    assert inconsistent.is_empty
    homog = solve_linear_system([(Matrix([[1, 1]]), None)])
    assert homog.homogeneous.dim == 1
