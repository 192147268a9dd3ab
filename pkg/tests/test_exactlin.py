"""Smith form, integer solver, and kernel lattice checks.

Every decomposition property is verified by direct multiplication, never
by trusting the algorithm's internals.
"""

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torelli.exactlin import (
    DimensionMismatch,
    IntMatrix,
    IntVector,
    determinant,
    kernel_basis,
    lattice_membership,
    smith_normal_form,
    solve_integer,
)

matrices = st.integers(min_value=0, max_value=4).flatmap(
    lambda rows: st.integers(min_value=0, max_value=4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        ).map(lambda data: IntMatrix(data, cols=cols))
    )
)


def assert_smith_contract(a, snf):
    assert snf.U * a * snf.V == snf.D
    assert abs(determinant(snf.U)) == 1
    assert abs(determinant(snf.V)) == 1
    diag = snf.diagonal()
    assert all(d >= 0 for d in diag)
    for i in range(len(diag) - 1):
        if diag[i]:
            assert diag[i + 1] % diag[i] == 0
        else:
            assert diag[i + 1] == 0
    for i in range(snf.D.rows):
        for j in range(snf.D.cols):
            if i != j:
                assert snf.D[i, j] == 0


def test_snf_zero_matrix():
    a = IntMatrix([[0]])
    snf = smith_normal_form(a)
    assert snf.D == IntMatrix([[0]])
    assert snf.U == IntMatrix.identity(1)
    assert snf.V == IntMatrix.identity(1)


def test_snf_identity():
    a = IntMatrix.identity(2)
    snf = smith_normal_form(a)
    assert snf.D == IntMatrix.identity(2)
    assert_smith_contract(a, snf)


def test_snf_two_by_two():
    a = IntMatrix([[2, 4], [6, 8]])
    snf = smith_normal_form(a)
    assert snf.D == IntMatrix([[2, 0], [0, 4]])
    assert_smith_contract(a, snf)


@settings(max_examples=300)
@given(matrices)
def test_snf_random(a):
    assert_smith_contract(a, smith_normal_form(a))


def test_solve_identity():
    b = IntVector([3, -7, 2])
    assert solve_integer(IntMatrix.identity(3), b) == b


def test_solve_parity_obstruction():
    assert solve_integer(IntMatrix([[2]]), IntVector([3])) is None


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_integer(IntMatrix.identity(2), IntVector([1, 2, 3]))


@settings(max_examples=200)
@given(
    st.lists(
        st.lists(st.integers(min_value=-5, max_value=5), min_size=6, max_size=6),
        min_size=4,
        max_size=4,
    ),
    st.lists(st.integers(min_value=-4, max_value=4), min_size=6, max_size=6),
)
def test_solve_reconstructs_planted_solution(rows, x0_entries):
    a = IntMatrix(rows, cols=6)
    x0 = IntVector(x0_entries)
    b = a.apply(x0)
    x = solve_integer(a, b)
    assert x is not None
    assert a.apply(x) == b


@settings(max_examples=150)
@given(
    st.lists(
        st.lists(st.integers(min_value=-4, max_value=4), min_size=2, max_size=2),
        min_size=2,
        max_size=3,
    ),
    st.lists(st.integers(min_value=-5, max_value=5), min_size=2, max_size=3),
)
def test_solve_negative_answers_have_no_small_solution(rows, b_entries):
    if len(rows) != len(b_entries):
        b_entries = (b_entries + [0] * len(rows))[: len(rows)]
    a = IntMatrix(rows, cols=2)
    b = IntVector(b_entries)
    if solve_integer(a, b) is None:
        for xs in product(range(-8, 9), repeat=2):
            assert a.apply(IntVector(xs)) != b


def test_kernel_of_identity_is_trivial():
    assert kernel_basis(IntMatrix.identity(3)).cols == 0


def test_kernel_of_sum_functional():
    basis = kernel_basis(IntMatrix([[1, 1]]))
    assert basis.cols == 1
    col = basis.column(0)
    assert col in (IntVector([1, -1]), IntVector([-1, 1]))


@settings(max_examples=200)
@given(matrices)
def test_kernel_random(a):
    basis = kernel_basis(a)
    for col in basis.columns():
        assert a.apply(col).is_zero()
    assert basis.cols + smith_normal_form(a).rank() == a.cols
    if basis.cols:
        # Primitivity: the basis extends to a basis of the ambient lattice.
        assert all(d == 1 for d in smith_normal_form(basis).diagonal())


def test_membership_empty_basis():
    empty = IntMatrix.zeros(2, 0)
    assert lattice_membership(empty, IntVector([0, 0]))
    assert not lattice_membership(empty, IntVector([1, 0]))


def test_membership_index_two_sublattice():
    basis = IntMatrix.from_columns([IntVector([2, 0])], rows=2)
    assert not lattice_membership(basis, IntVector([1, 0]))
    assert lattice_membership(basis, IntVector([-4, 0]))


@settings(max_examples=100)
@given(matrices, st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4))
def test_membership_of_constructed_kernel_elements(a, coeffs):
    basis = kernel_basis(a)
    combo = IntVector.zeros(a.cols)
    for i, col in enumerate(basis.columns()):
        combo = combo + coeffs[i % len(coeffs)] * col
    assert lattice_membership(basis, combo)
    assert a.apply(combo).is_zero()


def test_determinant_matches_cofactor_expansion():
    a = IntMatrix([[2, -1, 3], [0, 4, 1], [-2, 5, 7]])
    expected = (
        2 * (4 * 7 - 1 * 5) - (-1) * (0 * 7 - 1 * (-2)) + 3 * (0 * 5 - 4 * (-2))
    )
    assert determinant(a) == expected
    assert determinant(IntMatrix([], cols=0)) == 1
