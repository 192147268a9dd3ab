"""Constructing twist words that realize prescribed difference maps.

The key fact: a twist in the subsurface about a circle homologous to a
union U of boundary circles of one complement component has difference map
a -> m <a, [U]> [U].  Over one component the matrices of these maps are
the 0/1 "indicator" symmetric matrices m(A) (ones on the rows and columns
indexed by A), and the contiguous ones m(k..l) form a basis of the lattice
of symmetric integer matrices.  Expanding a prescribed symmetric block in
that basis therefore yields an explicit word of peripheral twists, and
pairing each factor with an opposite twist on the complement side gives a
word acting trivially on ambient homology: a witness that the realized
word extends to a Torelli map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from torelli.criteria import (
    DiagonalMap,
    NotCompletelyReducible,
    NotSymmetric,
    is_completely_reducible,
    is_symmetric,
)
from torelli.exactlin import DimensionMismatch, IntMatrix, IntVector
from torelli.mapping_class import (
    LOCUS_Q,
    DifferenceMap,
    TwistFactor,
    TwistWord,
    difference_map_from_matrix,
    in_complement,
)
from torelli.surface_model import HomologyModel


@dataclass(frozen=True)
class SymBasisCoefficients:
    """Coefficients over the contiguous-indicator basis of symmetric matrices.

    Keys are 1-based pairs (k, l) with k <= l; the matrix m(k, l) has ones
    exactly on rows and columns k..l.
    """

    size: int
    coefficients: Mapping[tuple[int, int], int]

    def items(self) -> Iterable[tuple[tuple[int, int], int]]:
        return sorted(self.coefficients.items())


def indicator_matrix(size: int, members: Iterable[int]) -> IntMatrix:
    """Symmetric 0/1 matrix with ones on the rows and columns in ``members``
    (1-based indices)."""
    chosen = set(members)
    return IntMatrix(
        (
            [1 if (r + 1) in chosen and (c + 1) in chosen else 0 for c in range(size)]
            for r in range(size)
        ),
        cols=size,
    )


def sym_basis_change(matrix: IntMatrix, size: int) -> SymBasisCoefficients:
    """Expand a symmetric matrix over the contiguous-indicator basis.

    Works entry by entry through the elementary symmetric matrices e(k, l):
    e(k,k) = m(k,k); e(k,k+1) = m(k,k+1) - m(k,k) - m(k+1,k+1); and for
    l > k+1, e(k,l) = m(k,l) - m(k+1,l) - m(k,l-1) + m(k+1,l-1).
    """
    if (matrix.rows, matrix.cols) != (size, size):
        raise DimensionMismatch(f"expected a {size}x{size} matrix")
    if matrix != matrix.transpose():
        raise NotSymmetric("matrix is not symmetric")
    coeffs: dict[tuple[int, int], int] = {}

    def add(k: int, l: int, value: int) -> None:
        if value:
            coeffs[(k, l)] = coeffs.get((k, l), 0) + value
            if coeffs[(k, l)] == 0:
                del coeffs[(k, l)]

    for k in range(1, size + 1):
        for l in range(k, size + 1):
            e = matrix[k - 1, l - 1]
            if e == 0:
                continue
            if k == l:
                add(k, k, e)
            elif l == k + 1:
                add(k, l, e)
                add(k, k, -e)
                add(l, l, -e)
            else:
                add(k, l, e)
                add(k + 1, l, -e)
                add(k, l - 1, -e)
                add(k + 1, l - 1, e)
    return SymBasisCoefficients(size=size, coefficients=coeffs)


def reconstruct_from_coefficients(coeffs: SymBasisCoefficients) -> IntMatrix:
    """Sum of coefficient times contiguous-indicator matrix; the basis-change
    round-trip oracle."""
    total = IntMatrix.zeros(coeffs.size, coeffs.size)
    for (k, l), value in coeffs.items():
        total = total + value * indicator_matrix(coeffs.size, range(k, l + 1))
    return total


def peripheral_class(model: HomologyModel, j: int, subset: Iterable[int]) -> IntVector:
    """Ambient class of the union of the chosen boundary circles of
    component j (0-based circle indices; circle 0 allowed)."""
    members = sorted(set(subset))
    if not members:
        raise ValueError("subset of boundary circles must be nonempty")
    comp = model.config.components[j]
    for i in members:
        if not (0 <= i < comp.boundary_count):
            raise ValueError(f"component {j} has no circle {i}")
    total = IntVector.zeros(model.rank)
    for i in members:
        total = total + model.circle_class(j, i)
    return total


def peripheral_twist_delta(
    model: HomologyModel, j: int, subset: Iterable[int], exponent: int
) -> DifferenceMap:
    """Difference map of the peripheral twist about the union of the chosen
    circles of component j: a -> m <a, [U]> [U]."""
    members = sorted(set(subset))
    peripheral_class(model, j, members)  # validates the subset
    u_chain = IntVector(
        1 if ji in {(j, i) for i in members} else 0 for ji in model.circle_order
    )
    u_reduced = model.project_h1bar(u_chain)
    k = model.k0_rank
    columns = []
    for pos in range(k):
        pairing = model.circle_pairing(model.lift_k0(IntVector.unit(k, pos)), u_chain)
        columns.append((exponent * pairing) * u_reduced)
    matrix = IntMatrix.from_columns(columns, rows=k)
    return difference_map_from_matrix(model, matrix)


@dataclass(frozen=True)
class Realization:
    """A realizing word plus the bi-twist witness of its Torelli extension."""

    word: TwistWord
    torelli_witness: TwistWord


def realize_delta(model: HomologyModel, delta: DifferenceMap) -> Realization:
    """Build a subsurface word whose difference map is the given one.

    Requires the map to be symmetric and completely reducible.  Factors are
    peripheral twists about contiguous unions of circles, one per nonzero
    basis coefficient, components in order and index pairs lexicographic.
    The witness interleaves each factor with an opposite twist about the
    same class on the complement side, so its ambient action is trivial.
    """
    if not is_symmetric(model, delta):
        raise NotSymmetric("difference map is not symmetric")
    if not is_completely_reducible(model, delta):
        raise NotCompletelyReducible("difference map mixes complement components")
    factors = []
    witness = []
    for j, comp in enumerate(model.config.components):
        size = comp.boundary_count - 1
        if size == 0:
            continue
        block = delta.block(j)
        coeffs = sym_basis_change(block, size)
        for (k, l), value in coeffs.items():
            u = peripheral_class(model, j, range(k, l + 1))
            factor = TwistFactor(u, value, LOCUS_Q)
            factors.append(factor)
            witness.append(factor)
            witness.append(TwistFactor(u, -value, in_complement(j)))
    return Realization(word=TwistWord(factors), torelli_witness=TwistWord(witness))


def build_boundary_multitwist(model: HomologyModel, exponents: DiagonalMap) -> TwistWord:
    """Word of twists about every boundary circle with the given exponents.

    Its difference map is the restriction of the diagonal map the exponents
    define, so composing with it shifts a word's difference map diagonally.
    """
    if len(exponents) != model.n_circles:
        raise DimensionMismatch(f"need {model.n_circles} exponents")
    factors = []
    for pos, (j, i) in enumerate(model.circle_order):
        factors.append(
            TwistFactor(model.circle_class(j, i), exponents.exponents[pos], LOCUS_Q)
        )
    return TwistWord(factors)
