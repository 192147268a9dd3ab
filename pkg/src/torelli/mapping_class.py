"""Twist words, their transvection action on homology, and difference maps.

A mapping class is given as an ordered word of twist factors; each factor
acts on ambient homology by the transvection x -> x + m <x, z> z about its
circle class z.  Words are stored in composition order: the last factor of
the list acts first.

For a word supported in the subsurface that fixes the image of the
subsurface homology pointwise (a weakly Torelli word), the action moves
every class by an element of the circle span, and the displacement only
depends on the Mayer-Vietoris boundary of the class.  The resulting linear
map from two-sided 0-classes to reduced circle classes is the word's
difference map; it is the complete obstruction data for the extension
questions answered in :mod:`torelli.criteria`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from torelli.exactlin import (
    DimensionMismatch,
    IntMatrix,
    IntVector,
    outer,
    solve_integer,
)
from torelli.surface_model import HomologyModel

#: Locus of a twist factor: the subsurface, one complement component, or
#: the ambient surface.  Component indices are 0-based.
LOCUS_Q = "Q"
LOCUS_AMBIENT = "S"
Locus = Union[str, tuple[str, int]]


class LocusViolation(ValueError):
    """A factor's class lies outside the sublattice its locus permits."""


class NotWeaklyTorelli(ValueError):
    """The word moves the subsurface homology inside the ambient surface."""


class InconsistentDelta(RuntimeError):
    """The difference-map system has no solution; a model invariant broke."""


def in_complement(j: int) -> Locus:
    return ("P", j)


@dataclass(frozen=True)
class TwistFactor:
    curve_class: IntVector
    exponent: int
    locus: Locus


@dataclass(frozen=True)
class TwistWord:
    """Composition-ordered twist factors (the last factor acts first)."""

    factors: tuple[TwistFactor, ...]

    def __init__(self, factors: Sequence[TwistFactor] = ()):
        object.__setattr__(self, "factors", tuple(factors))

    def __len__(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class DifferenceMap:
    """Linear map from two-sided 0-class coordinates to reduced circle
    coordinates; ``matrix`` acts on column vectors, ``block_ranges`` gives
    each complement component's coordinate range."""

    matrix: IntMatrix
    block_ranges: tuple[tuple[int, int], ...]

    def block(self, j: int) -> IntMatrix:
        start, stop = self.block_ranges[j]
        return IntMatrix(
            ([self.matrix[r, c] for c in range(start, stop)] for r in range(start, stop)),
            cols=stop - start,
        )

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __add__(self, other: "DifferenceMap") -> "DifferenceMap":
        if self.block_ranges != other.block_ranges:
            raise DimensionMismatch("difference maps live on different configurations")
        return DifferenceMap(self.matrix + other.matrix, self.block_ranges)

    def __neg__(self) -> "DifferenceMap":
        return DifferenceMap(-self.matrix, self.block_ranges)

    def to_json_dict(self) -> dict:
        return {"matrix": self.matrix.to_lists()}


def zero_difference_map(model: HomologyModel) -> DifferenceMap:
    k = model.k0_rank
    return DifferenceMap(IntMatrix.zeros(k, k), model.block_ranges)


def difference_map_from_matrix(model: HomologyModel, matrix: IntMatrix) -> DifferenceMap:
    k = model.k0_rank
    if (matrix.rows, matrix.cols) != (k, k):
        raise DimensionMismatch(f"difference map must be {k}x{k}")
    return DifferenceMap(matrix, model.block_ranges)


def _check_locus(model: HomologyModel, factor: TwistFactor, position: int) -> None:
    z = factor.curve_class
    if len(z) != model.rank:
        raise DimensionMismatch(
            f"factor {position}: class has length {len(z)}, model rank is {model.rank}"
        )
    locus = factor.locus
    if locus == LOCUS_AMBIENT:
        return
    if locus == LOCUS_Q:
        def permitted(label):
            return label[0] in ("qa", "qb", "circle")

        where = "the subsurface image"
    elif isinstance(locus, tuple) and len(locus) == 2 and locus[0] == "P":
        j = locus[1]
        if not (0 <= j < model.n_components):
            raise LocusViolation(f"factor {position}: no complement component {j}")

        def permitted(label):
            return label[0] in ("pa", "pb", "circle") and label[1] == j

        where = f"complement component {j}"
    else:
        raise LocusViolation(f"factor {position}: unknown locus {locus!r}")
    for idx, label in enumerate(model.labels):
        if z[idx] != 0 and not permitted(label):
            raise LocusViolation(f"factor {position}: class meets {label}, outside {where}")


def transvection_matrix(model: HomologyModel, z: IntVector, exponent: int) -> IntMatrix:
    """Matrix of x -> x + m <x, z> z."""
    jz = model.intersection_form.apply(z)
    return IntMatrix.identity(model.rank) + exponent * outer(z, jz)


def transvection_action(model: HomologyModel, word: TwistWord) -> IntMatrix:
    """Product of the factor transvections, in composition order."""
    result = IntMatrix.identity(model.rank)
    for pos, factor in enumerate(word.factors):
        _check_locus(model, factor, pos)
        result = result * transvection_matrix(model, factor.curve_class, factor.exponent)
    return result


def _require_in_q(model: HomologyModel, word: TwistWord) -> None:
    for pos, factor in enumerate(word.factors):
        if factor.locus != LOCUS_Q:
            raise LocusViolation(f"factor {pos}: locus must be 'Q', got {factor.locus!r}")
        _check_locus(model, factor, pos)


def is_weakly_torelli(model: HomologyModel, word: TwistWord) -> bool:
    """Does the word fix the subsurface homology image pointwise?"""
    _require_in_q(model, word)
    action = transvection_action(model, word)
    return all(action.apply(col) == col for col in model.q_image.columns())


def delta_difference(model: HomologyModel, word: TwistWord) -> DifferenceMap:
    """Extract the difference map of a weakly Torelli word.

    Solves the linear system over the whole ambient basis: for every basis
    class a, the displacement action(a) - a must lie in the circle span
    and equal the difference map applied to the boundary of a.  Solving
    against all 2g classes at once doubles as a consistency check.
    """
    _require_in_q(model, word)
    action = transvection_action(model, word)
    if not all(action.apply(col) == col for col in model.q_image.columns()):
        raise NotWeaklyTorelli("word does not fix the subsurface homology image")
    k = model.k0_rank
    lhs_rows = []  # boundary coordinates of each basis class
    rhs_rows = []  # displacement of each basis class, in reduced coordinates
    for idx in range(model.rank):
        e = IntVector.unit(model.rank, idx)
        residual = action.apply(e) - e
        try:
            projected = model.h1bar_from_ambient(residual)
        except ValueError as exc:
            raise NotWeaklyTorelli(
                f"displacement of basis class {idx} leaves the circle span: {exc}"
            )
        lhs_rows.append(model.k0_coords(model.mv_boundary(e)).to_list())
        rhs_rows.append(projected.to_list())
    # matrix · boundary = displacement columnwise over basis classes;
    # stacked and transposed this reads lhs · matrixᵗ = rhs.
    lhs = IntMatrix(lhs_rows, cols=k)
    rhs = IntMatrix(rhs_rows, cols=k)
    solution_rows = []
    for out_pos in range(k):
        column = solve_integer(lhs, rhs.column(out_pos))
        if column is None:
            raise InconsistentDelta("difference-map system is unsolvable")
        solution_rows.append(column.to_list())
    matrix = IntMatrix(solution_rows, cols=k)
    if lhs * matrix.transpose() != rhs:
        raise InconsistentDelta("difference-map solution fails verification")
    return DifferenceMap(matrix, model.block_ranges)


def concat(word_a: TwistWord, word_b: TwistWord) -> TwistWord:
    """Composition word_a after word_b."""
    if word_a.factors and word_b.factors:
        if len(word_a.factors[0].curve_class) != len(word_b.factors[0].curve_class):
            raise DimensionMismatch("words live on different models")
    return TwistWord(word_a.factors + word_b.factors)


def invert(word: TwistWord) -> TwistWord:
    """Formal inverse: reversed factors with negated exponents."""
    return TwistWord(
        tuple(
            TwistFactor(f.curve_class, -f.exponent, f.locus)
            for f in reversed(word.factors)
        )
    )


# -- JSON word schema --------------------------------------------------------


class WordParseError(ValueError):
    """Word JSON violates the schema."""


def _locus_to_json(locus: Locus):
    if locus == LOCUS_Q or locus == LOCUS_AMBIENT:
        return locus
    return {"P": locus[1]}


def _locus_from_json(data, position: int) -> Locus:
    if data == LOCUS_Q or data == LOCUS_AMBIENT:
        return data
    if isinstance(data, Mapping) and set(data.keys()) == {"P"}:
        j = data["P"]
        if not isinstance(j, int) or isinstance(j, bool):
            raise WordParseError(f"factors[{position}].locus.P must be an integer")
        return in_complement(j)
    raise WordParseError(
        f"factors[{position}].locus must be \"Q\", \"S\" or {{\"P\": j}}"
    )


def word_to_json_dict(word: TwistWord) -> dict:
    return {
        "factors": [
            {
                "class": f.curve_class.to_list(),
                "exponent": f.exponent,
                "locus": _locus_to_json(f.locus),
            }
            for f in word.factors
        ]
    }


def word_from_json_dict(data: Mapping, rank: int) -> TwistWord:
    if not isinstance(data, Mapping):
        raise WordParseError("word must be a JSON object")
    if "factors" not in data:
        raise WordParseError("word is missing field 'factors'")
    if not isinstance(data["factors"], list):
        raise WordParseError("field 'factors' must be a list")
    factors = []
    for pos, item in enumerate(data["factors"]):
        if not isinstance(item, Mapping):
            raise WordParseError(f"factors[{pos}] must be an object")
        for field in ("class", "exponent", "locus"):
            if field not in item:
                raise WordParseError(f"factors[{pos}] is missing field '{field}'")
        cls = item["class"]
        if not isinstance(cls, list) or any(
            not isinstance(e, int) or isinstance(e, bool) for e in cls
        ):
            raise WordParseError(f"factors[{pos}].class must be a list of integers")
        if len(cls) != rank:
            raise DimensionMismatch(
                f"factors[{pos}].class has length {len(cls)}, model rank is {rank}"
            )
        if not isinstance(item["exponent"], int) or isinstance(item["exponent"], bool):
            raise WordParseError(f"factors[{pos}].exponent must be an integer")
        locus = _locus_from_json(item["locus"], pos)
        factors.append(TwistFactor(IntVector(cls), item["exponent"], locus))
    return TwistWord(factors)


def word_to_json(word: TwistWord) -> str:
    return json.dumps(word_to_json_dict(word), sort_keys=True)
