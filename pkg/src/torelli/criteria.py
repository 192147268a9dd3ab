"""Deciders for the extension questions, driven by a word's difference map.

All verdicts are functions of two things only: whether the word is weakly
Torelli, and its difference map.

* identity extension is Torelli  <=>  the difference map vanishes;
* some Torelli extension exists  <=>  the difference map is completely
  reducible (respects the per-component block decomposition);
* some boundary multi-twist corrects the identity extension to Torelli
  <=>  the difference map is the restriction of a diagonal map, i.e. each
  component block is a diagonal matrix plus a constant times the all-ones
  matrix.  Components with at most three boundary circles always admit
  such a restriction, which is why the three-circle guarantee holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from torelli.exactlin import DimensionMismatch, IntMatrix, IntVector
from torelli.mapping_class import (
    DifferenceMap,
    NotWeaklyTorelli,
    TwistWord,
    delta_difference,
    difference_map_from_matrix,
    is_weakly_torelli,
)
from torelli.surface_model import HomologyModel, SubsurfaceConfig


class NotSymmetric(ValueError):
    """The map fails the pairing symmetry identity."""


class NotCompletelyReducible(ValueError):
    """The map mixes distinct complement components."""


@dataclass(frozen=True)
class DiagonalMap:
    """One integer exponent per boundary circle, in the model's circle order."""

    exponents: tuple[int, ...]

    def __init__(self, exponents):
        object.__setattr__(self, "exponents", tuple(int(e) for e in exponents))

    def __len__(self) -> int:
        return len(self.exponents)

    def __neg__(self) -> "DiagonalMap":
        return DiagonalMap(tuple(-e for e in self.exponents))

    def to_json(self) -> list[int]:
        return list(self.exponents)


def is_symmetric(model: HomologyModel, delta: DifferenceMap) -> bool:
    """Pairing symmetry: <a, delta(b)> = <b, delta(a)> on all basis pairs."""
    k = model.k0_rank
    if delta.matrix.rows != k or delta.matrix.cols != k:
        raise DimensionMismatch(f"difference map must be {k}x{k}")
    for i in range(k):
        di = delta.matrix.apply(IntVector.unit(k, i))
        for j in range(i + 1, k):
            dj = delta.matrix.apply(IntVector.unit(k, j))
            lhs = model.induced_pairing(IntVector.unit(k, i), dj)
            rhs = model.induced_pairing(IntVector.unit(k, j), di)
            if lhs != rhs:
                return False
    return True


def is_completely_reducible(model: HomologyModel, delta: DifferenceMap) -> bool:
    """Does the map send each component's block into the same component?"""
    k = model.k0_rank
    if delta.matrix.rows != k or delta.matrix.cols != k:
        raise DimensionMismatch(f"difference map must be {k}x{k}")
    for r in range(k):
        for c in range(k):
            if delta.matrix[r, c] == 0:
                continue
            if model.reduced_order[r][0] != model.reduced_order[c][0]:
                return False
    return True


def matrix_presentation(model: HomologyModel, delta: DifferenceMap, j: int) -> IntMatrix:
    """Component block of a completely reducible map.

    Row i holds the coefficients of the image of the i-th two-point class,
    so the block is the transpose of the column-action submatrix; for the
    symmetric maps the theory produces, the two agree.
    """
    if not is_completely_reducible(model, delta):
        raise NotCompletelyReducible("map mixes complement components")
    return delta.block(j).transpose()


def diagonal_restriction(model: HomologyModel, delta: DifferenceMap) -> Optional[DiagonalMap]:
    """Exponents of a diagonal map restricting to the given difference map.

    Over a component with circles 0..n-1 the restriction of the diagonal
    map with exponents e_0..e_{n-1} has block e_0 * ones + diag(e_1..e_{n-1}),
    so a block qualifies exactly when all its off-diagonal entries agree.
    Underdetermined components (at most two circles) take e_0 = 0 for a
    canonical representative.  Returns None when no integer solution exists.
    """
    if not is_completely_reducible(model, delta):
        return None
    exponents = [0] * model.n_circles
    for j, comp in enumerate(model.config.components):
        block = delta.block(j)
        size = comp.boundary_count - 1
        if size == 0:
            continue
        if size == 1:
            base = 0
        else:
            base = block[0, 1]
            for r in range(size):
                for c in range(size):
                    if r != c and block[r, c] != base:
                        return None
        exponents[model.circle_index(j, 0)] = base
        for i in range(1, comp.boundary_count):
            exponents[model.circle_index(j, i)] = block[i - 1, i - 1] - base
    return DiagonalMap(exponents)


def restriction_of_diagonal(model: HomologyModel, diagonal: DiagonalMap) -> DifferenceMap:
    """Difference map obtained by restricting a diagonal map."""
    if len(diagonal) != model.n_circles:
        raise DimensionMismatch(f"need {model.n_circles} exponents")
    k = model.k0_rank
    matrix = [[0] * k for _ in range(k)]
    for col, (j, i) in enumerate(model.reduced_order):
        base = diagonal.exponents[model.circle_index(j, 0)]
        # image of o_{j,i} is e_i [C_i] - e_0 [C_0] = (e_i + e_0)[C_i] + e_0 * (others)
        for row, (j2, i2) in enumerate(model.reduced_order):
            if j2 != j:
                continue
            matrix[row][col] = base + (diagonal.exponents[model.circle_index(j, i)] if i2 == i else 0)
    return DifferenceMap(IntMatrix(matrix, cols=k), model.block_ranges)


def decide_extension_by_identity(model: HomologyModel, word: TwistWord) -> bool:
    """Is the extension of the word by the identity a Torelli map?"""
    if not is_weakly_torelli(model, word):
        return False
    return delta_difference(model, word).is_zero()


def decide_extendable(model: HomologyModel, word: TwistWord) -> bool:
    """Does the word extend to some Torelli map of the closed surface?"""
    if not is_weakly_torelli(model, word):
        return False
    return is_completely_reducible(model, delta_difference(model, word))


def decide_multitwist_correctable(model: HomologyModel, word: TwistWord) -> Optional[DiagonalMap]:
    """Exponents of a boundary multi-twist making the identity extension
    Torelli, or None when no such multi-twist exists.

    The returned exponents are the correcting ones (negated diagonal
    solution): composing the word with the multi-twist they define yields
    the identity on ambient homology.
    """
    if not is_weakly_torelli(model, word):
        raise NotWeaklyTorelli("word does not fix the subsurface homology image")
    solution = diagonal_restriction(model, delta_difference(model, word))
    if solution is None:
        return None
    return -solution


def guaranteed_correctable(config: SubsurfaceConfig) -> bool:
    """True when every component has at most three boundary circles, in
    which case extendable words are always multi-twist correctable."""
    return all(c.boundary_count <= 3 for c in config.components)


def group_ranks(config: SubsurfaceConfig) -> dict[str, int]:
    """Ranks of the two coordinate lattices and of the lattice of
    completely reducible symmetric maps between them."""
    config.validate()
    n = config.total_boundary
    r = len(config.components)
    rank_dc = 0
    for comp in config.components:
        size = comp.boundary_count - 1
        rank_dc += size * (size + 1) // 2
    return {"rank_K0": n - r, "rank_H1bar": n - r, "rank_Dc": rank_dc}


@dataclass(frozen=True)
class AnalysisReport:
    weakly_torelli: bool
    delta: Optional[DifferenceMap]
    symmetric: bool
    completely_reducible: bool
    extension_by_identity_torelli: bool
    extendable_to_torelli: bool
    multitwist_correctable: Optional[DiagonalMap]
    component_matrices: Optional[tuple[IntMatrix, ...]]

    def to_json_dict(self) -> dict:
        return {
            "weakly_torelli": self.weakly_torelli,
            "delta": self.delta.to_json_dict() if self.delta is not None else None,
            "symmetric": self.symmetric,
            "completely_reducible": self.completely_reducible,
            "extension_by_identity_torelli": self.extension_by_identity_torelli,
            "extendable_to_torelli": self.extendable_to_torelli,
            "multitwist_correctable": (
                self.multitwist_correctable.to_json()
                if self.multitwist_correctable is not None
                else None
            ),
            "component_matrices": (
                [m.to_lists() for m in self.component_matrices]
                if self.component_matrices is not None
                else None
            ),
        }


def analyze(model: HomologyModel, word: TwistWord) -> AnalysisReport:
    """Run every decider on a subsurface word and collect the verdicts."""
    if not is_weakly_torelli(model, word):
        return AnalysisReport(
            weakly_torelli=False,
            delta=None,
            symmetric=False,
            completely_reducible=False,
            extension_by_identity_torelli=False,
            extendable_to_torelli=False,
            multitwist_correctable=None,
            component_matrices=None,
        )
    delta = delta_difference(model, word)
    symmetric = is_symmetric(model, delta)
    reducible = is_completely_reducible(model, delta)
    correction = diagonal_restriction(model, delta)
    components = None
    if reducible:
        components = tuple(
            matrix_presentation(model, delta, j) for j in range(model.n_components)
        )
    return AnalysisReport(
        weakly_torelli=True,
        delta=delta,
        symmetric=symmetric,
        completely_reducible=reducible,
        extension_by_identity_torelli=delta.is_zero(),
        extendable_to_torelli=reducible,
        multitwist_correctable=-correction if correction is not None else None,
        component_matrices=components,
    )


# -- difference-map construction from block data -----------------------------


def delta_from_blocks(model: HomologyModel, blocks: Mapping[int, IntMatrix]) -> DifferenceMap:
    """Assemble a (completely reducible) difference map from per-component
    blocks given in row-as-input convention, matching ``matrix_presentation``."""
    k = model.k0_rank
    matrix = [[0] * k for _ in range(k)]
    for j, block in blocks.items():
        if not (0 <= j < model.n_components):
            raise DimensionMismatch(f"no complement component {j}")
        size = model.config.components[j].boundary_count - 1
        if (block.rows, block.cols) != (size, size):
            raise DimensionMismatch(
                f"component {j} block must be {size}x{size}, got {block.rows}x{block.cols}"
            )
        start = model.block_ranges[j][0]
        for r in range(size):
            for c in range(size):
                # row-as-input blocks transpose into column-action entries
                matrix[start + c][start + r] = block[r, c]
    return difference_map_from_matrix(model, IntMatrix(matrix, cols=k))
