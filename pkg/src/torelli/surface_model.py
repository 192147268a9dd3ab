"""Homological model of a closed oriented surface split along a subsurface.

A configuration records the genus of the subsurface Q and, for each
component P of the complement, its genus and number of boundary circles.
From it we build an explicit basis of the first homology of the closed
surface S, the (unimodular, skew) intersection form, the classes of the
boundary circles, and the lattices that control the extension problem:

* ``k0_basis`` spans the degree-zero boundary classes that bound on both
  sides of the splitting (rank n - r for n circles and r components);
* ``circle_span`` spans the image of the circle classes in the ambient
  homology, the canonical model of the reduced circle homology group;
* ``boundary_matrix`` is the Mayer-Vietoris boundary map, sending an
  ambient class a to the 0-chain class sum_C <a, [C]> o_C.

Basis order (used for all coordinates, including the JSON word schema):
Q-handle pairs a_0, b_0, ..., then for each component its handle pairs,
then for each component its circles 1..n_j-1, then the matching duals.
Circle 0 of each component is distinguished: its class is minus the sum
of the others, so it never appears as a basis vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from torelli.exactlin import DimensionMismatch, IntMatrix, IntVector


class InvalidConfig(ValueError):
    """Configuration violates its structural invariants."""


@dataclass(frozen=True)
class ComplementComponent:
    genus: int
    boundary_count: int


@dataclass(frozen=True)
class SubsurfaceConfig:
    q_genus: int
    components: tuple[ComplementComponent, ...]

    def __init__(self, q_genus: int, components: Sequence[ComplementComponent]):
        object.__setattr__(self, "q_genus", int(q_genus))
        object.__setattr__(self, "components", tuple(components))

    def validate(self) -> None:
        if self.q_genus < 0:
            raise InvalidConfig("q_genus must be nonnegative")
        if not self.components:
            raise InvalidConfig("components must be nonempty")
        for j, comp in enumerate(self.components):
            if comp.genus < 0:
                raise InvalidConfig(f"components[{j}].genus must be nonnegative")
            if comp.boundary_count < 1:
                raise InvalidConfig(f"components[{j}].boundary_count must be positive")

    @property
    def total_boundary(self) -> int:
        return sum(c.boundary_count for c in self.components)

    @property
    def genus(self) -> int:
        """Genus of the closed surface the configuration glues up to."""
        return self.q_genus + sum(c.genus for c in self.components) + self.total_boundary - len(self.components)

    def to_json_dict(self) -> dict:
        return {
            "q_genus": self.q_genus,
            "components": [
                {"genus": c.genus, "boundary_count": c.boundary_count} for c in self.components
            ],
        }

    @staticmethod
    def from_json_dict(data: Mapping) -> "SubsurfaceConfig":
        if not isinstance(data, Mapping):
            raise InvalidConfig("config must be a JSON object")
        for field in ("q_genus", "components"):
            if field not in data:
                raise InvalidConfig(f"config is missing field '{field}'")
        if not isinstance(data["q_genus"], int) or isinstance(data["q_genus"], bool):
            raise InvalidConfig("field 'q_genus' must be an integer")
        if not isinstance(data["components"], list):
            raise InvalidConfig("field 'components' must be a list")
        comps = []
        for j, item in enumerate(data["components"]):
            if not isinstance(item, Mapping):
                raise InvalidConfig(f"components[{j}] must be an object")
            for field in ("genus", "boundary_count"):
                if field not in item:
                    raise InvalidConfig(f"components[{j}] is missing field '{field}'")
                if not isinstance(item[field], int) or isinstance(item[field], bool):
                    raise InvalidConfig(f"components[{j}].{field} must be an integer")
            comps.append(ComplementComponent(item["genus"], item["boundary_count"]))
        config = SubsurfaceConfig(data["q_genus"], comps)
        config.validate()
        return config


@dataclass(frozen=True)
class HomologyModel:
    """Explicit basis data for the split surface; immutable after build."""

    config: SubsurfaceConfig
    genus: int
    rank: int
    labels: tuple[tuple, ...]
    intersection_form: IntMatrix
    q_image: IntMatrix
    circle_span: IntMatrix
    k0_basis: IntMatrix
    boundary_matrix: IntMatrix
    circle_order: tuple[tuple[int, int], ...]
    reduced_order: tuple[tuple[int, int], ...]
    block_ranges: tuple[tuple[int, int], ...]

    # -- index helpers ---------------------------------------------------

    @property
    def n_circles(self) -> int:
        return len(self.circle_order)

    @property
    def n_components(self) -> int:
        return len(self.config.components)

    @property
    def k0_rank(self) -> int:
        return len(self.reduced_order)

    def label_index(self, label: tuple) -> int:
        return self.labels.index(label)

    def basis_vector(self, label: tuple) -> IntVector:
        return IntVector.unit(self.rank, self.label_index(label))

    def circle_index(self, j: int, i: int) -> int:
        """Position of circle (j, i) in the 0-chain coordinate order."""
        return self.circle_order.index((j, i))

    def reduced_index(self, j: int, i: int) -> int:
        """Position of circle (j, i >= 1) in the reduced coordinate order."""
        return self.reduced_order.index((j, i))

    def circle_class(self, j: int, i: int) -> IntVector:
        """Ambient class of circle i of component j (i = 0 is the dependent one)."""
        comp = self.config.components[j]
        if not (0 <= i < comp.boundary_count):
            raise DimensionMismatch(f"component {j} has no circle {i}")
        if i >= 1:
            return self.basis_vector(("circle", j, i))
        total = IntVector.zeros(self.rank)
        for k in range(1, comp.boundary_count):
            total = total - self.basis_vector(("circle", j, k))
        return total

    # -- pairings and maps -----------------------------------------------

    def pair(self, a: IntVector, b: IntVector) -> int:
        """Ambient intersection number of two classes."""
        if len(a) != self.rank or len(b) != self.rank:
            raise DimensionMismatch("classes must have the ambient rank")
        return a.dot(self.intersection_form.apply(b))

    def mv_boundary(self, a: IntVector) -> IntVector:
        """Mayer-Vietoris boundary of an ambient class, as a 0-chain class."""
        if len(a) != self.rank:
            raise DimensionMismatch(f"expected length {self.rank}, got {len(a)}")
        return self.boundary_matrix.apply(a)

    def circle_pairing(self, theta: IntVector, b: IntVector) -> int:
        """Intersection pairing of a 0-chain class with a circle 1-chain class."""
        if len(theta) != self.n_circles or len(b) != self.n_circles:
            raise DimensionMismatch(f"expected length {self.n_circles}")
        return theta.dot(b)

    def project_h1bar(self, b: IntVector) -> IntVector:
        """Project a circle homology class to the reduced group.

        In coordinates this substitutes the relation making the circles of
        each component sum to zero, eliminating circle 0.
        """
        if len(b) != self.n_circles:
            raise DimensionMismatch(f"expected length {self.n_circles}, got {len(b)}")
        out = []
        for (j, i) in self.reduced_order:
            out.append(b[self.circle_index(j, i)] - b[self.circle_index(j, 0)])
        return IntVector(out)

    def lift_h1bar(self, v: IntVector) -> IntVector:
        """Canonical lift of a reduced class: coefficients on circles 1..n_j-1."""
        if len(v) != self.k0_rank:
            raise DimensionMismatch(f"expected length {self.k0_rank}, got {len(v)}")
        out = [0] * self.n_circles
        for pos, (j, i) in enumerate(self.reduced_order):
            out[self.circle_index(j, i)] = v[pos]
        return IntVector(out)

    def lift_k0(self, theta: IntVector) -> IntVector:
        """Expand coordinates over the two-point basis classes into 0-chain coordinates."""
        if len(theta) != self.k0_rank:
            raise DimensionMismatch(f"expected length {self.k0_rank}, got {len(theta)}")
        out = [0] * self.n_circles
        for pos, (j, i) in enumerate(self.reduced_order):
            out[self.circle_index(j, i)] += theta[pos]
            out[self.circle_index(j, 0)] -= theta[pos]
        return IntVector(out)

    def k0_coords(self, theta: IntVector) -> IntVector:
        """Coordinates of a 0-chain class over the two-point basis.

        Raises ValueError when the class does not bound on both sides,
        i.e. when some component's coefficients do not sum to zero.
        """
        if len(theta) != self.n_circles:
            raise DimensionMismatch(f"expected length {self.n_circles}, got {len(theta)}")
        for j, comp in enumerate(self.config.components):
            total = sum(theta[self.circle_index(j, i)] for i in range(comp.boundary_count))
            if total != 0:
                raise ValueError(f"class does not bound on both sides (component {j} sums to {total})")
        return IntVector(theta[self.circle_index(j, i)] for (j, i) in self.reduced_order)

    def induced_pairing(self, theta: IntVector, v: IntVector) -> int:
        """Pairing of a two-sided 0-class with a reduced circle class.

        Computed by lifting both; independent of the choice of lift of v
        because the two lattices annihilate each other.
        """
        return self.circle_pairing(self.lift_k0(theta), self.lift_h1bar(v))

    def h1bar_from_ambient(self, v: IntVector) -> IntVector:
        """Reduced coordinates of an ambient class lying in the circle span."""
        if len(v) != self.rank:
            raise DimensionMismatch(f"expected length {self.rank}, got {len(v)}")
        coords = [0] * self.k0_rank
        for idx, label in enumerate(self.labels):
            if v[idx] == 0:
                continue
            if label[0] != "circle":
                raise ValueError(f"class has a nonzero {label} coordinate, not in the circle span")
            coords[self.reduced_index(label[1], label[2])] = v[idx]
        return IntVector(coords)

    def ambient_from_h1bar(self, v: IntVector) -> IntVector:
        """Ambient class of a reduced circle class (canonical basis circles)."""
        if len(v) != self.k0_rank:
            raise DimensionMismatch(f"expected length {self.k0_rank}, got {len(v)}")
        out = IntVector.zeros(self.rank)
        for pos, (j, i) in enumerate(self.reduced_order):
            out = out + v[pos] * self.basis_vector(("circle", j, i))
        return out


def build_model(config: SubsurfaceConfig, *, pairing_sign: int = 1) -> HomologyModel:
    """Construct the homology model for a configuration.

    ``pairing_sign`` flips the global sign of the intersection form; the
    deciders are invariant under the flip (exercised by the test suite).
    """
    config.validate()
    if pairing_sign not in (1, -1):
        raise InvalidConfig("pairing_sign must be +1 or -1")
    h = config.q_genus
    comps = config.components

    labels: list[tuple] = []
    for i in range(h):
        labels.append(("qa", i))
        labels.append(("qb", i))
    for j, comp in enumerate(comps):
        for k in range(comp.genus):
            labels.append(("pa", j, k))
            labels.append(("pb", j, k))
    for j, comp in enumerate(comps):
        for i in range(1, comp.boundary_count):
            labels.append(("circle", j, i))
    for j, comp in enumerate(comps):
        for i in range(1, comp.boundary_count):
            labels.append(("dual", j, i))

    rank = len(labels)
    genus = config.genus
    assert rank == 2 * genus

    index = {label: pos for pos, label in enumerate(labels)}
    form = [[0] * rank for _ in range(rank)]
    for i in range(h):
        a, b = index[("qa", i)], index[("qb", i)]
        form[a][b] = pairing_sign
        form[b][a] = -pairing_sign
    for j, comp in enumerate(comps):
        for k in range(comp.genus):
            a, b = index[("pa", j, k)], index[("pb", j, k)]
            form[a][b] = pairing_sign
            form[b][a] = -pairing_sign
        for i in range(1, comp.boundary_count):
            c, d = index[("circle", j, i)], index[("dual", j, i)]
            form[d][c] = pairing_sign
            form[c][d] = -pairing_sign
    intersection_form = IntMatrix(form, cols=rank)

    circle_order = tuple((j, i) for j, comp in enumerate(comps) for i in range(comp.boundary_count))
    reduced_order = tuple((j, i) for j, comp in enumerate(comps) for i in range(1, comp.boundary_count))

    block_ranges = []
    start = 0
    for j, comp in enumerate(comps):
        stop = start + comp.boundary_count - 1
        block_ranges.append((start, stop))
        start = stop

    def unit(label: tuple) -> IntVector:
        return IntVector.unit(rank, index[label])

    q_cols = [unit(("qa", i)) for i in range(h)] + [unit(("qb", i)) for i in range(h)]
    circle_cols = [unit(("circle", j, i)) for (j, i) in reduced_order]
    q_image = IntMatrix.from_columns(q_cols + circle_cols, rows=rank)
    circle_span = IntMatrix.from_columns(circle_cols, rows=rank)

    n = len(circle_order)
    circle_pos = {ji: pos for pos, ji in enumerate(circle_order)}
    k0_cols = []
    for (j, i) in reduced_order:
        col = [0] * n
        col[circle_pos[(j, i)]] = 1
        col[circle_pos[(j, 0)]] = -1
        k0_cols.append(IntVector(col))
    k0_basis = IntMatrix.from_columns(k0_cols, rows=n)

    # Row for circle C: the functional a -> <a, [C]>.
    circle_classes = {}
    for (j, i) in circle_order:
        if i >= 1:
            circle_classes[(j, i)] = unit(("circle", j, i))
    for j, comp in enumerate(comps):
        total = IntVector.zeros(rank)
        for i in range(1, comp.boundary_count):
            total = total - circle_classes[(j, i)]
        circle_classes[(j, 0)] = total
    boundary_rows = []
    for ji in circle_order:
        boundary_rows.append(intersection_form.apply(circle_classes[ji]).to_list())
    boundary_matrix = IntMatrix(boundary_rows, cols=rank)

    return HomologyModel(
        config=config,
        genus=genus,
        rank=rank,
        labels=tuple(labels),
        intersection_form=intersection_form,
        q_image=q_image,
        circle_span=circle_span,
        k0_basis=k0_basis,
        boundary_matrix=boundary_matrix,
        circle_order=circle_order,
        reduced_order=reduced_order,
        block_ranges=tuple(block_ranges),
    )
