"""Randomized property harness: seeded generators plus an invariant registry.

Every invariant of the library has an entry here that re-checks it by
independent brute force on randomly drawn configurations and words.  All
randomness is derived from the plan seed, so reports are byte-identical
across runs.  Failure witnesses carry the full configuration and word so
a failing case can be re-run standalone through the command line.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from torelli import criteria, realization
from torelli.exactlin import (
    IntMatrix,
    IntVector,
    determinant,
    kernel_basis,
    lattices_equal,
    smith_normal_form,
    solve_integer,
)
from torelli.mapping_class import (
    LOCUS_AMBIENT,
    LOCUS_Q,
    TwistFactor,
    TwistWord,
    concat,
    delta_difference,
    difference_map_from_matrix,
    invert,
    is_weakly_torelli,
    transvection_action,
    word_to_json_dict,
)
from torelli.surface_model import ComplementComponent, HomologyModel, SubsurfaceConfig, build_model

_MASK = (1 << 64) - 1


def _subseed(seed: int, *salts: int) -> int:
    x = (seed ^ 0x9E3779B97F4A7C15) & _MASK
    for s in salts:
        x = (x ^ ((s & _MASK) + 0x9E3779B97F4A7C15 + ((x << 6) & _MASK) + (x >> 2))) & _MASK
    return x


@dataclass(frozen=True)
class TrialPlan:
    seed: int = 0
    trials: int = 50
    max_q_genus: int = 2
    max_component_genus: int = 2
    max_boundary_count: int = 4
    max_components: int = 3
    exponent_bound: int = 3

    def validate(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.max_q_genus < 0 or self.max_component_genus < 0:
            raise ValueError("genus bounds must be nonnegative")
        if self.max_boundary_count < 1 or self.max_components < 1:
            raise ValueError("boundary and component bounds must be positive")
        if self.exponent_bound < 1:
            raise ValueError("exponent bound must be positive")


def random_config(plan: TrialPlan, index: int) -> SubsurfaceConfig:
    """Deterministic draw of a configuration within the plan bounds."""
    plan.validate()
    rng = random.Random(_subseed(plan.seed, 1, index))
    r = rng.randint(1, plan.max_components)
    comps = [
        ComplementComponent(
            rng.randint(0, plan.max_component_genus),
            rng.randint(1, plan.max_boundary_count),
        )
        for _ in range(r)
    ]
    return SubsurfaceConfig(rng.randint(0, plan.max_q_genus), comps)


def _random_circle_factor(model: HomologyModel, rng: random.Random, bound: int) -> TwistFactor:
    j = rng.randrange(model.n_components)
    count = model.config.components[j].boundary_count
    if rng.random() < 0.5:
        cls = model.circle_class(j, rng.randrange(count))
    else:
        subset = [i for i in range(count) if rng.random() < 0.5]
        if not subset:
            subset = [rng.randrange(count)]
        cls = realization.peripheral_class(model, j, subset)
    return TwistFactor(cls, rng.randint(-bound, bound), LOCUS_Q)


def random_weakly_torelli_word(model: HomologyModel, plan: TrialPlan, index: int) -> TwistWord:
    """Word of twists about boundary and peripheral classes.

    Such classes lie in the circle span, which pairs to zero with the whole
    subsurface image, so the word is weakly Torelli by construction.
    """
    plan.validate()
    rng = random.Random(_subseed(plan.seed, 2, index))
    length = rng.randint(0, 4)
    return TwistWord(
        [_random_circle_factor(model, rng, plan.exponent_bound) for _ in range(length)]
    )


def _random_ambient_word(model: HomologyModel, rng: random.Random, bound: int) -> TwistWord:
    length = rng.randint(0, 4)
    factors = []
    for _ in range(length):
        cls = IntVector(rng.randint(-2, 2) for _ in range(model.rank))
        factors.append(TwistFactor(cls, rng.randint(-bound, bound), LOCUS_AMBIENT))
    return TwistWord(factors)


def random_symmetric_reducible_delta(
    model: HomologyModel, rng: random.Random, bound: int = 3
):
    """Blockwise-random symmetric completely reducible difference map."""
    k = model.k0_rank
    matrix = [[0] * k for _ in range(k)]
    for (start, stop) in model.block_ranges:
        for r in range(start, stop):
            for c in range(r, stop):
                value = rng.randint(-bound, bound)
                matrix[r][c] = value
                matrix[c][r] = value
    return difference_map_from_matrix(model, IntMatrix(matrix, cols=k))


def _random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 6) -> IntMatrix:
    return IntMatrix(
        ([rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)),
        cols=cols,
    )


# -- invariant registry -------------------------------------------------------

Check = Callable[[TrialPlan, int, Callable[[SubsurfaceConfig], HomologyModel]], Optional[dict]]


def _model_witness(config: SubsurfaceConfig, **extra) -> dict:
    witness = {"config": config.to_json_dict()}
    witness.update(extra)
    return witness


def _check_smith_form(plan, index, model_factory):
    rng = random.Random(_subseed(plan.seed, 10, index))
    a = _random_matrix(rng, rng.randint(0, 5), rng.randint(0, 5))
    snf = smith_normal_form(a)
    diag = snf.diagonal()
    problems = []
    if snf.U * a * snf.V != snf.D:
        problems.append("U*A*V != D")
    if any(d < 0 for d in diag):
        problems.append("negative invariant factor")
    if any(diag[i] and diag[i + 1] % diag[i] for i in range(len(diag) - 1)):
        problems.append("divisibility chain broken")
    if any(diag[i] == 0 and diag[i + 1] != 0 for i in range(len(diag) - 1)):
        problems.append("zero before nonzero factor")
    if abs(determinant(snf.U)) != 1 or abs(determinant(snf.V)) != 1:
        problems.append("transform not unimodular")
    off_diag = any(
        snf.D[i, j] != 0 for i in range(snf.D.rows) for j in range(snf.D.cols) if i != j
    )
    if off_diag:
        problems.append("D not diagonal")
    if problems:
        return {"matrix": a.to_lists(), "problems": problems}
    return None


def _check_solver(plan, index, model_factory):
    rng = random.Random(_subseed(plan.seed, 11, index))
    a = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 3), bound=4)
    x0 = IntVector(rng.randint(-3, 3) for _ in range(a.cols))
    b = a.apply(x0)
    x = solve_integer(a, b)
    if x is None or a.apply(x) != b:
        return {"matrix": a.to_lists(), "rhs": b.to_list(), "problem": "solvable system missed"}
    b2 = IntVector(rng.randint(-4, 4) for _ in range(a.rows))
    if solve_integer(a, b2) is None:
        # Exhaustive box search refutes any small solution.
        box = range(-6, 7)
        if a.cols <= 3:
            from itertools import product

            for xs in product(box, repeat=a.cols):
                if a.apply(IntVector(xs)) == b2:
                    return {
                        "matrix": a.to_lists(),
                        "rhs": b2.to_list(),
                        "solution_missed": list(xs),
                    }
    return None


def _check_kernel(plan, index, model_factory):
    rng = random.Random(_subseed(plan.seed, 12, index))
    a = _random_matrix(rng, rng.randint(0, 4), rng.randint(0, 4), bound=5)
    basis = kernel_basis(a)
    problems = []
    for col in basis.columns():
        if not a.apply(col).is_zero():
            problems.append("kernel column not annihilated")
    rank = smith_normal_form(a).rank()
    if basis.cols + rank != a.cols:
        problems.append("rank law violated")
    if basis.cols:
        if any(d != 1 for d in smith_normal_form(basis).diagonal()):
            problems.append("kernel basis not primitive")
    if problems:
        return {"matrix": a.to_lists(), "problems": problems}
    return None


def _check_form_unimodular(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    problems = []
    if abs(determinant(model.intersection_form)) != 1:
        problems.append("form not unimodular")
    if model.intersection_form.transpose() != -model.intersection_form:
        problems.append("form not skew-symmetric")
    n, r = config.total_boundary, len(config.components)
    genus = config.q_genus + sum(c.genus for c in config.components) + n - r
    euler_closed = 2 - 2 * config.q_genus - n + sum(
        2 - 2 * c.genus - c.boundary_count for c in config.components
    )
    if euler_closed != 2 - 2 * genus or model.rank != 2 * genus:
        problems.append("rank law violated")
    if problems:
        return _model_witness(config, problems=problems)
    return None


def _check_orthogonal_complements(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    n, r = model.n_circles, model.n_components
    boundary_cols = []
    for j in range(r):
        col = [0] * n
        for i in range(model.config.components[j].boundary_count):
            col[model.circle_index(j, i)] = 1
        boundary_cols.append(IntVector(col))
    boundary_lattice = IntMatrix.from_columns(boundary_cols, rows=n)
    # 0-classes annihilating every component fundamental class:
    ann_rows = IntMatrix([c.to_list() for c in boundary_cols], cols=n)
    if not lattices_equal(kernel_basis(ann_rows), model.k0_basis):
        return _model_witness(config, problem="two-sided classes != annihilator of fundamentals")
    ann_of_k0 = kernel_basis(model.k0_basis.transpose())
    if not lattices_equal(ann_of_k0, boundary_lattice):
        return _model_witness(config, problem="annihilator of two-sided classes != fundamentals")
    return None


def _check_boundary_image(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    if not lattices_equal(model.boundary_matrix, model.k0_basis):
        return _model_witness(config, problem="boundary image differs from two-sided lattice")
    return None


def _check_adjunction(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    for idx in range(model.rank):
        a = IntVector.unit(model.rank, idx)
        boundary = model.mv_boundary(a)
        for (j, i) in model.circle_order:
            chain = IntVector(1 if ji == (j, i) else 0 for ji in model.circle_order)
            ambient = model.circle_class(j, i)
            if model.pair(a, ambient) != model.circle_pairing(boundary, chain):
                return _model_witness(
                    config, basis_index=idx, circle=[j, i], problem="adjunction identity fails"
                )
    return None


def _check_circle_orthogonality(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    classes = [model.circle_class(j, i) for (j, i) in model.circle_order]
    for x in classes:
        for y in classes:
            if model.pair(x, y) != 0:
                return _model_witness(config, problem="circle classes not mutually orthogonal")
    return None


def _check_symplectic(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    rng = random.Random(_subseed(plan.seed, 20, index))
    word = _random_ambient_word(model, rng, plan.exponent_bound)
    action = transvection_action(model, word)
    J = model.intersection_form
    if action.transpose() * J * action != J:
        return _model_witness(config, word=word_to_json_dict(word), problem="action not symplectic")
    return None


def _check_delta_additive(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    w1 = random_weakly_torelli_word(model, plan, 2 * index)
    w2 = random_weakly_torelli_word(model, plan, 2 * index + 1)
    d1 = delta_difference(model, w1)
    d2 = delta_difference(model, w2)
    if delta_difference(model, concat(w1, w2)).matrix != (d1 + d2).matrix:
        return _model_witness(
            config,
            word1=word_to_json_dict(w1),
            word2=word_to_json_dict(w2),
            problem="difference map not additive",
        )
    if delta_difference(model, invert(w1)).matrix != (-d1).matrix:
        return _model_witness(
            config, word1=word_to_json_dict(w1), problem="difference map of inverse not negated"
        )
    return None


def _check_functional_equation(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    word = random_weakly_torelli_word(model, plan, index)
    action = transvection_action(model, word)
    delta = delta_difference(model, word)
    for idx in range(model.rank):
        e = IntVector.unit(model.rank, idx)
        residual = action.apply(e) - e
        boundary = model.k0_coords(model.mv_boundary(e))
        expected = model.ambient_from_h1bar(delta.matrix.apply(boundary))
        if residual != expected:
            return _model_witness(
                config,
                word=word_to_json_dict(word),
                basis_index=idx,
                problem="displacement != difference of boundary",
            )
    return None


def _check_well_defined(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    word = random_weakly_torelli_word(model, plan, index)
    action = transvection_action(model, word)
    rng = random.Random(_subseed(plan.seed, 21, index))
    a = IntVector(rng.randint(-2, 2) for _ in range(model.rank))
    # Same boundary: shift by a combination of boundary-less basis classes.
    shift = IntVector.zeros(model.rank)
    for idx, label in enumerate(model.labels):
        if label[0] in ("qa", "qb", "pa", "pb", "circle"):
            shift = shift + rng.randint(-2, 2) * IntVector.unit(model.rank, idx)
    a2 = a + shift
    if model.mv_boundary(a) != model.mv_boundary(a2):
        return _model_witness(config, problem="shift unexpectedly changed the boundary")
    r1 = model.h1bar_from_ambient(action.apply(a) - a)
    r2 = model.h1bar_from_ambient(action.apply(a2) - a2)
    if r1 != r2:
        return _model_witness(
            config, word=word_to_json_dict(word), problem="difference class not boundary-determined"
        )
    return None


def _check_delta_symmetric(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    word = random_weakly_torelli_word(model, plan, index)
    delta = delta_difference(model, word)
    if not criteria.is_symmetric(model, delta):
        return _model_witness(
            config, word=word_to_json_dict(word), delta=delta.matrix.to_lists(),
            problem="difference map not symmetric",
        )
    return None


def _check_identity_extension(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    word = random_weakly_torelli_word(model, plan, index)
    decided = criteria.decide_extension_by_identity(model, word)
    acted = transvection_action(model, word) == IntMatrix.identity(model.rank)
    if decided != acted:
        return _model_witness(
            config,
            word=word_to_json_dict(word),
            problem=f"decider says {decided}, action identity is {acted}",
        )
    return None


def _check_correction_round_trip(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    word = random_weakly_torelli_word(model, plan, index)
    correction = criteria.decide_multitwist_correctable(model, word)
    if correction is None:
        return None
    corrected = concat(realization.build_boundary_multitwist(model, correction), word)
    if transvection_action(model, corrected) != IntMatrix.identity(model.rank):
        return _model_witness(
            config,
            word=word_to_json_dict(word),
            correction=correction.to_json(),
            problem="correcting multi-twist does not trivialize the action",
        )
    return None


def _check_three_circle_guarantee(plan, index, model_factory):
    rng = random.Random(_subseed(plan.seed, 22, index))
    small = TrialPlan(
        seed=plan.seed,
        trials=plan.trials,
        max_q_genus=plan.max_q_genus,
        max_component_genus=plan.max_component_genus,
        max_boundary_count=min(3, plan.max_boundary_count),
        max_components=plan.max_components,
        exponent_bound=plan.exponent_bound,
    )
    config = random_config(small, index)
    model = model_factory(config)
    word = random_weakly_torelli_word(model, small, index)
    extendable = criteria.decide_extendable(model, word)
    correction = criteria.decide_multitwist_correctable(model, word)
    if extendable != (correction is not None):
        return _model_witness(
            config, word=word_to_json_dict(word), problem="guarantee broken on a word"
        )
    delta = random_symmetric_reducible_delta(model, rng)
    if criteria.diagonal_restriction(model, delta) is None:
        return _model_witness(
            config, delta=delta.matrix.to_lists(), problem="symmetric map without diagonal restriction"
        )
    return None


def _check_realization_round_trip(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    rng = random.Random(_subseed(plan.seed, 23, index))
    delta = random_symmetric_reducible_delta(model, rng)
    realized = realization.realize_delta(model, delta)
    if delta_difference(model, realized.word).matrix != delta.matrix:
        return _model_witness(
            config, delta=delta.matrix.to_lists(), problem="realized word has wrong difference map"
        )
    witness_action = transvection_action(model, realized.torelli_witness)
    if witness_action != IntMatrix.identity(model.rank):
        return _model_witness(
            config, delta=delta.matrix.to_lists(), problem="bi-twist witness acts nontrivially"
        )
    return None


def _check_multitwist_difference(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    rng = random.Random(_subseed(plan.seed, 24, index))
    exponents = criteria.DiagonalMap(
        [rng.randint(-plan.exponent_bound, plan.exponent_bound) for _ in range(model.n_circles)]
    )
    word = realization.build_boundary_multitwist(model, exponents)
    expected = criteria.restriction_of_diagonal(model, exponents)
    if delta_difference(model, word).matrix != expected.matrix:
        return _model_witness(
            config, exponents=exponents.to_json(), problem="multi-twist difference map wrong"
        )
    return None


def _check_basis_change(plan, index, model_factory):
    rng = random.Random(_subseed(plan.seed, 25, index))
    size = rng.randint(1, 5)
    entries = [[0] * size for _ in range(size)]
    for r in range(size):
        for c in range(r, size):
            entries[r][c] = entries[c][r] = rng.randint(-2, 2)
    matrix = IntMatrix(entries, cols=size)
    coeffs = realization.sym_basis_change(matrix, size)
    if realization.reconstruct_from_coefficients(coeffs) != matrix:
        return {"matrix": matrix.to_lists(), "problem": "basis change does not reconstruct"}
    return None


def _check_peripheral_formula(plan, index, model_factory):
    config = random_config(plan, index)
    model = model_factory(config)
    rng = random.Random(_subseed(plan.seed, 26, index))
    j = rng.randrange(model.n_components)
    count = model.config.components[j].boundary_count
    subset = [i for i in range(count) if rng.random() < 0.5] or [rng.randrange(count)]
    exponent = rng.randint(-plan.exponent_bound, plan.exponent_bound)
    word = TwistWord([TwistFactor(realization.peripheral_class(model, j, subset), exponent, LOCUS_Q)])
    direct = realization.peripheral_twist_delta(model, j, subset, exponent)
    if delta_difference(model, word).matrix != direct.matrix:
        return _model_witness(
            config, component=j, subset=subset, problem="peripheral twist formula mismatch"
        )
    return None


def _check_sign_flip(plan, index, model_factory):
    config = random_config(plan, index)
    model = build_model(config)
    flipped = build_model(config, pairing_sign=-1)
    word = random_weakly_torelli_word(model, plan, index)
    report = criteria.analyze(model, word)
    report_flipped = criteria.analyze(flipped, word)
    if report.to_json_dict() != report_flipped.to_json_dict():
        return _model_witness(
            config, word=word_to_json_dict(word), problem="verdicts depend on the pairing sign"
        )
    return None


def _check_generators(plan, index, model_factory):
    config = random_config(plan, index)
    config.validate()
    model = model_factory(config)
    word = random_weakly_torelli_word(model, plan, index)
    if not is_weakly_torelli(model, word):
        return _model_witness(
            config, word=word_to_json_dict(word), problem="generated word not weakly Torelli"
        )
    return None


INVARIANTS: tuple[tuple[str, Check], ...] = (
    ("exactlin_smith_form", _check_smith_form),
    ("exactlin_solver", _check_solver),
    ("exactlin_kernel", _check_kernel),
    ("model_form_unimodular", _check_form_unimodular),
    ("model_orthogonal_complements", _check_orthogonal_complements),
    ("model_boundary_image", _check_boundary_image),
    ("model_adjunction", _check_adjunction),
    ("model_circle_orthogonality", _check_circle_orthogonality),
    ("word_symplectic", _check_symplectic),
    ("delta_additive", _check_delta_additive),
    ("delta_functional_equation", _check_functional_equation),
    ("delta_well_defined", _check_well_defined),
    ("delta_symmetric", _check_delta_symmetric),
    ("identity_extension_matches_action", _check_identity_extension),
    ("correction_round_trip", _check_correction_round_trip),
    ("three_circle_guarantee", _check_three_circle_guarantee),
    ("realization_round_trip", _check_realization_round_trip),
    ("multitwist_difference", _check_multitwist_difference),
    ("basis_change_round_trip", _check_basis_change),
    ("peripheral_twist_formula", _check_peripheral_formula),
    ("sign_flip_invariance", _check_sign_flip),
    ("generator_soundness", _check_generators),
)


def verify_all(
    plan: TrialPlan,
    model_factory: Callable[[SubsurfaceConfig], HomologyModel] = build_model,
) -> list[dict]:
    """Run every registered invariant for ``plan.trials`` trials each.

    Returns one report per invariant: its name, the trial count, and the
    witnesses of any failures.
    """
    plan.validate()
    reports = []
    for name, check in INVARIANTS:
        failures = []
        for index in range(plan.trials):
            witness = check(plan, index, model_factory)
            if witness is not None:
                witness["trial"] = index
                failures.append(witness)
        reports.append({"invariant": name, "trials": plan.trials, "failures": failures})
    return reports


def paper_example_4(m: int):
    """Regression configuration: genus-one subsurface against a genus-one
    complement with four boundary circles, twisted about the class of the
    union of circles 0 and 1.

    For m = 0 the word acts trivially and every verdict is positive.
    """
    config = SubsurfaceConfig(1, [ComplementComponent(1, 4)])
    model = build_model(config)
    cls = model.circle_class(0, 0) + model.circle_class(0, 1)
    word = TwistWord([TwistFactor(cls, m, LOCUS_Q)])
    return criteria.analyze(model, word)
