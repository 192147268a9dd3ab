"""Command-line front end.

Subcommands: analyze a word against a configuration, realize a difference
map as a word, run the randomized invariant suite, print lattice ranks,
and run the built-in four-circle regression example.

Exit codes: 0 success; 1 invariant failures from ``check``; 2 parse or
schema error; 3 locus or dimension violation; 4 difference map not
symmetric; 5 difference map not completely reducible.  stdout carries the
payload, stderr the diagnostics.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import gcd
from typing import Mapping

from torelli.criteria import (
    NotCompletelyReducible,
    NotSymmetric,
    analyze,
    delta_from_blocks,
    group_ranks,
)
from torelli.exactlin import DimensionMismatch, IntMatrix
from torelli.mapping_class import (
    LocusViolation,
    NotWeaklyTorelli,
    WordParseError,
    difference_map_from_matrix,
    word_from_json_dict,
    word_to_json_dict,
)
from torelli.oracle import TrialPlan, paper_example_4, verify_all
from torelli.realization import realize_delta
from torelli.surface_model import InvalidConfig, SubsurfaceConfig, build_model

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_LOCUS = 3
EXIT_NOT_SYMMETRIC = 4
EXIT_NOT_REDUCIBLE = 5


class _ParseFailure(Exception):
    pass


def _load_json(path: str) -> object:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise _ParseFailure(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise _ParseFailure(f"{path} is not valid JSON: {exc}")


def _load_config(path: str) -> SubsurfaceConfig:
    try:
        return SubsurfaceConfig.from_json_dict(_load_json(path))
    except InvalidConfig as exc:
        raise _ParseFailure(f"{path}: {exc}")


def _load_word(path: str, rank: int):
    try:
        return word_from_json_dict(_load_json(path), rank)
    except WordParseError as exc:
        raise _ParseFailure(f"{path}: {exc}")


def _int_matrix(data, where: str) -> IntMatrix:
    if not isinstance(data, list) or any(not isinstance(row, list) for row in data):
        raise _ParseFailure(f"{where} must be a list of rows")
    for row in data:
        for e in row:
            if not isinstance(e, int) or isinstance(e, bool):
                raise _ParseFailure(f"{where} entries must be integers")
    try:
        return IntMatrix(data, cols=len(data[0]) if data else 0)
    except DimensionMismatch as exc:
        raise _ParseFailure(f"{where}: {exc}")


def _load_delta(path: str, model):
    data = _load_json(path)
    if not isinstance(data, Mapping):
        raise _ParseFailure(f"{path}: delta must be a JSON object")
    try:
        if "blocks" in data:
            if not isinstance(data["blocks"], Mapping):
                raise _ParseFailure(f"{path}: field 'blocks' must be an object")
            blocks = {}
            for key, block in data["blocks"].items():
                try:
                    j = int(key)
                except ValueError:
                    raise _ParseFailure(f"{path}: block key {key!r} is not a component index")
                blocks[j] = _int_matrix(block, f"blocks[{key}]")
            return delta_from_blocks(model, blocks)
        if "matrix" in data:
            return difference_map_from_matrix(model, _int_matrix(data["matrix"], "matrix"))
    except DimensionMismatch as exc:
        raise _ParseFailure(f"{path}: {exc}")
    raise _ParseFailure(f"{path}: delta needs a 'blocks' or 'matrix' field")


def _emit(payload: object) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _report_text(report) -> str:
    data = report.to_json_dict()
    lines = []
    for field in (
        "weakly_torelli",
        "symmetric",
        "completely_reducible",
        "extension_by_identity_torelli",
        "extendable_to_torelli",
    ):
        lines.append(f"{field}: {'true' if data[field] else 'false'}")
    if data["multitwist_correctable"] is None:
        lines.append("multitwist_correctable: none")
    else:
        lines.append(f"multitwist_correctable: {data['multitwist_correctable']}")
    if data["delta"] is not None:
        lines.append("delta:")
        for row in data["delta"]["matrix"]:
            lines.append(f"  {row}")
    if data["component_matrices"] is not None:
        lines.append("component_matrices:")
        for j, block in enumerate(data["component_matrices"]):
            lines.append(f"  component {j}:")
            for row in block:
                lines.append(f"    {row}")
    return "\n".join(lines)


def _cmd_analyze(args) -> int:
    config = _load_config(args.config)
    model = build_model(config)
    word = _load_word(args.word, model.rank)
    for pos, factor in enumerate(word.factors):
        content = 0
        for entry in factor.curve_class:
            content = gcd(content, entry)
        if content > 1:
            print(
                f"note: factor {pos} class is non-primitive (content {content}); "
                "treated as a transvection",
                file=sys.stderr,
            )
    report = analyze(model, word)
    if args.format == "json":
        _emit(report.to_json_dict())
    else:
        print(_report_text(report))
    return EXIT_OK


def _cmd_realize(args) -> int:
    config = _load_config(args.config)
    model = build_model(config)
    delta = _load_delta(args.delta, model)
    realized = realize_delta(model, delta)
    _emit(word_to_json_dict(realized.word))
    return EXIT_OK


def _cmd_check(args) -> int:
    plan = TrialPlan(
        seed=args.seed,
        trials=args.trials,
        max_q_genus=args.max_q_genus,
        max_component_genus=args.max_component_genus,
        max_boundary_count=args.max_boundary_count,
        max_components=args.max_components,
        exponent_bound=args.max_exponent,
    )
    try:
        plan.validate()
    except ValueError as exc:
        raise _ParseFailure(str(exc))
    reports = verify_all(plan)
    _emit(reports)
    failed = sum(len(r["failures"]) for r in reports)
    if failed:
        print(f"{failed} invariant failure(s)", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _cmd_ranks(args) -> int:
    config = _load_config(args.config)
    _emit(group_ranks(config))
    return EXIT_OK


def _cmd_example4(args) -> int:
    report = paper_example_4(args.m)
    _emit(report.to_json_dict())
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torelli",
        description="Decide when subsurface twist words extend to Torelli maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="analyze a twist word")
    p_analyze.add_argument("--config", required=True, help="surface configuration JSON file")
    p_analyze.add_argument("--word", required=True, help="twist word JSON file")
    p_analyze.add_argument("--format", choices=("json", "text"), default="json")
    p_analyze.set_defaults(func=_cmd_analyze)

    p_realize = sub.add_parser("realize", help="realize a difference map as a word")
    p_realize.add_argument("--config", required=True)
    p_realize.add_argument("--delta", required=True, help="difference map JSON file")
    p_realize.set_defaults(func=_cmd_realize)

    p_check = sub.add_parser("check", help="run the randomized invariant suite")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--trials", type=int, default=50)
    p_check.add_argument("--max-q-genus", type=int, default=2, dest="max_q_genus")
    p_check.add_argument("--max-component-genus", type=int, default=2, dest="max_component_genus")
    p_check.add_argument("--max-boundary-count", type=int, default=4, dest="max_boundary_count")
    p_check.add_argument("--max-components", type=int, default=3, dest="max_components")
    p_check.add_argument("--max-exponent", type=int, default=3, dest="max_exponent")
    p_check.set_defaults(func=_cmd_check)

    p_ranks = sub.add_parser("ranks", help="print lattice ranks for a configuration")
    p_ranks.add_argument("--config", required=True)
    p_ranks.set_defaults(func=_cmd_ranks)

    p_example = sub.add_parser("example4", help="run the four-circle regression example")
    p_example.add_argument("--m", type=int, required=True, help="twist exponent")
    p_example.set_defaults(func=_cmd_example4)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (LocusViolation, NotWeaklyTorelli, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOCUS
    except NotSymmetric as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SYMMETRIC
    except NotCompletelyReducible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_REDUCIBLE


if __name__ == "__main__":
    sys.exit(main())
