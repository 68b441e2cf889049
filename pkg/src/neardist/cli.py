"""Command-line front end: generate, count, check-hypothesis, verify, search,
analyze, diameter.

Every command writes its outputs plus a manifest.json into the output
directory; re-running the same command reproduces the outputs byte for byte
(all randomness is seeded, manifests carry no timestamps, paths are stored
relative to the output directory).

Exit codes: 0 success (and, for verify and check-hypothesis, the semantic
positive); 1 semantic negative (bound exceeded or near-sum check fails);
2 malformed input or invalid parameters; 3 structurally valid input in an
unsupported dimension.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .constructions import (
    augmented_chain,
    column_chain,
    random_separated,
    three_column,
    two_column,
)
from .counting import count_pairs
from .fileio import (
    InputFormatError,
    UnsupportedDimensionError,
    load_intervals,
    load_point_set,
    save_intervals,
    save_point_set,
    write_json,
    write_text,
)
from .geometry import IntervalFamily, check_hypothesis, diameter, verify_bound
from .graphs import (
    TriangleCase,
    angle_diagnostic,
    build_graph,
    classify_label_triple,
    find_tripartite,
    homogenize,
)
from .search import SearchConfig, anneal

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3


def _write_manifest(
    out_dir: Path,
    command: str,
    params: dict,
    input_paths: list[str],
    output_paths: list[str],
    seed: int | None,
) -> None:
    write_json(
        out_dir / "manifest.json",
        {
            "command": command,
            "params": params,
            "input_paths": input_paths,
            "output_paths": output_paths,
            "seed": seed,
            "tool_version": __version__,
        },
    )


def _out_dir(args) -> Path:
    out = Path(getattr(args, "output_dir", ".") or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _points_name(args) -> str:
    return "points.csv" if getattr(args, "format", "json") == "csv" else "points.json"


def cmd_generate(args) -> int:
    out = _out_dir(args)
    seed = getattr(args, "seed", None)
    name = args.construction
    if name == "two-column":
        built = two_column(args.n, args.k, args.t, args.eps)
    elif name == "remark2":
        built = three_column(args.n, args.t1, args.t2)
    elif name == "emp1":
        built = column_chain(args.n, args.k, args.t)
    elif name == "problem3":
        built = augmented_chain(args.n, args.k, args.t)
    else:
        seed = seed if seed is not None else 0
        ps = random_separated(args.n, args.box, seed)
        points_path = out / _points_name(args)
        save_point_set(ps, points_path)
        sidecar = {
            "name": "random",
            "params": {"n": args.n, "box": args.box, "seed": seed},
            "predicted_count": None,
        }
        write_json(out / "construction.json", sidecar)
        _write_manifest(
            out,
            "generate",
            sidecar["params"] | {"construction": "random"},
            [],
            [points_path.name, "construction.json"],
            seed,
        )
        print(f"generated random n={ps.n} -> {points_path}")
        return EXIT_OK

    points_path = out / _points_name(args)
    save_point_set(built.ps, points_path)
    save_intervals(built.iv, out / "intervals.json")
    write_json(
        out / "construction.json",
        {"name": name, "params": built.params, "predicted_count": built.predicted_count},
    )
    _write_manifest(
        out,
        "generate",
        built.params | {"construction": name},
        [],
        [points_path.name, "intervals.json", "construction.json"],
        seed,
    )
    print(
        f"generated {name} n={built.ps.n} k={built.iv.k} "
        f"predicted_count={built.predicted_count} -> {out}"
    )
    return EXIT_OK


def cmd_count(args) -> int:
    out = _out_dir(args)
    ps = load_point_set(args.points)
    iv = load_intervals(args.intervals)
    report = count_pairs(ps, iv, method=args.method)
    write_json(out / "count.json", report.to_dict())
    _write_manifest(
        out,
        "count",
        {"method": args.method},
        [str(args.points), str(args.intervals)],
        ["count.json"],
        None,
    )
    print(f"n={ps.n} total={report.total} method={report.method}")
    return EXIT_OK


def cmd_check_hypothesis(args) -> int:
    out = _out_dir(args)
    iv = load_intervals(args.intervals)
    report = check_hypothesis(iv, args.delta)
    write_json(out / "hypothesis.json", report.to_dict())
    _write_manifest(
        out,
        "check-hypothesis",
        {"delta": args.delta},
        [str(args.intervals)],
        ["hypothesis.json"],
        None,
    )
    print(f"k={iv.k} delta={args.delta} holds={report.holds} violations={len(report.violations)}")
    return EXIT_OK if report.holds else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    out = _out_dir(args)
    ps = load_point_set(args.points)
    iv = load_intervals(args.intervals)
    report = verify_bound(ps, iv, args.delta, args.C)
    write_json(out / "verify.json", report.to_dict())
    _write_manifest(
        out,
        "verify",
        {"delta": args.delta, "C": args.C},
        [str(args.points), str(args.intervals)],
        ["verify.json"],
        None,
    )
    print(
        f"n={ps.n} separated={report.separated} hypothesis={report.hypothesis.holds} "
        f"count={report.count.total} bound={report.bound_value} within_bound={report.within_bound}"
    )
    return EXIT_OK if report.within_bound and report.hypothesis.holds else EXIT_NEGATIVE


def cmd_search(args) -> int:
    out = _out_dir(args)
    input_paths: list[str] = []
    if args.config:
        input_paths.append(str(args.config))
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                raw = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputFormatError(f"cannot parse {args.config}: {exc}") from exc
        if not isinstance(raw, dict) or "intervals" not in raw:
            raise InputFormatError(f"{args.config}: expected an object with 'intervals'")
        iv = IntervalFamily(raw["intervals"].get("t", []), raw["intervals"].get("alpha", 0))
        known = {
            "n",
            "iterations",
            "seed",
            "initial_temperature",
            "cooling_factor",
            "jitter_sigma",
            "teleport_probability",
            "restarts",
        }
        fields = {k: v for k, v in raw.items() if k in known}
        try:
            config = SearchConfig(iv=iv, **fields)
        except TypeError as exc:
            raise InputFormatError(f"{args.config}: {exc}") from exc
    else:
        if args.intervals is None or args.n is None or args.iterations is None:
            raise InputFormatError("search needs --config, or --intervals with --n and --iterations")
        input_paths.append(str(args.intervals))
        iv = load_intervals(args.intervals)
        config = SearchConfig(
            n=args.n,
            iv=iv,
            iterations=args.iterations,
            seed=getattr(args, "seed", None) or 0,
            restarts=args.restarts,
        )

    initial = None
    if args.initial:
        input_paths.append(str(args.initial))
        initial = load_point_set(args.initial)

    result = anneal(config, initial)
    save_point_set(result.best_ps, out / "best_points.json")
    write_json(
        out / "search.json",
        result.summary_dict()
        | {"iterations": config.iterations, "restarts": config.restarts, "seed": config.seed},
    )
    lines = ["iteration,count"] + [f"{i},{c}" for i, c in result.trajectory]
    write_text(out / "trajectory.csv", "\n".join(lines) + "\n")
    _write_manifest(
        out,
        "search",
        {"n": config.n, "iterations": config.iterations, "restarts": config.restarts},
        input_paths,
        ["best_points.json", "search.json", "trajectory.csv"],
        config.seed,
    )
    print(f"n={config.n} best_count={result.best_count} accepted={result.accepted_moves}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    out = _out_dir(args)
    ps = load_point_set(args.points)
    iv = load_intervals(args.intervals)
    graph = build_graph(ps, iv)
    witness = find_tripartite(graph, args.s)
    payload: dict = {
        "n": graph.n,
        "edges": graph.edge_count,
        "s": args.s,
        "m": args.m,
        "delta": args.delta,
        "witness": None,
        "case": None,
        "angle_check": None,
    }
    if witness is not None:
        refined = homogenize(graph, witness, args.m)
        if refined is not None:
            payload["witness"] = refined.to_dict()
            case = classify_label_triple(refined.label_xb, refined.label_xd, refined.label_bd)
            payload["case"] = case.value
            if case is TriangleCase.UNIQUE_MAX:
                triangle = (witness.x, refined.B2[0], refined.D2[0])
                payload["angle_check"] = angle_diagnostic(ps, triangle, iv, args.delta).to_dict()
        else:
            payload["witness"] = witness.to_dict() | {"B2": None, "D2": None, "labels": None}
    write_json(out / "analysis.json", payload)
    _write_manifest(
        out,
        "analyze",
        {"s": args.s, "m": args.m, "delta": args.delta},
        [str(args.points), str(args.intervals)],
        ["analysis.json"],
        None,
    )
    print(
        f"n={graph.n} edges={graph.edge_count} "
        f"witness={'found' if witness is not None else 'none'}"
    )
    return EXIT_OK


def cmd_diameter(args) -> int:
    out = _out_dir(args)
    ps = load_point_set(args.points)
    value = diameter(ps)
    write_json(out / "diameter.json", {"n": ps.n, "diameter": value})
    _write_manifest(out, "diameter", {}, [str(args.points)], ["diameter.json"], None)
    print(f"n={ps.n} diameter={value!r}")
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output-dir", default=argparse.SUPPRESS, help="directory for outputs")
    parser.add_argument(
        "--format",
        choices=["json", "csv"],
        default=argparse.SUPPRESS,
        help="point file format (default json)",
    )
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neardist",
        description="Count, construct, verify, and search near-equal distances "
        "in separated planar point sets.",
    )
    parser.add_argument("--output-dir", default=".", help="directory for outputs")
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--seed", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a construction or random set")
    gen.add_argument(
        "construction", choices=["two-column", "remark2", "emp1", "problem3", "random"]
    )
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int, default=2)
    gen.add_argument("--t", type=float, default=None)
    gen.add_argument("--eps", type=float, default=0.1)
    gen.add_argument("--t1", type=float, default=None)
    gen.add_argument("--t2", type=float, default=None)
    gen.add_argument("--box", type=float, default=None)
    _add_common(gen)
    gen.set_defaults(func=cmd_generate)

    cnt = sub.add_parser("count", help="count qualifying pairs")
    cnt.add_argument("points")
    cnt.add_argument("intervals")
    cnt.add_argument("--method", choices=["brute", "pruned"], default="brute")
    _add_common(cnt)
    cnt.set_defaults(func=cmd_count)

    chk = sub.add_parser("check-hypothesis", help="near-sum check on interval values")
    chk.add_argument("intervals")
    chk.add_argument("--delta", type=float, required=True)
    _add_common(chk)
    chk.set_defaults(func=cmd_check_hypothesis)

    ver = sub.add_parser("verify", help="count and compare against n^2/4 + C*n")
    ver.add_argument("points")
    ver.add_argument("intervals")
    ver.add_argument("--delta", type=float, required=True)
    ver.add_argument("--C", type=float, required=True)
    _add_common(ver)
    ver.set_defaults(func=cmd_verify)

    sea = sub.add_parser("search", help="simulated annealing over point positions")
    sea.add_argument("--config", default=None, help="SearchConfig JSON file")
    sea.add_argument("--intervals", default=None)
    sea.add_argument("--n", type=int, default=None)
    sea.add_argument("--iterations", type=int, default=None)
    sea.add_argument("--restarts", type=int, default=1)
    sea.add_argument("--initial", default=None, help="starting point set")
    _add_common(sea)
    sea.set_defaults(func=cmd_search)

    ana = sub.add_parser("analyze", help="extract tripartite witnesses")
    ana.add_argument("points")
    ana.add_argument("intervals")
    ana.add_argument("--s", type=int, default=2)
    ana.add_argument("--m", type=int, default=1)
    ana.add_argument("--delta", type=float, default=0.1)
    _add_common(ana)
    ana.set_defaults(func=cmd_analyze)

    dia = sub.add_parser("diameter", help="maximum pairwise distance")
    dia.add_argument("points")
    _add_common(dia)
    dia.set_defaults(func=cmd_diameter)

    return parser


def _validate_generate_args(args) -> None:
    name = args.construction
    if name in ("two-column", "emp1", "problem3") and args.t is None:
        raise InputFormatError(f"{name} needs --t")
    if name == "remark2" and (args.t1 is None or args.t2 is None):
        raise InputFormatError("remark2 needs --t1 and --t2")
    if name == "random" and args.box is None:
        raise InputFormatError("random needs --box")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            _validate_generate_args(args)
        return args.func(args)
    except UnsupportedDimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InputFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
