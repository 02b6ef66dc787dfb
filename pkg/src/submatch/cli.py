"""Command-line entry point.

Subcommands: gen (synthetic datasets), match (filter one pair), oracle
(exact search on one pair), bench (metrics over a dataset), scaling
(cost-vs-size probe). Exit codes: 0 completed, 1 decision false on a
single-pair run, 2 usage error, 3 runtime error (including oracle
timeout). Every run echoes its resolved configuration on stdout; stdout
carries only deterministic output, wall-clock readings go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import evaluate, scaling_probe
from .datagen import GenConfig, build_dataset
from .filtering import (
    EXACT,
    INDUCED,
    MONOMORPHISM,
    SAMPLED,
    FilterConfig,
    MatchReport,
    run_filter,
)
from .graphs import Graph, parse_edge_list
from .io import read_dataset
from .oracles import FOUND, NOT_FOUND, TIMEOUT, vf2_search

__all__ = ["main"]

_SEMANTICS_FLAG = {"mono": MONOMORPHISM, "induced": INDUCED}


class _Failure(Exception):
    """Runtime failure: reported on stderr, exit code 3."""


def _add_filter_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--layers", type=int, default=5, help="recursion depth L (>= 1)")
    sub.add_argument("--samples", type=int, default=5, help="passes K per layer (>= 1)")
    sub.add_argument("--drop-prob", type=float, default=0.5, help="edge drop probability")
    sub.add_argument("--mode", choices=(SAMPLED, "exact"), default=SAMPLED)
    sub.add_argument("--semantics", choices=tuple(_SEMANTICS_FLAG), default="mono")
    sub.add_argument("--check", choices=("counting", "matching"), default="counting")
    sub.add_argument("--cycles", action="store_true", help="enable cycle augmentation")
    sub.add_argument("--cycle-max-len", type=int, default=6)
    sub.add_argument("--attr-epsilon", type=float, default=1e-9)
    sub.add_argument("--seed", type=int, default=0)


def _filter_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> FilterConfig:
    try:
        return FilterConfig(
            layers=args.layers,
            samples=args.samples,
            drop_prob=args.drop_prob,
            mode=EXACT if args.mode == "exact" else SAMPLED,
            semantics=_SEMANTICS_FLAG[args.semantics],
            attr_epsilon=args.attr_epsilon,
            check_mode=args.check,
            cycle_augment=args.cycles,
            cycle_max_len=args.cycle_max_len,
            seed=args.seed,
        )
    except ValueError as exc:
        parser.error(str(exc))
        raise AssertionError("unreachable")


def _read_text(path: str, parser: argparse.ArgumentParser) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        parser.error(f"cannot read {path}: {exc}")
        raise AssertionError("unreachable")


def _load_graph(path: str, parser: argparse.ArgumentParser) -> Graph:
    try:
        return parse_edge_list(_read_text(path, parser))
    except ValueError as exc:
        raise _Failure(f"{path}: {exc}") from None


def _echo_config(payload: dict) -> None:
    print("config " + json.dumps(payload, sort_keys=True))


def _report_obj(report: MatchReport, config: FilterConfig) -> dict:
    # wall time deliberately omitted: report files are byte-stable
    return {
        "decision": report.decision,
        "iterations": report.iterations,
        "fixpoint": report.fixpoint,
        "op_count": report.op_count,
        "indicators": [layer.tolist() for layer in report.indicators],
        "config": config.to_dict(),
    }


def _cmd_match(args, parser) -> int:
    config = _filter_config(args, parser)
    target = _load_graph(args.target, parser)
    query = _load_graph(args.query, parser)
    _echo_config(config.to_dict())
    report = run_filter(target, query, config)
    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(_report_obj(report, config), fh, sort_keys=True)
            fh.write("\n")
    print("MATCH" if report.decision else "NO-MATCH")
    print(f"wall_time {report.wall_time:.6f}s", file=sys.stderr)
    return 0 if report.decision else 1


def _cmd_oracle(args, parser) -> int:
    if args.budget_ms <= 0:
        parser.error(f"--budget-ms must be positive, got {args.budget_ms}")
    target = _load_graph(args.target, parser)
    query = _load_graph(args.query, parser)
    semantics = _SEMANTICS_FLAG[args.semantics]
    _echo_config(
        {
            "budget_ms": args.budget_ms,
            "semantics": semantics,
            "attr_epsilon": args.attr_epsilon,
        }
    )
    result = vf2_search(
        target, query, semantics, args.attr_epsilon, args.budget_ms / 1000.0
    )
    if result.status == FOUND:
        print("FOUND")
        print("embedding " + json.dumps(list(result.embedding)))
        return 0
    if result.status == NOT_FOUND:
        print("NOT-FOUND")
        return 1
    print("TIMEOUT")
    return 3


def _cmd_gen(args, parser) -> int:
    raw = _read_text(args.config, parser)
    try:
        obj = json.loads(raw)
        if not isinstance(obj, dict):
            raise ValueError("config must be a JSON object")
    except ValueError as exc:
        parser.error(f"{args.config}: {exc}")
    try:
        config = GenConfig(**obj)
    except (TypeError, ValueError) as exc:
        parser.error(f"{args.config}: {exc}")
    _echo_config(config.to_dict())
    records = build_dataset(config, args.out)
    print(f"records {len(records)}")
    print(f"wrote {args.out}")
    return 0


def _cmd_bench(args, parser) -> int:
    config = _filter_config(args, parser)
    try:
        dataset = read_dataset(args.dataset)
    except OSError as exc:
        parser.error(f"cannot read {args.dataset}: {exc}")
    except ValueError as exc:
        raise _Failure(str(exc)) from None
    if not dataset:
        raise _Failure(f"{args.dataset}: empty dataset")
    _echo_config(config.to_dict())
    metrics = evaluate(dataset, config)
    print(f"records {len(dataset)}")
    print(f"accuracy {metrics.accuracy:.6f}")
    print(f"false_negative_rate {metrics.false_negative_rate:.6f}")
    print(f"false_positive_rate {metrics.false_positive_rate:.6f}")
    print(
        f"wall_mean {metrics.wall_mean:.6f}s wall_p50 {metrics.wall_p50:.6f}s "
        f"wall_p95 {metrics.wall_p95:.6f}s",
        file=sys.stderr,
    )
    if args.out:
        payload = {"config": config.to_dict(), "metrics": metrics.to_dict()}
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")
    return 0


def _cmd_scaling(args, parser) -> int:
    config = _filter_config(args, parser)
    try:
        sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    except ValueError:
        parser.error(f"--sizes must be comma-separated integers, got {args.sizes!r}")
    _echo_config(config.to_dict())
    try:
        result = scaling_probe(
            sizes,
            config,
            query_size=args.query_size,
            avg_degree=args.avg_degree,
            repeats=args.repeats,
        )
    except ValueError as exc:
        parser.error(str(exc))
    for size, ops in zip(result.sizes, result.op_means):
        print(f"size {size} ops {ops:.1f}")
    print(f"op_slope {result.op_slope:.4f}")
    for size, wall in zip(result.sizes, result.wall_means):
        print(f"size {size} wall {wall:.6f}s", file=sys.stderr)
    print(f"wall_slope {result.wall_slope:.4f}", file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump({"config": config.to_dict(), **result.ops_dict()}, fh, sort_keys=True)
            fh.write("\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="submatch",
        description="Subgraph matching via iterated Hall-condition filtering.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="generate a labeled synthetic dataset")
    gen.add_argument("--config", required=True, help="JSON file of generator settings")
    gen.add_argument("--out", required=True, help="dataset output path")

    match = subs.add_parser("match", help="run the filter on one pair")
    match.add_argument("--target", required=True, help="target edge-list file")
    match.add_argument("--query", required=True, help="query edge-list file")
    match.add_argument("--report", help="write the match report as JSON")
    _add_filter_flags(match)

    oracle = subs.add_parser("oracle", help="exact search on one pair")
    oracle.add_argument("--target", required=True)
    oracle.add_argument("--query", required=True)
    oracle.add_argument("--semantics", choices=tuple(_SEMANTICS_FLAG), default="mono")
    oracle.add_argument("--budget-ms", type=int, default=10000)
    oracle.add_argument("--attr-epsilon", type=float, default=1e-9)

    bench = subs.add_parser("bench", help="evaluate the filter over a dataset")
    bench.add_argument("--dataset", required=True)
    bench.add_argument("--out", help="write metrics as JSON")
    _add_filter_flags(bench)

    scaling = subs.add_parser("scaling", help="cost-vs-size probe")
    scaling.add_argument("--sizes", required=True, help="comma-separated target sizes")
    scaling.add_argument("--query-size", type=int, default=15)
    scaling.add_argument("--avg-degree", type=float, default=6.0)
    scaling.add_argument("--repeats", type=int, default=3)
    scaling.add_argument("--out", help="write op counts as JSON")
    _add_filter_flags(scaling)

    return parser


_COMMANDS = {
    "gen": _cmd_gen,
    "match": _cmd_match,
    "oracle": _cmd_oracle,
    "bench": _cmd_bench,
    "scaling": _cmd_scaling,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, parser)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
