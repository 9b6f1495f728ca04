import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import pandas as pd
from pydantic import ValidationError

from data_gen import GeneratorSpec, GraphFamily, generate
from evasion.lieutenant import lieutenant_sweep
from harness.config import ConfigError, InfluenceSettings, build_experiment_config, merge_sources, read_config_file
from harness.experiments import (
    aggregate_dice,
    aggregate_roam,
    build_tasks,
    final_mu,
    load_detector,
    load_network,
    run_dice_replicate,
    run_replicates,
    run_roam_replicate,
    write_outputs,
)
from harness.settings import DEFAULT_SEED, LOG_FORMAT, LOG_LEVEL
from harness.verification import render_report, run_verification
from storage import frame_to_csv, write_edge_list

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2

FAMILIES = [family.value for family in GraphFamily]


def parse_int_range(text: str) -> list[int]:
    """Parse ``"3"``, ``"1,3,5"`` or an inclusive ``"2:8"``.

    Raises
    ------
        argparse.ArgumentTypeError: If the text is none of those forms.

    """
    try:
        if ":" in text:
            start, stop = text.split(":", 1)
            return list(range(int(start), int(stop) + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        msg = f"expected N, N,M,... or START:STOP, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from exc


def parse_network_spec(text: str) -> dict[str, Any]:
    """Turn ``scale-free:n=100,m=3`` into generator values, anything else into an input path."""
    family, sep, params = text.partition(":")
    if not sep or family not in FAMILIES:
        return {"input": text}
    values: dict[str, Any] = {"gen": family}
    for item in params.split(","):
        key, eq, value = item.partition("=")
        if not eq:
            msg = f"expected key=value in network spec {text!r}, got {item!r}"
            raise ValueError(msg)
        values[key.strip()] = value.strip()
    return values


def add_experiment_arguments(parser: argparse.ArgumentParser) -> None:
    """Flags shared by ``roam`` and ``dice``; unset flags stay ``None`` so config files can fill them."""
    source = parser.add_argument_group("network")
    source.add_argument("--input", type=Path, help="Edge-list file of a fixed network.")
    source.add_argument("--gen", choices=FAMILIES, help="Random network family, regenerated per replicate.")
    source.add_argument("--n", type=int)
    source.add_argument("--m", type=int)
    source.add_argument("--k", type=int)
    source.add_argument("--avg", type=float)
    source.add_argument("--beta", type=float)
    source.add_argument("--directed", action="store_true", default=None)

    parser.add_argument("--budget", type=int)
    parser.add_argument("--detector", help="louvain, cnm, gn or external:PATH.")
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--ic-p", type=float)
    parser.add_argument("--mc-samples", type=int)
    parser.add_argument("--models", help="Comma-separated influence models, e.g. ic,lt.")
    parser.add_argument("--replicates", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--out", type=Path, help="Output directory; the aggregate goes to stdout when omitted.")
    parser.add_argument("--config", type=Path, help="Flat key = value file; flags override it.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netcloak", description="Hide nodes and communities from network analysis.")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("generate", help="Write a random network as an edge list.")
    gen.add_argument("family", choices=FAMILIES)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--avg", type=float)
    gen.add_argument("--beta", type=float)
    gen.add_argument("--seed", type=int, default=DEFAULT_SEED)
    gen.add_argument("--out", type=Path)
    gen.set_defaults(handler=cmd_generate)

    roam = commands.add_parser("roam", help="Disguise a source node with repeated ROAM executions.")
    add_experiment_arguments(roam)
    roam.add_argument("--executions", type=int)
    roam.add_argument("--v0-strategy", choices=["max", "min"])
    roam.add_argument("--target-strategy", choices=["max", "min"])
    roam.set_defaults(handler=cmd_roam)

    dice = commands.add_parser("dice", help="Hide a community with rounds of DICE.")
    add_experiment_arguments(dice)
    dice.add_argument("--d", type=int, help="Internal links removed per round.")
    dice.add_argument("--d-sweep", action="store_true", default=None, help="Run every d from 0 to the budget.")
    dice.add_argument("--heatmap", action="store_true", help="Mean final concealment per detector and network.")
    dice.add_argument("--network", action="append", dest="networks", help="Heatmap network, repeatable.")
    dice.add_argument("--detectors", default="louvain,cnm,gn", help="Heatmap detectors, comma-separated.")
    dice.set_defaults(handler=cmd_dice)

    lieutenant = commands.add_parser("lieutenant", help="Sweep lieutenant networks over (k, c).")
    lieutenant.add_argument("--n", type=int, required=True)
    lieutenant.add_argument("--k-range", type=parse_int_range, required=True)
    lieutenant.add_argument("--c-range", type=parse_int_range, required=True)
    lieutenant.add_argument("--models", default="ic,lt")
    lieutenant.add_argument("--ic-p", type=float)
    lieutenant.add_argument("--mc-samples", type=int)
    lieutenant.add_argument("--seed", type=int, default=DEFAULT_SEED)
    lieutenant.add_argument("--workers", type=int, default=1)
    lieutenant.add_argument("--out", type=Path)
    lieutenant.set_defaults(handler=cmd_lieutenant)

    verify = commands.add_parser("verify", help="Run the oracle cross-check suites.")
    verify.add_argument("--quick", action="store_true")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--out", type=Path)
    verify.set_defaults(handler=cmd_verify)
    return parser


def experiment_values(args: argparse.Namespace) -> dict[str, Any]:
    cli = {key: value for key, value in vars(args).items() if key not in {"handler", "command", "config"}}
    file_values = read_config_file(args.config) if args.config is not None else {}
    return merge_sources(cli, file_values)


def emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8", newline="\n")
    logger.info("Wrote %s", out)


def cmd_generate(args: argparse.Namespace) -> int:
    """Generate one network and write it as an edge list."""
    params = {key: getattr(args, key) for key in ("m", "k", "avg", "beta") if getattr(args, key) is not None}
    spec = GeneratorSpec(family=args.family, n=args.n, seed=args.seed, **params)
    g = generate(spec)
    logger.info("Generated %s with %d edges", spec.describe(), g.edge_count)
    emit(write_edge_list(g), args.out)
    return EXIT_OK


def cmd_roam(args: argparse.Namespace) -> int:
    """Run ROAM replicates and write per-replicate trajectories plus the aggregate."""
    config = build_experiment_config("roam", experiment_values(args))
    network = load_network(config)
    outcomes = run_replicates(run_roam_replicate, build_tasks(config, network), config.workers, "ROAM replicates")
    text = write_outputs(config.out, outcomes, aggregate_roam(outcomes))
    if config.out is None:
        sys.stdout.write(text)
    if not any(outcome.ok for outcome in outcomes):
        logger.error("All %d ROAM replicates failed", len(outcomes))
        return EXIT_FAILURE
    return EXIT_OK


def cmd_dice(args: argparse.Namespace) -> int:
    """Run DICE replicates, optionally for every ``d`` or as a detector-by-network heatmap."""
    values = experiment_values(args)
    if args.heatmap:
        return dice_heatmap(values, args.networks or [], args.detectors.split(","))

    config = build_experiment_config("dice", values)
    network = load_network(config)
    detector = load_detector(config.detector, network)
    sweep = range(config.dice.budget + 1) if config.dice.d_sweep else [config.dice.d]
    any_ok = False
    for d in sweep:
        tasks = build_tasks(config, network, detector=detector, d=d)
        outcomes = run_replicates(run_dice_replicate, tasks, config.workers, f"DICE replicates (d={d})")
        any_ok = any_ok or any(outcome.ok for outcome in outcomes)
        out = config.out / f"d_{d}" if config.out is not None and config.dice.d_sweep else config.out
        text = write_outputs(out, outcomes, aggregate_dice(outcomes))
        logger.info("d=%d: mean final concealment %.6f", d, final_mu(outcomes))
        if config.out is None:
            if config.dice.d_sweep:
                sys.stdout.write(f"# d={d}\n")
            sys.stdout.write(text)
    if not any_ok:
        logger.error("All DICE replicates failed")
        return EXIT_FAILURE
    return EXIT_OK


def dice_heatmap(values: dict[str, Any], networks: Sequence[str], detectors: Sequence[str]) -> int:
    """Mean final concealment for every (detector, network) pair, written as a matrix CSV."""
    if not networks:
        msg = "--heatmap needs at least one --network"
        raise ValueError(msg)
    base = {key: value for key, value in values.items() if key not in {"input", "gen", "n", "m", "k", "avg", "beta"}}
    out = base.pop("out", None)
    matrix: dict[str, dict[str, float]] = {}
    for spec in networks:
        column = {}
        for name in detectors:
            config = build_experiment_config("dice", {**base, **parse_network_spec(spec), "detector": name.strip()})
            network = load_network(config)
            tasks = build_tasks(config, network, detector=load_detector(config.detector, network))
            outcomes = run_replicates(run_dice_replicate, tasks, config.workers, f"DICE {name} on {spec}")
            column[name.strip()] = final_mu(outcomes)
        matrix[spec] = column
    frame = pd.DataFrame(matrix)
    frame.index.name = "detector"
    emit(frame_to_csv(frame.reset_index()), Path(out) / "heatmap.csv" if out is not None else None)
    return EXIT_OK


def cmd_lieutenant(args: argparse.Namespace) -> int:
    """Measure every (k, c) lieutenant cell into a sweep grid CSV."""
    influence = InfluenceSettings.model_validate(
        {
            key: value
            for key, value in (("models", args.models), ("ic_p", args.ic_p), ("mc_samples", args.mc_samples))
            if value is not None
        },
    )
    cells = lieutenant_sweep(args.n, args.k_range, args.c_range, influence.configs(args.seed), args.workers)
    frame = pd.DataFrame([cell.to_record() for cell in cells])
    emit(frame_to_csv(frame), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run every cross-check suite and report; any failing check fails the command."""
    results = run_verification(quick=args.quick, seed=args.seed)
    report = render_report(results)
    sys.stdout.write(report)
    if args.out is not None:
        emit(report, args.out)
    return EXIT_OK if all(result.passed for result in results) else EXIT_FAILURE


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ValidationError as exc:
        logger.error("Invalid configuration:\n%s", exc)  # noqa: TRY400
        return EXIT_INVALID
    except (ConfigError, ValueError, OSError) as exc:
        logger.error("%s", exc)  # noqa: TRY400
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
