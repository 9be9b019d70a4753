"""Command-line front end: ``samples``, ``synth``, ``sim`` and ``report``.

Errors go to stderr as one line, ``ollamab: error: <kind>: <message>``,
with exit status 2 for bad input and 1 for failures while running.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import harness, synthetic
from .bounds import ExplorationParams, per_step_failure_budget, required_samples, sample_complexity_terms

PROG = "ollamab"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse prints a multi-line usage block; keep errors to one line
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _add_common(p: argparse.ArgumentParser, with_config: bool = True) -> None:
    if with_config:
        p.add_argument("--config", type=Path, help="YAML config file (bundled default if omitted)")
        p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                       help="override a config value by dotted path; repeatable")
        p.add_argument("--seed", type=int, help="master seed (overrides the config)")
    p.add_argument("--out", type=Path, help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Bandit-based outer-loop link adaptation toolkit.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("samples", help="per-arm and worst-case exploration sample counts")
    p.add_argument("--beta", type=float, default=0.9, help="target success probability")
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--big-l", type=int, default=3, help="offsets range over -L..L")

    p = sub.add_parser("synth", help="repeated exploration trials on a synthetic bandit")
    _add_common(p)

    p = sub.add_parser("sim", help="multi-UE link simulation")
    _add_common(p)

    p = sub.add_parser("report", help="render the comparison table and CDF plots of a sim run")
    p.add_argument("directory", type=Path, help="output directory of a sim run")
    p.add_argument("--no-svg", action="store_true", help="skip the SVG plots")
    return parser


def _load(path: Optional[Path], default: Path, args: argparse.Namespace) -> dict:
    data = harness.read_yaml(path if path is not None else default)
    data = harness.apply_overrides(data, args.overrides)
    if args.seed is not None:
        data["master_seed"] = args.seed
    if args.out is not None:
        data["output_dir"] = str(args.out)
    return data


def cmd_samples(args: argparse.Namespace) -> int:
    try:
        params = ExplorationParams(args.beta, args.epsilon, args.delta, args.big_l)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    numerator, kl_low, kl_high = sample_complexity_terms(params)
    n = required_samples(params)
    k = params.max_distinct_arms
    rows = [
        ("beta", f"{params.beta:g}"),
        ("epsilon", f"{params.epsilon:g}"),
        ("delta", f"{params.delta:g}"),
        ("L", str(params.big_l)),
        ("arms", str(params.num_arms)),
        ("delta_1", f"{per_step_failure_budget(params):.6g}"),
        ("ln(1/delta_1)", f"{numerator:.6g}"),
        ("KL(beta, beta-eps)", f"{kl_low:.6g}"),
        ("KL(beta, beta+eps)", f"{kl_high:.6g}"),
        ("samples_per_arm", str(n)),
        ("max_distinct_arms", str(k)),
        ("worst_case_total", str(n * k)),
    ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name.ljust(width)}  {value}")
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    cfg = synthetic.synth_config_from_dict(_load(args.config, synthetic.DEFAULT_SYNTH_CONFIG, args))
    report = synthetic.run_synth(cfg)
    synthetic.write_synth_outputs(report, cfg.output_dir)
    print(f"policy                      {report.policy}")
    print(f"trials                      {report.trials}")
    print(f"epsilon_optimal_frequency   {report.epsilon_optimal_frequency:.4f}")
    print(f"mean_exploration_samples    {report.mean_exploration_samples:.1f}")
    print(f"outputs                     {cfg.output_dir}")
    return 0


def cmd_sim(args: argparse.Namespace) -> int:
    data = _load(args.config, harness.DEFAULT_CONFIG_PATH, args)
    base = args.config.parent if args.config is not None else harness.DATA_DIR
    cfg = harness.config_from_dict(data, base_dir=base)
    report = harness.run_experiment(cfg, progress=args.verbose)
    _, text = harness.summarize_comparison(report)
    sys.stdout.write(text)
    print(f"outputs written to {cfg.output_dir}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    try:
        report = harness.load_report(args.directory)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from exc
    summaries = harness.persist_report(report, args.directory)
    _, text = harness.summarize_comparison(report)
    sys.stdout.write(text)
    if not args.no_svg:
        for path in harness.render_cdf_svgs(report, args.directory):
            print(f"wrote {path}")
    return 0 if summaries else 1


COMMANDS = {"samples": cmd_samples, "synth": cmd_synth, "sim": cmd_sim, "report": cmd_report}


def _fail(kind: str, message: str, status: int) -> int:
    text = " ".join(str(message).split())
    print(f"{PROG}: error: {kind}: {text}", file=sys.stderr)
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail("usage", str(exc), 2)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail("usage", str(exc), 2)
    except harness.ConfigError as exc:
        return _fail("config", str(exc), 2)
    except (OSError, ValueError) as exc:
        return _fail("runtime", str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
