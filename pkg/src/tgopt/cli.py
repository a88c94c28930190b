"""Command-line experiment runner.

    tgopt run --cost tfim:n=8,J=0.5,h=0.5 --layers 4 --optimizer tgfqs \
        --strategy random --iterations 50 --runs 20 --seed 7 --out results/
    tgopt run --config experiment.json --out results/
    tgopt compare --inputs results/fqs results/tgfqs-random --out report.json

Cost descriptors: tfim:n=<int>[,J=<f>][,h=<f>] | fermi_hubbard[:t=<f>,U=<f>]
| file:<path> | fidelity:n=<int>. Exit codes: 0 success, 2 configuration
error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import CapacityError, ConfigError, ParseError
from .experiment import (
    ExperimentConfig,
    compare_report,
    emit_csv,
    emit_json,
    run_experiment,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CAPACITY = 3


def parse_cost_spec(text: str) -> dict:
    """Parse a cost descriptor string into the config dict form."""
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    if kind == "fh":
        kind = "fermi_hubbard"
    if kind == "file":
        if not rest:
            raise ConfigError("file cost needs a path: file:<path>")
        return {"kind": "file", "path": rest}
    params = {}
    if rest:
        for part in rest.split(","):
            key, sep, value = part.partition("=")
            if not sep:
                raise ConfigError(f"expected key=value in cost spec, got {part!r}")
            params[key.strip()] = value.strip()
    if kind == "tfim":
        if "n" not in params:
            raise ConfigError("tfim cost needs n: tfim:n=<int>[,J=..][,h=..]")
        return {"kind": "tfim", "n": int(params["n"]),
                "J": float(params.get("J", 0.5)),
                "h": float(params.get("h", 0.5))}
    if kind == "fermi_hubbard":
        return {"kind": "fermi_hubbard", "t": float(params.get("t", 0.75)),
                "U": float(params.get("U", 0.75))}
    if kind == "fidelity":
        if "n" not in params:
            raise ConfigError("fidelity cost needs n: fidelity:n=<int>")
        return {"kind": "fidelity", "n": int(params["n"])}
    raise ConfigError(f"unknown cost kind {kind!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tgopt",
        description="Sequential single- and two-gate circuit optimizers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one experiment configuration")
    run.add_argument("--config", type=Path,
                     help="JSON file with the full configuration")
    run.add_argument("--cost", help="cost descriptor, e.g. tfim:n=8")
    run.add_argument("--layers", type=int, help="ansatz layers L")
    run.add_argument("--optimizer", choices=["fraxis", "fqs", "tgf", "tgfqs"])
    run.add_argument("--strategy",
                     choices=["linear", "random", "opposite", "half_shifted"],
                     help="gate pairing (two-gate optimizers only)")
    run.add_argument("--iterations", type=int, help="full sweeps per run")
    run.add_argument("--runs", type=int, help="independent seeded runs")
    run.add_argument("--seed", type=int, help="base seed; run i uses seed+i")
    run.add_argument("--shots", type=int,
                     help="shots per Hamiltonian term (omit for exact mode)")
    run.add_argument("--out", type=Path, required=True,
                     help="output directory for trace.csv and summary.json")

    cmp_parser = sub.add_parser(
        "compare", help="improvement report over several run outputs")
    cmp_parser.add_argument("--inputs", type=Path, nargs="+", required=True,
                            help="run output directories (or summary.json files)")
    cmp_parser.add_argument("--out", type=Path, required=True,
                            help="report JSON path")
    return parser


def _config_from_args(args) -> ExperimentConfig:
    if args.config is not None:
        overridden = [name for name in
                      ("cost", "layers", "optimizer", "strategy", "iterations",
                       "runs", "seed", "shots")
                      if getattr(args, name) is not None]
        if overridden:
            raise ConfigError(
                f"--config cannot be combined with --{overridden[0]}"
            )
        try:
            data = json.loads(args.config.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {args.config}: {exc}") from exc
        return ExperimentConfig.from_dict(data)
    missing = [name for name in ("cost", "layers", "optimizer", "iterations",
                                 "runs", "seed")
               if getattr(args, name) is None]
    if missing:
        raise ConfigError(f"missing required arguments: --{', --'.join(missing)}")
    return ExperimentConfig(
        cost=parse_cost_spec(args.cost),
        num_layers=args.layers,
        optimizer=args.optimizer,
        strategy=args.strategy,
        iterations=args.iterations,
        runs=args.runs,
        base_seed=args.seed,
        shots=args.shots,
    )


def _cmd_run(args) -> int:
    cfg = _config_from_args(args)
    result = run_experiment(cfg)
    args.out.mkdir(parents=True, exist_ok=True)
    emit_csv(result, args.out / "trace.csv")
    emit_json(result, args.out / "summary.json")
    summary = result.summary()
    print(f"{cfg.label()}: {cfg.runs} runs, mean final "
          f"{summary['metric']} = {summary['mean_final_relative_error']:.3e}")
    print(f"wrote {args.out / 'trace.csv'} and {args.out / 'summary.json'}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    summaries = []
    for entry in args.inputs:
        path = entry / "summary.json" if entry.is_dir() else entry
        try:
            summaries.append(json.loads(path.read_text(encoding="utf-8")))
        except OSError as exc:
            raise ConfigError(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    report = compare_report(summaries)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
    for name, family in report["families"].items():
        print(f"{name}: baseline {family['baseline_mean_final_relative_error']:.3e}"
              f" ({family['baseline_optimizer']}), best {family['best_strategy']}"
              f" -> {family['best_mean_final_relative_error']:.3e}"
              f" ({family['best_improvement_pct']:.1f}% improvement)")
    print(f"wrote {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_compare(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ConfigError, ParseError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
