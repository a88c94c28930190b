"""Seeded experiment harness.

Runs a batch of independent optimizations for one (cost, ansatz,
optimizer, strategy) configuration, tracks the relative error against the
exact ground energy (or the infidelity for state-preparation tasks), and
emits machine-readable traces plus summary statistics.

Seeding: run i derives independent Philox streams for parameter
initialization, gate pairing, shot sampling, minimizer restarts and
fidelity targets from base_seed + i, so toggling shot mode or the
optimizer never perturbs the other streams.
"""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__ as _version
from . import backend
from .ansatz import AnsatzSpec, CostEvaluator, ParameterSet
from .errors import CapacityError, ConfigError
from .models import (
    FermiHubbardParams,
    TfimParams,
    fermi_hubbard_hamiltonian,
    haar_random_state,
    infidelity_observable,
    load_hamiltonian_file,
    load_reference_energy,
    tfim_hamiltonian,
)
from .paulis import DENSE_MAX_QUBITS, ground_energy
from .single_gate import single_gate_sweep
from .trace import RunTrace
from .two_gate import PAIRING_STRATEGIES, two_gate_sweep

OPTIMIZERS = ("fraxis", "fqs", "tgf", "tgfqs")
TWO_GATE = ("tgf", "tgfqs")
COST_KINDS = ("tfim", "fermi_hubbard", "file", "fidelity")


@dataclass
class ExperimentConfig:
    cost: dict
    num_layers: int
    optimizer: str
    iterations: int
    runs: int
    base_seed: int
    strategy: str | None = None
    shots: int | None = None

    def __post_init__(self):
        if self.optimizer not in OPTIMIZERS:
            raise ConfigError(
                f"unknown optimizer {self.optimizer!r}; expected one of {OPTIMIZERS}"
            )
        kind = self.cost.get("kind")
        if kind not in COST_KINDS:
            raise ConfigError(
                f"unknown cost kind {kind!r}; expected one of {COST_KINDS}"
            )
        if self.optimizer in TWO_GATE:
            if self.strategy not in PAIRING_STRATEGIES:
                raise ConfigError(
                    f"two-gate optimizers need a pairing strategy from "
                    f"{PAIRING_STRATEGIES}, got {self.strategy!r}"
                )
        elif self.strategy is not None:
            raise ConfigError(
                f"{self.optimizer} is a single-gate optimizer; drop --strategy"
            )
        if self.num_layers < 1:
            raise ConfigError(f"num_layers must be >= 1, got {self.num_layers}")
        if self.iterations < 0:
            raise ConfigError(f"iterations must be >= 0, got {self.iterations}")
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")
        if self.shots is not None and self.shots < 1:
            raise ConfigError(f"shots must be >= 1, got {self.shots}")
        if kind == "fidelity" and self.shots is not None:
            raise ConfigError("the fidelity cost is exact-mode only")

    def label(self) -> str:
        if self.strategy:
            return f"{self.optimizer}-{self.strategy}"
        return self.optimizer

    def to_dict(self) -> dict:
        return {
            "cost": dict(self.cost),
            "num_layers": self.num_layers,
            "optimizer": self.optimizer,
            "strategy": self.strategy,
            "iterations": self.iterations,
            "runs": self.runs,
            "base_seed": self.base_seed,
            "shots": self.shots,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {"cost", "num_layers", "optimizer", "strategy", "iterations",
                 "runs", "base_seed", "shots"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        missing = {"cost", "num_layers", "optimizer", "iterations", "runs",
                   "base_seed"} - set(data)
        if missing:
            raise ConfigError(f"missing config keys: {sorted(missing)}")
        return cls(**data)


def _cost_num_qubits(cost: dict) -> int:
    kind = cost["kind"]
    if kind == "tfim":
        return int(cost["n"])
    if kind == "fermi_hubbard":
        return 4
    if kind == "fidelity":
        return int(cost["n"])
    return load_hamiltonian_file(cost["path"]).num_qubits


def _hamiltonian_for(cost: dict):
    kind = cost["kind"]
    if kind == "tfim":
        return tfim_hamiltonian(
            TfimParams(n=int(cost["n"]), J=float(cost.get("J", 0.5)),
                       h=float(cost.get("h", 0.5)))
        )
    if kind == "fermi_hubbard":
        return fermi_hubbard_hamiltonian(
            FermiHubbardParams(t=float(cost.get("t", 0.75)),
                               U=float(cost.get("U", 0.75)))
        )
    if kind == "file":
        return load_hamiltonian_file(cost["path"])
    raise ConfigError(f"no Hamiltonian for cost kind {kind!r}")


def _ground_reference(cost: dict, obs) -> float:
    if cost["kind"] == "file":
        ref = load_reference_energy(cost["path"])
        if ref is not None:
            return ref
    if obs.num_qubits > DENSE_MAX_QUBITS:
        raise CapacityError(
            f"no reference ground energy: dense diagonalization is limited to "
            f"{DENSE_MAX_QUBITS} qubits and no .meta.json was found"
        )
    ref = ground_energy(obs)
    if ref == 0.0:
        raise ConfigError(
            "relative error |E - E_g|/|E_g| is undefined for zero ground energy"
        )
    return ref


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    metric: str                     # "relative_error" or "infidelity"
    ground_energy: float | None
    traces: list[RunTrace] = field(default_factory=list)

    def metric_of(self, cost: float) -> float:
        if self.metric == "infidelity":
            return cost
        return abs(cost - self.ground_energy) / abs(self.ground_energy)

    def summary(self) -> dict:
        final_costs = [t.final_cost for t in self.traces]
        final_metrics = [self.metric_of(c) for c in final_costs]
        num_updates = {len(t.records) for t in self.traces}
        if len(num_updates) != 1:
            raise RuntimeError("runs produced unequal update counts")
        per_mean, per_err, per_evals = [], [], []
        for u in range(num_updates.pop()):
            vals = np.array([self.metric_of(t.records[u].cost_after)
                             for t in self.traces])
            per_mean.append(float(vals.mean()))
            per_err.append(_stderr(vals))
            per_evals.append(
                float(np.mean([t.cumulative_evals()[u] for t in self.traces]))
            )
        finals = np.array(final_metrics)
        return {
            "label": self.config.label(),
            "metric": self.metric,
            "ground_energy": self.ground_energy,
            "runs": len(self.traces),
            "final_metrics": final_metrics,
            "mean_final_relative_error": float(finals.mean()),
            "stderr_final_relative_error": _stderr(finals),
            "per_update": {
                "update_index": list(range(1, len(per_mean) + 1)),
                "mean_relative_error": per_mean,
                "stderr_relative_error": per_err,
                "mean_cumulative_evals": per_evals,
            },
        }


def _stderr(values: np.ndarray) -> float:
    # 68% confidence half-width: standard error of the mean
    if len(values) < 2:
        return 0.0
    return float(values.std(ddof=1) / np.sqrt(len(values)))


def run_single(cfg: ExperimentConfig, run_id: int) -> RunTrace:
    """One seeded optimization run."""
    streams = np.random.SeedSequence(cfg.base_seed + run_id).spawn(5)
    init_rng, pair_rng, shot_rng, mini_rng, target_rng = (
        np.random.Generator(np.random.Philox(s)) for s in streams
    )
    n = _cost_num_qubits(cfg.cost)
    if cfg.cost["kind"] == "fidelity":
        cost = infidelity_observable(haar_random_state(n, target_rng))
    else:
        cost = _hamiltonian_for(cfg.cost)
    spec = AnsatzSpec(n, cfg.num_layers)
    axis_only = cfg.optimizer in ("fraxis", "tgf")
    params = ParameterSet.random(spec, init_rng, axis_only=axis_only)
    evaluator = CostEvaluator(
        spec, cost, shots=cfg.shots,
        rng=shot_rng if cfg.shots is not None else None,
    )
    trace = RunTrace(optimizer=cfg.label(),
                     initial_cost=evaluator.evaluate(params))
    for _ in range(cfg.iterations):
        if cfg.optimizer in TWO_GATE:
            params = two_gate_sweep(cfg.optimizer, cfg.strategy, evaluator,
                                    params, trace, pair_rng, mini_rng)
        else:
            params = single_gate_sweep(cfg.optimizer, evaluator, params, trace)
    return trace


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """All runs of one configuration, plus the ground-energy reference."""
    if cfg.cost["kind"] == "fidelity":
        metric, ref = "infidelity", None
    else:
        obs = _hamiltonian_for(cfg.cost)
        metric, ref = "relative_error", _ground_reference(cfg.cost, obs)
    result = ExperimentResult(config=cfg, metric=metric, ground_energy=ref)
    for run_id in range(cfg.runs):
        result.traces.append(run_single(cfg, run_id))
    return result


def emit_csv(result: ExperimentResult, path) -> None:
    """Per-update records: one row per (run, update)."""
    lines = ["run_id,update_index,cumulative_evals,cost,relative_error,accepted"]
    for run_id, trace in enumerate(result.traces):
        cumulative = trace.cumulative_evals()
        for rec, cum in zip(trace.records, cumulative):
            lines.append(
                f"{run_id},{rec.update_index},{cum},{rec.cost_after!r},"
                f"{result.metric_of(rec.cost_after)!r},"
                f"{'true' if rec.accepted else 'false'}"
            )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def emit_json(result: ExperimentResult, path) -> None:
    """Config, summary statistics and provenance metadata."""
    payload = {
        "config": result.config.to_dict(),
        "summary": result.summary(),
        "metadata": {
            "created_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "package_version": _version,
            "kernel_backend": backend.backend_name(),
            "ci_definition": "68% interval = mean +/- standard error over runs",
        },
    }
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


_BASELINE_OF = {"tgf": "fraxis", "tgfqs": "fqs"}


def compare_report(summaries: list[dict]) -> dict:
    """Improvement table: each two-gate optimizer against its baseline.

    Takes the payloads written by :func:`emit_json` (or dicts of the same
    shape). All entries must share the cost and layer count. Relative
    improvement is (baseline - candidate) / baseline on the mean final
    relative errors; worse-than-baseline candidates come out negative.
    """
    if not summaries:
        raise ConfigError("compare_report needs at least one summary")
    keys = {(json.dumps(s["config"]["cost"], sort_keys=True),
             s["config"]["num_layers"]) for s in summaries}
    if len(keys) != 1:
        raise ConfigError("all summaries must share the cost and layer count")

    baselines: dict[str, float] = {}
    candidates: dict[str, dict[str, float]] = {"tgf": {}, "tgfqs": {}}
    for s in summaries:
        cfg = s["config"]
        value = s["summary"]["mean_final_relative_error"]
        if cfg["optimizer"] in _BASELINE_OF:
            candidates[cfg["optimizer"]][cfg["strategy"]] = value
        else:
            baselines[cfg["optimizer"]] = value

    families = {}
    for optimizer, base_name in _BASELINE_OF.items():
        strategies = candidates[optimizer]
        if not strategies or base_name not in baselines:
            continue
        base = baselines[base_name]
        best_strategy = min(strategies, key=strategies.get)
        best_value = strategies[best_strategy]
        families[optimizer] = {
            "baseline_optimizer": base_name,
            "baseline_mean_final_relative_error": base,
            "per_strategy": dict(sorted(strategies.items())),
            "best_strategy": best_strategy,
            "best_mean_final_relative_error": best_value,
            "best_improvement_pct": 100.0 * (base - best_value) / base,
        }
    cost_key, layers = keys.pop()
    return {
        "cost": json.loads(cost_key),
        "num_layers": layers,
        "baselines": dict(sorted(baselines.items())),
        "families": families,
    }
