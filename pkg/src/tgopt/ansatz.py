"""Hardware-efficient ansatz: layers of parameterized single-qubit gates,
each followed by a chain of CZ entanglers on neighboring qubits.

Gates are indexed 1..D in reading order (layer by layer, qubit 0 first),
D = L*n. The CZ chain is open (no wrap) and applied even pairs first:
(0,1), (2,3), ... then (1,2), (3,4), ...; CZ gates commute, so the order
only fixes the evaluation trace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import ConfigError
from .gates import BASIS, canonical_sign, check_unit, random_unit_axis, random_unit_quaternion
from .paulis import PauliObservable, expectation_exact, expectation_shots
from .statevector import StateVector
from .trace import RunTrace


@dataclass(frozen=True)
class AnsatzSpec:
    num_qubits: int
    num_layers: int

    def __post_init__(self):
        if self.num_qubits < 2:
            raise ConfigError(f"ansatz needs >= 2 qubits, got {self.num_qubits}")
        if self.num_layers < 1:
            raise ConfigError(f"ansatz needs >= 1 layer, got {self.num_layers}")
        if (self.num_qubits * self.num_layers) % 2:
            raise ConfigError(
                f"total gate count {self.num_qubits * self.num_layers} must be even "
                "so gates can be paired"
            )

    @property
    def num_gates(self) -> int:
        return self.num_qubits * self.num_layers

    def site_layer(self, site: int) -> int:
        self._check_site(site)
        return (site - 1) // self.num_qubits + 1

    def site_qubit(self, site: int) -> int:
        self._check_site(site)
        return (site - 1) % self.num_qubits

    def site_index(self, layer: int, qubit: int) -> int:
        return (layer - 1) * self.num_qubits + qubit + 1

    def _check_site(self, site: int):
        if not 1 <= site <= self.num_gates:
            raise IndexError(f"gate index {site} out of range 1..{self.num_gates}")

    def cz_pairs(self) -> tuple[tuple[int, int], ...]:
        n = self.num_qubits
        evens = [(q, q + 1) for q in range(0, n - 1, 2)]
        odds = [(q, q + 1) for q in range(1, n - 1, 2)]
        return tuple(evens + odds)


class ParameterSet:
    """Unit quaternions for all D gates; row i-1 parameterizes gate i."""

    __slots__ = ("quats", "_matrices")

    def __init__(self, quats: np.ndarray):
        quats = np.asarray(quats, dtype=np.float64)
        if quats.ndim != 2 or quats.shape[1] != 4:
            raise ValueError(f"expected shape (D, 4), got {quats.shape}")
        norms = np.linalg.norm(quats, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-10):
            raise ValueError("all quaternions must be unit norm")
        self.quats = quats / norms[:, None]
        self._matrices = None

    @classmethod
    def random(cls, spec: AnsatzSpec, rng: np.random.Generator,
               axis_only: bool = False) -> "ParameterSet":
        """Uniform spherical initialization; axis_only pins q0 = 0."""
        rows = []
        for _ in range(spec.num_gates):
            if axis_only:
                q = np.concatenate([[0.0], random_unit_axis(rng)])
            else:
                q = random_unit_quaternion(rng)
            rows.append(canonical_sign(q))
        return cls(np.array(rows))

    @property
    def num_gates(self) -> int:
        return self.quats.shape[0]

    def matrices(self) -> np.ndarray:
        """(D, 2, 2) gate matrices, computed once per parameter set."""
        if self._matrices is None:
            self._matrices = np.ascontiguousarray(
                np.tensordot(self.quats, BASIS, axes=(1, 0))
            )
        return self._matrices

    def gate_matrix(self, site: int) -> np.ndarray:
        return self.matrices()[site - 1]

    def quaternion(self, site: int) -> np.ndarray:
        return self.quats[site - 1].copy()

    def replaced(self, site: int, quaternion) -> "ParameterSet":
        q = check_unit(quaternion, 4, "quaternion")
        quats = self.quats.copy()
        quats[site - 1] = q
        return ParameterSet(quats)


def _run(spec: AnsatzSpec, params: ParameterSet,
         replacements: dict[int, np.ndarray] | None) -> np.ndarray:
    n = spec.num_qubits
    kernels = backend.kernels
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = 1.0
    mats = params.matrices()
    cz = spec.cz_pairs()
    for layer in range(spec.num_layers):
        base = layer * n
        for q in range(n):
            m = None
            if replacements is not None:
                m = replacements.get(base + q + 1)
            if m is None:
                m = mats[base + q]
            kernels.apply_1q_inplace(amps, m, n - 1 - q)
        for a, b in cz:
            kernels.apply_cz_inplace(amps, n - 1 - a, n - 1 - b)
    return amps


def run_circuit(spec: AnsatzSpec, params: ParameterSet) -> StateVector:
    """Evaluate the full ansatz on |0...0>."""
    if params.num_gates != spec.num_gates:
        raise ValueError(
            f"parameter set has {params.num_gates} gates, spec needs {spec.num_gates}"
        )
    return StateVector(spec.num_qubits, _run(spec, params, None))


def run_with_replacements(spec: AnsatzSpec, params: ParameterSet,
                          sites: tuple[int, ...], ops) -> StateVector:
    """Evaluate with one or two gates replaced by arbitrary 2x2 operators.

    Non-unitary operators are allowed; the returned state is then
    unnormalized and expectation values of it realize the insertion
    traces directly (the initial state is pure).
    """
    if params.num_gates != spec.num_gates:
        raise ValueError(
            f"parameter set has {params.num_gates} gates, spec needs {spec.num_gates}"
        )
    if len(sites) != len(ops) or not 1 <= len(sites) <= 2:
        raise ValueError("expected 1 or 2 sites with matching operators")
    if len(set(sites)) != len(sites):
        raise ValueError(f"replacement sites must be distinct, got {sites}")
    repl = {}
    for site, op in zip(sites, ops):
        spec._check_site(site)
        op = np.ascontiguousarray(op, dtype=np.complex128)
        if op.shape != (2, 2):
            raise ValueError(f"expected a 2x2 operator, got shape {op.shape}")
        repl[site] = op
    return StateVector(spec.num_qubits, _run(spec, params, repl))


class CostEvaluator:
    """Couples the ansatz to a cost function and counts circuit evaluations.

    The cost is either a :class:`PauliObservable` (exact or shot-sampled
    expectation) or any object with ``num_qubits`` and ``value(amplitudes)``
    attributes (used for the infidelity cost, exact mode only).
    """

    def __init__(self, spec: AnsatzSpec, cost, shots: int | None = None,
                 rng: np.random.Generator | None = None):
        if cost.num_qubits != spec.num_qubits:
            raise ConfigError(
                f"cost acts on {cost.num_qubits} qubits, ansatz has {spec.num_qubits}"
            )
        if shots is not None:
            if not isinstance(cost, PauliObservable):
                raise ConfigError(
                    "shot mode is only defined for Pauli observables; "
                    "this cost is exact-mode only"
                )
            if rng is None:
                raise ConfigError("shot mode requires an explicit RNG stream")
        self.spec = spec
        self.cost = cost
        self.shots = shots
        self.rng = rng
        self.num_evaluations = 0

    def evaluate(self, params: ParameterSet,
                 replacements: dict[int, np.ndarray] | None = None) -> float:
        """One circuit evaluation: run, measure, count."""
        if replacements is not None:
            replacements = {
                site: np.ascontiguousarray(op, dtype=np.complex128)
                for site, op in replacements.items()
            }
        amps = _run(self.spec, params, replacements)
        self.num_evaluations += 1
        if isinstance(self.cost, PauliObservable):
            state = StateVector(self.spec.num_qubits, amps)
            if self.shots is None:
                return expectation_exact(self.cost, state)
            return expectation_shots(self.cost, state, self.shots, self.rng)
        return self.cost.value(amps)


@dataclass(frozen=True)
class EvalAudit:
    """Circuit-evaluation accounting of a completed run."""

    total_tomography: int
    total_tracking: int
    tomography_per_update: tuple[int, ...]
    per_gate_average: float
    total: int


def eval_count_audit(run: RunTrace) -> EvalAudit:
    """Tally tomography and cost-tracking evaluations of a run.

    Tomography counts per update are 6 (Fraxis), 10 (FQS), 36 (TGF pair)
    and 100 (TGFQS pair); cost-tracking evaluations are tallied
    separately.
    """
    tomo = sum(r.tomography_evals for r in run.records)
    tracking = run.initial_evals + sum(r.tracking_evals for r in run.records)
    per_update = tuple(sorted({r.tomography_evals for r in run.records}))
    gates_updated = sum(len(r.sites) for r in run.records)
    avg = tomo / gates_updated if gates_updated else 0.0
    return EvalAudit(
        total_tomography=tomo,
        total_tracking=tracking,
        tomography_per_update=per_update,
        per_gate_average=avg,
        total=tomo + tracking,
    )
