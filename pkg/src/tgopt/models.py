"""Cost-function factories: spin Hamiltonians, molecular Hamiltonian files,
and the state-preparation infidelity cost."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError
from .paulis import PauliObservable, multiply_words, parse_hamiltonian_text
from .statevector import StateVector

_COEFF_CUTOFF = 1e-12


@dataclass(frozen=True)
class TfimParams:
    """Transverse-field Ising chain: n sites, ZZ coupling J, X field h."""

    n: int
    J: float = 0.5
    h: float = 0.5

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"TFIM needs at least 2 sites, got {self.n}")
        if not (np.isfinite(self.J) and np.isfinite(self.h)):
            raise ValueError("J and h must be finite")


def tfim_hamiltonian(p: TfimParams) -> PauliObservable:
    """-J sum Z_i Z_{i+1} - h sum X_j on an open chain."""
    terms = []
    for i in range(p.n - 1):
        word = ["I"] * p.n
        word[i] = word[i + 1] = "Z"
        terms.append((-p.J, "".join(word)))
    for j in range(p.n):
        word = ["I"] * p.n
        word[j] = "X"
        terms.append((-p.h, "".join(word)))
    return PauliObservable(p.n, terms)


@dataclass(frozen=True)
class FermiHubbardParams:
    """Two-site Hubbard model: hopping t and on-site Coulomb U (4 qubits)."""

    t: float = 0.75
    U: float = 0.75

    def __post_init__(self):
        if not (np.isfinite(self.t) and np.isfinite(self.U)):
            raise ValueError("t and U must be finite")


# A Pauli-sum with complex coefficients, as a list of (coeff, word) pairs.
def _ladder_op(j: int, n: int, dagger: bool) -> list[tuple[complex, str]]:
    """Jordan-Wigner image of a_j / a_j^dagger: (X_j -+ iY_j)/2 with a Z
    parity chain on all preceding qubits."""
    prefix = "Z" * j
    suffix = "I" * (n - j - 1)
    sign = 1j if dagger else -1j
    return [(0.5, prefix + "X" + suffix), (0.5 * sign, prefix + "Y" + suffix)]


def _multiply_sums(a: list[tuple[complex, str]],
                   b: list[tuple[complex, str]]) -> list[tuple[complex, str]]:
    out: dict[str, complex] = {}
    for ca, wa in a:
        for cb, wb in b:
            phase, word = multiply_words(wa, wb)
            out[word] = out.get(word, 0.0) + ca * cb * phase
    return [(c, w) for w, c in out.items()]


def _number_op(j: int, n: int) -> list[tuple[complex, str]]:
    return _multiply_sums(_ladder_op(j, n, True), _ladder_op(j, n, False))


def fermi_hubbard_hamiltonian(p: FermiHubbardParams) -> PauliObservable:
    """1x2-lattice Fermi-Hubbard Hamiltonian after Jordan-Wigner mapping.

    Spin orbitals map to qubits site-major, spin-minor:
    (site0 up, site0 down, site1 up, site1 down) -> qubits 0..3.
    """
    n = 4

    def orbital(site: int, spin: int) -> int:
        return 2 * site + spin

    acc: dict[str, complex] = {}

    def add(terms: list[tuple[complex, str]], scale: float):
        for c, w in terms:
            acc[w] = acc.get(w, 0.0) + scale * c

    # hopping between the two sites, both directions, per spin
    for spin in (0, 1):
        a, b = orbital(0, spin), orbital(1, spin)
        add(_multiply_sums(_ladder_op(a, n, True), _ladder_op(b, n, False)), -p.t)
        add(_multiply_sums(_ladder_op(b, n, True), _ladder_op(a, n, False)), -p.t)
    # on-site Coulomb repulsion
    for site in (0, 1):
        up, down = orbital(site, 0), orbital(site, 1)
        add(_multiply_sums(_number_op(up, n), _number_op(down, n)), p.U)

    terms = []
    for word, coeff in acc.items():
        if abs(coeff) < _COEFF_CUTOFF:
            continue
        if abs(coeff.imag) > _COEFF_CUTOFF:
            raise ArithmeticError(
                f"non-Hermitian coefficient {coeff} for {word}; mapping bug"
            )
        terms.append((coeff.real, word))
    return PauliObservable(n, terms)


def load_hamiltonian_file(path) -> PauliObservable:
    """Parse an observable from the documented text format."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file ({exc})") from exc
    return parse_hamiltonian_text(text, source=str(path))


def load_reference_energy(path) -> float | None:
    """Reference ground energy from the sidecar <stem>.meta.json, if present."""
    path = Path(path)
    meta_path = path.with_name(path.stem + ".meta.json")
    if not meta_path.exists():
        return None
    with open(meta_path, encoding="utf-8") as fh:
        meta = json.load(fh)
    value = meta.get("reference_ground_energy")
    return None if value is None else float(value)


class InfidelityCost:
    """Cost 1 - |<target|psi>|^2, i.e. the expectation of I - |target><target|.

    For unnormalized states (tomography insertions) the general form
    <psi|psi> - |<target|psi>|^2 is used, which keeps the polynomial
    reconstruction identities exact. Exact mode only; shot-based fidelity
    estimation is not modeled.
    """

    __slots__ = ("num_qubits", "target")

    def __init__(self, target: StateVector):
        norm = target.norm()
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"target state must be normalized, got |psi| = {norm}")
        self.num_qubits = target.num_qubits
        self.target = target.amplitudes / norm

    def value(self, amplitudes: np.ndarray) -> float:
        overlap = np.vdot(self.target, amplitudes)
        return float(np.vdot(amplitudes, amplitudes).real - abs(overlap) ** 2)


def haar_random_state(num_qubits: int, rng: np.random.Generator) -> StateVector:
    """Haar-random pure state: normalized complex standard Gaussians."""
    size = 2**num_qubits
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return StateVector(num_qubits, amps / np.linalg.norm(amps))


def infidelity_observable(target: StateVector) -> InfidelityCost:
    """Wrap a target state as a cost usable by every optimizer."""
    return InfidelityCost(target)
