"""Pauli-string observables and expectation values.

Observables are weighted sums of Pauli words over {I, X, Y, Z}, Hermitian
by construction (real coefficients). Expectations are computed either
exactly from the statevector or from seeded Bernoulli sampling of each
term ("shot mode").

Text format (one observable per file)::

    # optional comments
    qubits <n>
    <coefficient> <pauli-word>

where each pauli-word is a length-n string over IXYZ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import CapacityError, ParseError
from .statevector import StateVector

_IMAG_TOL = 1e-10
DENSE_MAX_QUBITS = 12
PAULI_CHARS = "IXYZ"


class PauliString:
    """One weighted Pauli word; bit masks are precomputed for the kernels."""

    __slots__ = ("ops", "coefficient", "xflip", "yzmask", "num_y")

    def __init__(self, ops: str, coefficient: float):
        if any(c not in PAULI_CHARS for c in ops):
            raise ValueError(f"pauli word may only contain IXYZ, got {ops!r}")
        if not np.isfinite(coefficient):
            raise ValueError(f"coefficient must be finite, got {coefficient}")
        self.ops = ops
        self.coefficient = float(coefficient)
        n = len(ops)
        xflip = 0
        yzmask = 0
        num_y = 0
        for j, c in enumerate(ops):
            bit = 1 << (n - 1 - j)  # qubit 0 is the most significant bit
            if c in "XY":
                xflip |= bit
            if c in "YZ":
                yzmask |= bit
            if c == "Y":
                num_y += 1
        self.xflip = xflip
        self.yzmask = yzmask
        self.num_y = num_y

    def __repr__(self):
        return f"PauliString({self.ops!r}, {self.coefficient})"


class PauliObservable:
    """Hermitian sum of Pauli strings; duplicate words merge on construction."""

    __slots__ = ("num_qubits", "terms")

    def __init__(self, num_qubits: int, terms):
        merged: dict[str, float] = {}
        for term in terms:
            if isinstance(term, PauliString):
                ops, coeff = term.ops, term.coefficient
            else:
                coeff, ops = term
            if len(ops) != num_qubits:
                raise ValueError(
                    f"pauli word {ops!r} has length {len(ops)}, expected {num_qubits}"
                )
            merged[ops] = merged.get(ops, 0.0) + float(coeff)
        self.num_qubits = num_qubits
        self.terms = [PauliString(ops, c) for ops, c in merged.items()]

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"PauliObservable(num_qubits={self.num_qubits}, terms={len(self.terms)})"


@dataclass(frozen=True)
class ShotConfig:
    """Per-term shot count (None = exact expectations) and sampling seed."""

    shots_per_term: int | None
    rng_seed: int = 0

    def __post_init__(self):
        s = self.shots_per_term
        if s is not None and not 1 <= s < 2**31:
            raise ValueError(f"shots_per_term must be in [1, 2**31), got {s}")

    @property
    def exact(self) -> bool:
        return self.shots_per_term is None

    def make_rng(self) -> np.random.Generator:
        # Philox is counter-based, so streams are reproducible across platforms
        return np.random.Generator(np.random.Philox(key=self.rng_seed))


def _check_dims(obs: PauliObservable, state: StateVector):
    if obs.num_qubits != state.num_qubits:
        raise ValueError(
            f"observable acts on {obs.num_qubits} qubits, state has {state.num_qubits}"
        )


def expectation_exact(obs: PauliObservable, state: StateVector) -> float:
    """<psi|M|psi>, exact. Valid for unnormalized psi as well."""
    _check_dims(obs, state)
    expval = backend.kernels.pauli_expval
    amps = state.amplitudes
    total = 0.0 + 0.0j
    for t in obs.terms:
        total += t.coefficient * expval(amps, t.xflip, t.yzmask, t.num_y)
    if abs(total.imag) > _IMAG_TOL:
        raise ArithmeticError(
            f"expectation has imaginary residue {total.imag:.3e} (> {_IMAG_TOL})"
        )
    return total.real


def expectation_shots(obs: PauliObservable, state: StateVector,
                      shots_per_term: int, rng: np.random.Generator) -> float:
    """Finite-shot estimate: each term sampled as N Bernoulli +/-1 outcomes.

    The outcome probability p = (1 + <P>)/2 is computed exactly from the
    state; the estimator is the coefficient times the sample mean.
    Deterministic for a given generator state.
    """
    _check_dims(obs, state)
    expval = backend.kernels.pauli_expval
    amps = state.amplitudes
    total = 0.0
    for t in obs.terms:
        ev = expval(amps, t.xflip, t.yzmask, t.num_y).real
        p = min(max((1.0 + ev) / 2.0, 0.0), 1.0)
        ones = rng.binomial(shots_per_term, p)
        total += t.coefficient * (2.0 * ones / shots_per_term - 1.0)
    return total


def to_dense(obs: PauliObservable) -> np.ndarray:
    """Dense 2^n x 2^n Hermitian matrix of the observable (n <= 12)."""
    n = obs.num_qubits
    if n > DENSE_MAX_QUBITS:
        raise CapacityError(
            f"dense matrix limited to {DENSE_MAX_QUBITS} qubits, got {n}"
        )
    size = 2**n
    cols = np.arange(size, dtype=np.uint64)
    mat = np.zeros((size, size), dtype=np.complex128)
    for t in obs.terms:
        # P|j> = phase(j) |j ^ xflip> with phase(j) = i^num_y * (-1)^popcount(j & yzmask)
        rows = np.bitwise_xor(cols, np.uint64(t.xflip)).astype(np.intp)
        signs = 1.0 - 2.0 * (
            np.bitwise_count(np.bitwise_and(cols, np.uint64(t.yzmask))) & np.uint8(1)
        )
        phase = t.coefficient * (1j) ** (t.num_y & 3)
        mat[rows, cols.astype(np.intp)] += phase * signs
    return mat


def ground_energy(obs: PauliObservable) -> float:
    """Minimum eigenvalue via dense Hermitian diagonalization (n <= 12)."""
    return float(np.linalg.eigvalsh(to_dense(obs))[0])


# single-qubit Pauli products: (left, right) -> (phase, result)
_PAULI_MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


def multiply_words(a: str, b: str) -> tuple[complex, str]:
    """Product of two Pauli words: overall phase and resulting word."""
    phase = 1 + 0j
    out = []
    for ca, cb in zip(a, b, strict=True):
        ph, c = _PAULI_MUL[(ca, cb)]
        phase *= ph
        out.append(c)
    return phase, "".join(out)


def parse_hamiltonian_text(text: str, source: str = "<string>") -> PauliObservable:
    """Parse the documented text format into an observable."""
    num_qubits = None
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if num_qubits is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "qubits":
                raise ParseError(
                    f"{source}:{lineno}: expected 'qubits <n>' header, got {line!r}"
                )
            try:
                num_qubits = int(parts[1])
            except ValueError:
                raise ParseError(
                    f"{source}:{lineno}: invalid qubit count {parts[1]!r}"
                ) from None
            if num_qubits < 1:
                raise ParseError(f"{source}:{lineno}: qubit count must be >= 1")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(
                f"{source}:{lineno}: expected '<coefficient> <pauli-word>', got {line!r}"
            )
        try:
            coeff = float(parts[0])
        except ValueError:
            raise ParseError(
                f"{source}:{lineno}: invalid coefficient {parts[0]!r}"
            ) from None
        word = parts[1].upper()
        if len(word) != num_qubits:
            raise ParseError(
                f"{source}:{lineno}: pauli word {word!r} has length {len(word)}, "
                f"expected {num_qubits}"
            )
        if any(c not in PAULI_CHARS for c in word):
            raise ParseError(
                f"{source}:{lineno}: pauli word may only contain IXYZ, got {word!r}"
            )
        terms.append((coeff, word))
    if num_qubits is None:
        raise ParseError(f"{source}: missing 'qubits <n>' header")
    return PauliObservable(num_qubits, terms)


def format_hamiltonian(obs: PauliObservable) -> str:
    """Render an observable in the documented text format."""
    lines = [f"qubits {obs.num_qubits}"]
    for t in sorted(obs.terms, key=lambda t: t.ops):
        lines.append(f"{t.coefficient!r} {t.ops}")
    return "\n".join(lines) + "\n"
