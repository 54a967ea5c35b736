"""Ground-truth array backend: state vectors and strided gate kernels."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .ir import Circuit, Gate, gate_matrix, index_bits

MAX_STATE_QUBITS = 24
MAX_UNITARY_QUBITS = 10


@dataclass
class StateVector:
    n: int
    amps: np.ndarray  # 2^n complex amplitudes, index = basis value with q_{n-1} msb

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


def initial_state(n: int) -> StateVector:
    if n < 1:
        raise ValueError("need at least one qubit")
    if n > MAX_STATE_QUBITS:
        raise CapacityError(f"{n} qubits exceeds state-vector ceiling {MAX_STATE_QUBITS}")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1.0
    return StateVector(n, amps)


def _apply_to_tensor(t: np.ndarray, g: Gate, n: int) -> np.ndarray:
    """Apply g to an array whose first n axes are qubit axes (q_{n-1} first).

    Works for state tensors of shape (2,)*n and for matrices reshaped to
    (2,)*n + (cols,), so the same kernel drives simulation and unitary builds.
    """
    k = len(g.qubits)
    axes = [n - 1 - q for q in g.qubits]
    m = gate_matrix(g).reshape((2,) * (2 * k))
    t = np.tensordot(m, t, axes=(tuple(range(k, 2 * k)), tuple(axes)))
    return np.moveaxis(t, range(k), axes)


def apply_gate(s: StateVector, g: Gate) -> StateVector:
    if any(q >= s.n for q in g.qubits):
        raise ValueError("gate qubit outside register")
    t = _apply_to_tensor(s.amps.reshape((2,) * s.n), g, s.n)
    return StateVector(s.n, np.ascontiguousarray(t).reshape(-1))


def simulate(c: Circuit) -> StateVector:
    s = initial_state(c.num_qubits)
    for g in c.gates:
        s = apply_gate(s, g)
    return s


def measure_probabilities(s: StateVector) -> np.ndarray:
    return np.abs(s.amps) ** 2


def sample(s: StateVector, shots: int, seed: int) -> dict[str, int]:
    """Seeded i.i.d. measurement outcomes; returns only basis states that occur."""
    if shots < 1:
        raise ValueError("shots must be positive")
    probs = measure_probabilities(s)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    return {
        index_bits(i, s.n): int(c) for i, c in enumerate(counts) if c > 0
    }


def circuit_unitary(c: Circuit) -> np.ndarray:
    """2^n x 2^n unitary of the whole circuit, later gates on the left."""
    n = c.num_qubits
    if n > MAX_UNITARY_QUBITS:
        raise CapacityError(f"{n} qubits exceeds unitary ceiling {MAX_UNITARY_QUBITS}")
    dim = 2**n
    t = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in c.gates:
        t = _apply_to_tensor(t, g, n)
    return np.ascontiguousarray(t).reshape(dim, dim)


def embedded_gate_unitary(g: Gate, n: int) -> np.ndarray:
    """Gate embedded in the n-qubit identity (n <= 10)."""
    return circuit_unitary(Circuit(n, (g,)))


def format_amplitude_dump(s: StateVector) -> str:
    """One '<bits> <re> <im>' line per basis state, 17 significant digits."""
    lines = []
    for i, a in enumerate(s.amps):
        lines.append(f"{index_bits(i, s.n)} {a.real:.17g} {a.imag:.17g}")
    return "\n".join(lines) + "\n"
