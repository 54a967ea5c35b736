"""Shared helpers: seeded random circuit generation and reference circuits."""
import random

from qcdesk.ir import Angle, Circuit, Gate, GateKind

SINGLE_QUBIT_KINDS = [
    GateKind.X,
    GateKind.Y,
    GateKind.Z,
    GateKind.H,
    GateKind.S,
    GateKind.SDG,
    GateKind.T,
    GateKind.TDG,
]
TWO_QUBIT_KINDS = [GateKind.CX, GateKind.CZ, GateKind.SWAP]
PARAMETRIC_KINDS = [GateKind.RX, GateKind.RZ]


def random_gate(rng: random.Random, n: int) -> Gate:
    r = rng.random()
    if r < 0.25 and n >= 2:
        return Gate(rng.choice(TWO_QUBIT_KINDS), tuple(rng.sample(range(n), 2)))
    if r < 0.45:
        angle = Angle(rng.randrange(-8, 8), rng.choice([1, 2, 3, 4, 8]))
        return Gate(rng.choice(PARAMETRIC_KINDS), (rng.randrange(n),), angle)
    return Gate(rng.choice(SINGLE_QUBIT_KINDS), (rng.randrange(n),))


def random_circuit(rng: random.Random, n: int, depth: int) -> Circuit:
    return Circuit(n, tuple(random_gate(rng, n) for _ in range(depth)))


def bell_circuit() -> Circuit:
    # H and control on qubit 1 so the more significant line drives the CNOT
    return Circuit(2, (Gate(GateKind.H, (1,)), Gate(GateKind.CX, (1, 0))))


def ghz_circuit(n: int) -> Circuit:
    gates = [Gate(GateKind.H, (n - 1,))]
    for q in range(n - 1, 0, -1):
        gates.append(Gate(GateKind.CX, (q, q - 1)))
    return Circuit(n, tuple(gates))
