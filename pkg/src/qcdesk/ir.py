"""Circuit intermediate representation: gates, angles, the QCF text format.

Conventions fixed here and relied on everywhere else:
  - qubit index i has significance i; q_{n-1} is the most significant bit
  - basis-state strings are written most significant qubit first
  - for controlled gates the control is listed first and occupies the more
    significant position of the local two-qubit space
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import ParseError

_SQRT2_INV = 1.0 / math.sqrt(2.0)


class GateKind(Enum):
    X = "x"
    Y = "y"
    Z = "z"
    H = "h"
    S = "s"
    SDG = "sdg"
    T = "t"
    TDG = "tdg"
    RX = "rx"
    RZ = "rz"
    CX = "cx"
    CZ = "cz"
    SWAP = "swap"


PARAMETRIC_KINDS = frozenset({GateKind.RX, GateKind.RZ})
TWO_QUBIT_KINDS = frozenset({GateKind.CX, GateKind.CZ, GateKind.SWAP})


def gate_arity(kind: GateKind) -> int:
    return 2 if kind in TWO_QUBIT_KINDS else 1


@dataclass(frozen=True)
class Angle:
    """Exact angle pi * numerator / denominator, reduced modulo 2*pi.

    Rational-of-pi angles keep ZX phase arithmetic exact and make unique-table
    keys stable; every gate in the set only ever needs such angles.
    """

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator == 0:
            raise ValueError("angle denominator must be nonzero")
        f = Fraction(self.numerator, self.denominator) % 2
        object.__setattr__(self, "numerator", f.numerator)
        object.__setattr__(self, "denominator", f.denominator)

    @property
    def radians(self) -> float:
        return math.pi * self.numerator / self.denominator

    def __neg__(self) -> "Angle":
        return Angle(-self.numerator, self.denominator)

    def __add__(self, other: "Angle") -> "Angle":
        f = Fraction(self.numerator, self.denominator) + Fraction(
            other.numerator, other.denominator
        )
        return Angle(f.numerator, f.denominator)

    def is_zero(self) -> bool:
        return self.numerator == 0

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]
    angle: Angle | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        arity = gate_arity(self.kind)
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind.value} expects {arity} qubit(s)")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError("gate qubits must be distinct")
        if any(q < 0 for q in self.qubits):
            raise ValueError("negative qubit index")
        if (self.angle is not None) != (self.kind in PARAMETRIC_KINDS):
            raise ValueError(f"{self.kind.value}: angle present iff gate is rx/rz")


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        for g in self.gates:
            if any(q >= self.num_qubits for q in g.qubits):
                raise ValueError(
                    f"gate {g.kind.value} references qubit outside width {self.num_qubits}"
                )


def basis_index(bits: str) -> int:
    """Amplitude index of a basis-state string (leftmost char = q_{n-1})."""
    return int(bits, 2)


def index_bits(i: int, n: int) -> str:
    return format(i, f"0{n}b")


def parse_circuit(text: str) -> Circuit:
    """Parse the QCF line format into a Circuit.

    Grammar: comment lines start with '#', blanks are skipped, the first
    significant line must be 'qubits <n>', gate lines are
    '<mnemonic> [<angle>] <q0> [<q1>]' with angles written p/q or p (units of pi).
    """
    mnemonics = {k.value: k for k in GateKind}
    num_qubits = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if num_qubits is None:
            if tokens[0] != "qubits" or len(tokens) != 2:
                raise ParseError(lineno, "expected 'qubits <n>' header")
            try:
                num_qubits = int(tokens[1])
            except ValueError:
                raise ParseError(lineno, f"bad qubit count {tokens[1]!r}") from None
            if num_qubits < 1:
                raise ParseError(lineno, "qubit count must be >= 1")
            continue
        kind = mnemonics.get(tokens[0])
        if kind is None:
            raise ParseError(lineno, f"unknown gate {tokens[0]!r}")
        rest = tokens[1:]
        angle = None
        if kind in PARAMETRIC_KINDS:
            if not rest:
                raise ParseError(lineno, f"{kind.value} needs an angle")
            angle = _parse_angle(rest[0], lineno)
            rest = rest[1:]
        if len(rest) != gate_arity(kind):
            raise ParseError(
                lineno, f"{kind.value} expects {gate_arity(kind)} qubit index(es)"
            )
        try:
            qubits = tuple(int(t) for t in rest)
        except ValueError:
            raise ParseError(lineno, "bad qubit index") from None
        if any(q < 0 or q >= num_qubits for q in qubits):
            raise ParseError(lineno, f"qubit index out of range for width {num_qubits}")
        try:
            gates.append(Gate(kind, qubits, angle))
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
    if num_qubits is None:
        raise ParseError(1, "missing 'qubits' header")
    return Circuit(num_qubits, tuple(gates))


def _parse_angle(token: str, lineno: int) -> Angle:
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            return Angle(int(num), int(den))
        return Angle(int(token))
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, f"malformed angle {token!r}") from None


def render_circuit(c: Circuit) -> str:
    """Canonical QCF text; parse_circuit(render_circuit(c)) round-trips."""
    lines = [f"qubits {c.num_qubits}"]
    for g in c.gates:
        parts = [g.kind.value]
        if g.angle is not None:
            parts.append(str(g.angle))
        parts.extend(str(q) for q in g.qubits)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def gate_matrix(g: Gate) -> np.ndarray:
    """Unitary of the gate over its local 2^k space, first listed qubit most significant."""
    k = g.kind
    if k == GateKind.X:
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if k == GateKind.Y:
        return np.array([[0, -1j], [1j, 0]], dtype=complex)
    if k == GateKind.Z:
        return np.array([[1, 0], [0, -1]], dtype=complex)
    if k == GateKind.H:
        return np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV
    if k == GateKind.S:
        return np.array([[1, 0], [0, 1j]], dtype=complex)
    if k == GateKind.SDG:
        return np.array([[1, 0], [0, -1j]], dtype=complex)
    if k == GateKind.T:
        return np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex)
    if k == GateKind.TDG:
        return np.array([[1, 0], [0, np.exp(-1j * math.pi / 4)]], dtype=complex)
    if k == GateKind.RX:
        # H . diag(1, e^{i t}) . H -- 2*pi-periodic, so reduced angles stay exact
        p = np.exp(1j * g.angle.radians)
        return 0.5 * np.array([[1 + p, 1 - p], [1 - p, 1 + p]], dtype=complex)
    if k == GateKind.RZ:
        return np.array([[1, 0], [0, np.exp(1j * g.angle.radians)]], dtype=complex)
    if k == GateKind.CX:
        return np.array(
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
        )
    if k == GateKind.CZ:
        return np.diag([1, 1, 1, -1]).astype(complex)
    if k == GateKind.SWAP:
        return np.array(
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
        )
    raise AssertionError(f"unhandled gate kind {k}")


_ADJOINT_KIND = {
    GateKind.S: GateKind.SDG,
    GateKind.SDG: GateKind.S,
    GateKind.T: GateKind.TDG,
    GateKind.TDG: GateKind.T,
}


def adjoint_gate(g: Gate) -> Gate:
    if g.kind in _ADJOINT_KIND:
        return Gate(_ADJOINT_KIND[g.kind], g.qubits)
    if g.kind in PARAMETRIC_KINDS:
        return Gate(g.kind, g.qubits, -g.angle)
    return g


def adjoint_circuit(c: Circuit) -> Circuit:
    """Inverse circuit: gates reversed, each replaced by its inverse."""
    return Circuit(c.num_qubits, tuple(adjoint_gate(g) for g in reversed(c.gates)))
