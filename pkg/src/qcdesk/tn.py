"""Tensor-network backend: circuit translation, pairwise contraction, planning.

Every index has bond dimension 2. Gate tensors hold the gate unitary reshaped
with output indices first, one (out, in) leg pair per touched qubit, first
listed qubit most significant.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod

import numpy as np

from .errors import CapacityError, DimensionMismatchError, PlanError
from . import dense
from .ir import Circuit, gate_matrix

MAX_FULL_STATE_QUBITS = 20
MAX_EXHAUSTIVE_TENSORS = 8


@dataclass(frozen=True)
class Index:
    label: str
    dim: int = 2


@dataclass
class Tensor:
    indices: list[Index]
    data: np.ndarray  # shape = tuple of index dims, row-major in index order

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=complex)
        dims = tuple(ix.dim for ix in self.indices)
        if self.data.shape != dims:
            self.data = self.data.reshape(dims)

    @property
    def rank(self) -> int:
        return len(self.indices)

    @property
    def size(self) -> int:
        return int(self.data.size)


@dataclass
class TensorNetwork:
    tensors: list[Tensor]
    open_indices: list[Index] = field(default_factory=list)


@dataclass
class ContractionPlan:
    steps: list[tuple[int, int]]  # tensor ids; new tensors get the next free id


def contract_pair(a: Tensor, b: Tensor) -> Tensor:
    """Sum over all shared index labels; outer product when none are shared."""
    a_labels = {ix.label: pos for pos, ix in enumerate(a.indices)}
    shared = [(a_labels[ix.label], pos) for pos, ix in enumerate(b.indices) if ix.label in a_labels]
    for apos, bpos in shared:
        if a.indices[apos].dim != b.indices[bpos].dim:
            raise DimensionMismatchError(
                f"index {a.indices[apos].label!r} has dims "
                f"{a.indices[apos].dim} and {b.indices[bpos].dim}"
            )
    a_axes = tuple(apos for apos, _ in shared)
    b_axes = tuple(bpos for _, bpos in shared)
    data = np.tensordot(a.data, b.data, axes=(a_axes, b_axes))
    out = [ix for pos, ix in enumerate(a.indices) if pos not in a_axes]
    out += [ix for pos, ix in enumerate(b.indices) if pos not in b_axes]
    return Tensor(out, data)


def circuit_to_network(c: Circuit) -> TensorNetwork:
    """One |0> tensor per qubit plus one tensor per gate, wired along qubit lines."""
    labels = itertools.count()

    def fresh() -> Index:
        return Index(f"e{next(labels)}")

    tensors: list[Tensor] = []
    wire: dict[int, Index] = {}
    for q in range(c.num_qubits):
        ix = fresh()
        tensors.append(Tensor([ix], np.array([1.0, 0.0], dtype=complex)))
        wire[q] = ix
    for g in c.gates:
        ins = [wire[q] for q in g.qubits]
        outs = [fresh() for _ in g.qubits]
        tensors.append(Tensor(outs + ins, gate_matrix(g)))
        for q, ix in zip(g.qubits, outs):
            wire[q] = ix
    open_indices = [wire[q] for q in range(c.num_qubits - 1, -1, -1)]
    return TensorNetwork(tensors, open_indices)


def _result_labels(la: frozenset, lb: frozenset) -> frozenset:
    return la ^ lb


def greedy_plan(net: TensorNetwork) -> ContractionPlan:
    """Pick the pair giving the smallest output, ties by smaller combined input
    then by creation order; disconnected remainders are outer-producted last."""
    live: dict[int, frozenset[str]] = {
        i: frozenset(ix.label for ix in t.indices) for i, t in enumerate(net.tensors)
    }
    dims: dict[str, int] = {
        ix.label: ix.dim for t in net.tensors for ix in t.indices
    }
    next_id = len(net.tensors)
    steps: list[tuple[int, int]] = []

    def size(labels: frozenset) -> int:
        return prod(dims[l] for l in labels) if labels else 1

    while len(live) > 1:
        ids = sorted(live)
        candidates = [
            (i, j) for pos, i in enumerate(ids) for j in ids[pos + 1 :]
            if live[i] & live[j]
        ]
        if not candidates:
            candidates = [
                (i, j) for pos, i in enumerate(ids) for j in ids[pos + 1 :]
            ]
        best = min(
            candidates,
            key=lambda p: (
                size(_result_labels(live[p[0]], live[p[1]])),
                size(live[p[0]]) + size(live[p[1]]),
                p,
            ),
        )
        i, j = best
        live[next_id] = _result_labels(live[i], live[j])
        del live[i], live[j]
        steps.append((i, j))
        next_id += 1
    return ContractionPlan(steps)


def execute_plan(net: TensorNetwork, plan: ContractionPlan) -> Tensor:
    """Run the plan; the final tensor's indices follow net.open_indices order."""
    live: dict[int, Tensor] = dict(enumerate(net.tensors))
    next_id = len(net.tensors)
    for i, j in plan.steps:
        if i not in live or j not in live:
            raise PlanError(f"step ({i}, {j}) names a missing or consumed tensor")
        live[next_id] = contract_pair(live[i], live[j])
        del live[i], live[j]
        next_id += 1
    if len(live) != 1:
        raise PlanError(f"plan leaves {len(live)} tensors instead of one")
    result = live.popitem()[1]
    want = [ix.label for ix in net.open_indices]
    have = [ix.label for ix in result.indices]
    if sorted(want) != sorted(have):
        raise PlanError("result indices do not match the network's open indices")
    perm = [have.index(l) for l in want]
    return Tensor(list(net.open_indices), np.transpose(result.data, perm))


def plan_cost(net: TensorNetwork, plan: ContractionPlan) -> tuple[int, int]:
    """(flops, max_intermediate_size); flops per step = output size x contracted dim."""
    live: dict[int, frozenset[str]] = {
        i: frozenset(ix.label for ix in t.indices) for i, t in enumerate(net.tensors)
    }
    dims: dict[str, int] = {
        ix.label: ix.dim for t in net.tensors for ix in t.indices
    }
    next_id = len(net.tensors)

    def size(labels: frozenset) -> int:
        return prod(dims[l] for l in labels) if labels else 1

    flops = 0
    max_size = max((size(l) for l in live.values()), default=1)
    for i, j in plan.steps:
        if i not in live or j not in live:
            raise PlanError(f"step ({i}, {j}) names a missing or consumed tensor")
        shared = live[i] & live[j]
        out = _result_labels(live[i], live[j])
        flops += size(out) * size(shared)
        max_size = max(max_size, size(out))
        live[next_id] = out
        del live[i], live[j]
        next_id += 1
    return flops, max_size


def exhaustive_optimal_plan(net: TensorNetwork) -> ContractionPlan:
    """Minimum-flops plan by full enumeration; test oracle, <= 8 tensors only."""
    m = len(net.tensors)
    if m > MAX_EXHAUSTIVE_TENSORS:
        raise ValueError(f"exhaustive search limited to {MAX_EXHAUSTIVE_TENSORS} tensors")
    dims: dict[str, int] = {
        ix.label: ix.dim for t in net.tensors for ix in t.indices
    }

    def size(labels: frozenset) -> int:
        return prod(dims[l] for l in labels) if labels else 1

    memo: dict = {}

    def best(state: tuple[tuple[int, frozenset], ...], next_id: int):
        if len(state) == 1:
            return 0, []
        key = frozenset(i for i, _ in state)
        cached = memo.get(key)
        if cached is not None:
            return cached
        best_cost, best_steps = None, None
        for x in range(len(state)):
            for y in range(x + 1, len(state)):
                (i, li), (j, lj) = state[x], state[y]
                out = li ^ lj
                step_cost = size(out) * size(li & lj)
                rest = tuple(
                    s for pos, s in enumerate(state) if pos not in (x, y)
                ) + ((next_id, out),)
                sub_cost, sub_steps = best(rest, next_id + 1)
                total = step_cost + sub_cost
                if best_cost is None or total < best_cost:
                    best_cost = total
                    best_steps = [(i, j)] + sub_steps
        memo[key] = (best_cost, best_steps)
        return best_cost, best_steps

    state = tuple(
        (i, frozenset(ix.label for ix in t.indices)) for i, t in enumerate(net.tensors)
    )
    _, steps = best(state, m)
    return ContractionPlan(steps)


def amplitude_tn(c: Circuit, bits: str) -> complex:
    """Single amplitude by plugging effect bubbles onto every open index."""
    if len(bits) != c.num_qubits:
        raise ValueError("basis state length != qubit count")
    net = circuit_to_network(c)
    tensors = list(net.tensors)
    for ix, bit in zip(net.open_indices, bits):
        vec = np.array([1.0, 0.0]) if bit == "0" else np.array([0.0, 1.0])
        tensors.append(Tensor([ix], vec.astype(complex)))
    closed = TensorNetwork(tensors, [])
    result = execute_plan(closed, greedy_plan(closed))
    return complex(result.data.reshape(()))


def full_state_tn(c: Circuit) -> dense.StateVector:
    if c.num_qubits > MAX_FULL_STATE_QUBITS:
        raise CapacityError(
            f"{c.num_qubits} qubits exceeds full-state ceiling {MAX_FULL_STATE_QUBITS}"
        )
    net = circuit_to_network(c)
    result = execute_plan(net, greedy_plan(net))
    return dense.StateVector(c.num_qubits, result.data.reshape(-1))


def contraction_stats(net: TensorNetwork, plan: ContractionPlan) -> str:
    flops, max_size = plan_cost(net, plan)
    return (
        f"tensors={len(net.tensors)} steps={len(plan.steps)} "
        f"flops={flops} max_intermediate={max_size}"
    )
