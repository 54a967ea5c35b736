"""Command-line front end: simulate, amplitude, sample, verify, stats."""
from __future__ import annotations

import argparse
import sys

from .errors import CapacityError, ParseError, QcdeskError
from . import dd, dense, tn, zx
from .ir import Circuit, parse_circuit
from .verify import BackendId, EquivalenceStatus, check_equivalence

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_PARSE = 65
EXIT_CAPACITY = 70

# printed amplitudes below this magnitude are suppressed without --full
_COMPACT_EPS = 1e-12


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    p = _Parser(prog="qcdesk", description="Quantum circuit toolkit (QCF input files)")
    sub = p.add_subparsers(dest="verb", required=True)

    sim = sub.add_parser("simulate", help="print the amplitude dump of a circuit")
    sim.add_argument("--backend", choices=["dense", "dd", "tn"], required=True)
    sim.add_argument("--full", action="store_true", help="print all 2^n lines")
    sim.add_argument("file")

    amp = sub.add_parser("amplitude", help="print one amplitude")
    amp.add_argument("--backend", choices=["dense", "dd", "tn"], required=True)
    amp.add_argument("--basis", required=True, metavar="BITS")
    amp.add_argument("file")

    smp = sub.add_parser("sample", help="seeded measurement sampling (dense backend)")
    smp.add_argument("--shots", type=int, required=True)
    smp.add_argument("--seed", type=int, required=True)
    smp.add_argument("file")

    ver = sub.add_parser("verify", help="equivalence-check two circuits")
    ver.add_argument("--method", choices=["dense", "dd", "zx"], required=True)
    ver.add_argument("file1")
    ver.add_argument("file2")

    st = sub.add_parser("stats", help="backend statistics for a circuit")
    st.add_argument("--backend", choices=["dd", "tn", "zx"], required=True)
    st.add_argument("file")
    return p


def _load(path: str) -> Circuit:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_circuit(fh.read())


def _state(c: Circuit, backend: str) -> dense.StateVector:
    if backend == "dense":
        return dense.simulate(c)
    if backend == "dd":
        b = dd.DDBackend()
        return b.dd_to_vector(b.simulate(c))
    return tn.full_state_tn(c)


def _cmd_simulate(args) -> int:
    c = _load(args.file)
    s = _state(c, args.backend)
    for line in dense.format_amplitude_dump(s).splitlines():
        if args.full or abs(complex(*map(float, line.split()[1:]))) > _COMPACT_EPS:
            print(line)
    return EXIT_OK


def _cmd_amplitude(args) -> int:
    c = _load(args.file)
    bits = args.basis
    if len(bits) != c.num_qubits or set(bits) - {"0", "1"}:
        print(f"error: bad basis state {bits!r}", file=sys.stderr)
        return EXIT_USAGE
    if args.backend == "tn":
        a = tn.amplitude_tn(c, bits)
    elif args.backend == "dd":
        a = dd.amplitude_from_circuit(c, bits)
    else:
        s = dense.simulate(c)
        a = complex(s.amps[int(bits, 2)])
    print(f"{bits} {a.real:.17g} {a.imag:.17g}")
    return EXIT_OK


def _cmd_sample(args) -> int:
    c = _load(args.file)
    counts = dense.sample(dense.simulate(c), args.shots, args.seed)
    for bits in sorted(counts):
        print(f"{bits} {counts[bits]}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    c1 = _load(args.file1)
    c2 = _load(args.file2)
    verdict = check_equivalence(c1, c2, BackendId(args.method))
    print(verdict.report())
    if verdict.status == EquivalenceStatus.EQUIVALENT:
        return EXIT_OK
    if verdict.status == EquivalenceStatus.NOT_EQUIVALENT:
        return EXIT_NOT_EQUIVALENT
    return EXIT_INCONCLUSIVE


def _cmd_stats(args) -> int:
    c = _load(args.file)
    if args.backend == "dd":
        print(dd.dd_stats(dd.simulate_dd(c)))
    elif args.backend == "tn":
        net = tn.circuit_to_network(c)
        print(tn.contraction_stats(net, tn.greedy_plan(net)))
    else:
        diagram = zx.to_graph_like(zx.circuit_to_zx(c))
        before = diagram.spider_count()
        reduced, steps = zx.apply_rewrites(diagram)
        print(zx.reduction_stats(before, reduced.spider_count(), len(steps)))
    return EXIT_OK


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code)
    handlers = {
        "simulate": _cmd_simulate,
        "amplitude": _cmd_amplitude,
        "sample": _cmd_sample,
        "verify": _cmd_verify,
        "stats": _cmd_stats,
    }
    try:
        return handlers[args.verb](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QcdeskError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
