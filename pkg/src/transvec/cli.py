"""Command-line front end: ``transvec <command> ...``.

Exit codes: 0 success, 1 input or usage error, 2 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import statistics
import sys
import time
from pathlib import Path

from . import pauli as _pauli
from .clifford import (
    CapExceededError,
    CircuitSyntaxError,
    NotCliffordError,
    commutant,
    decompose_circuit,
    parse_circuit,
    support_of,
)
from .decompose import (
    SymplecticDecomposition,
    decompose_peeling,
    decompose_symplectic,
    verify_decomposition,
)
from .gf2 import BitMatrix
from .symplectic import (
    KINDS,
    NotSymplecticError,
    SymplecticMatrix,
    export_dot,
    gram_data,
    random_symplectic,
    residue_dim,
)

log = logging.getLogger("transvec")

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_matrix(path: str) -> BitMatrix:
    try:
        return BitMatrix.from_text(_read(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _read_symplectic(path: str) -> SymplecticMatrix:
    mat = _read_matrix(path)
    if mat.nrows != mat.ncols or mat.nrows % 2:
        raise InputError("input is not symplectic (matrix must be square of even size)")
    try:
        return SymplecticMatrix.from_matrix(mat)
    except NotSymplecticError:
        raise InputError("input is not symplectic") from None


def _circuit(args):
    try:
        return parse_circuit(args.circuit, args.m)
    except CircuitSyntaxError as exc:
        raise InputError(f"circuit: {exc}") from None


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print("\n".join(text_lines))


def _decomp_lines(d: dict) -> list[str]:
    lines = [f"m: {d['m']}"]
    if "global_phase" in d:
        lines.append(f"global_phase: {d['global_phase']}")
        lines.append(f"e0: {d['e0']}")
    lines.append(f"vectors: {' '.join(d['vectors']) or '(none)'}")
    lines.append(f"hyperbolic_fix: {d['hyperbolic_fix'] or '(none)'}")
    if "support" in d:
        lines.append(f"support: {' '.join(d['support'])}")
    if "verified" in d:
        lines.append(f"verified: {str(d['verified']).lower()}")
    return lines


def cmd_decompose(args) -> int:
    if args.circuit is not None:
        prog = _circuit(args)
        cd = decompose_circuit(prog, args.seed)
        F = cd.F
        d = cd.symplectic
        if args.support:
            cd = type(cd)(cd.F, cd.e0, cd.symplectic, cd.global_phase, tuple(support_of(cd, seed=args.seed).paulis()))
        ok = verify_decomposition(F, d, args.seed)
        payload = cd.to_dict(ok)
    else:
        F = _read_symplectic(args.symplectic)
        d = decompose_peeling(F, args.seed) if args.method == "peeling" else decompose_symplectic(F, args.seed)
        ok = verify_decomposition(F, d, args.seed)
        payload = d.to_dict(ok)
    _emit(args, payload, _decomp_lines(payload))
    if args.plot and d.vectors:
        from .plotting import plot_gram

        V = BitMatrix(len(d.vectors), 2 * d.m, tuple(v.bits for v in d.vectors))
        plot_gram(gram_data(V), args.plot)
    if not ok:
        print("decomposition failed verification", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_support(args) -> int:
    prog = _circuit(args)
    try:
        s = support_of(prog, cap=args.cap, seed=args.seed)
    except CapExceededError as exc:
        raise InputError(str(exc)) from None
    items = [str(p) for p in s.paulis()]
    payload = {
        "m": prog.m,
        "support": items,
        "coefficients": [[re, im] for (re, im), _ in s.elements],
        "scale": s.scale,
    }
    _emit(args, payload, [" ".join(items)])
    return EXIT_OK


def cmd_commutant(args) -> int:
    prog = _circuit(args)
    c = commutant(prog, cap=args.cap, seed=args.seed)
    basis = [str(p) for p in c.basis]
    if args.basis_only or c.elements is None:
        if c.elements is None and not args.basis_only:
            print(f"commutant has 2^{c.dim} elements, above the cap {args.cap}; listing a basis", file=sys.stderr)
        payload = {"m": prog.m, "dim": c.dim, "basis": basis}
        _emit(args, payload, [f"basis: {' '.join(basis) or '(empty)'}"])
        return EXIT_OK if args.basis_only else EXIT_INPUT
    elements = [str(p) for p in c.elements]
    payload = {"m": prog.m, "dim": c.dim, "basis": basis, "commutant": elements}
    _emit(args, payload, [" ".join(elements)])
    return EXIT_OK


def _matrix_lines(rows) -> list[str]:
    width = max((len(str(x)) for row in rows for x in row), default=1)
    return [" ".join(str(x).rjust(width) for x in row) for row in rows]


def cmd_gram(args) -> int:
    V = _read_matrix(args.vectors)
    if V.ncols % 2:
        raise InputError("vectors must have even length 2m")
    try:
        g = gram_data(V)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    A = [[g.A[i, j] for j in range(g.r)] for i in range(g.r)]
    B = [[int(g.B[i, j]) for j in range(g.r)] for i in range(g.r)]
    payload = {"r": g.r, "A": A, "B": B, "edges": [[i + 1, j + 1] for i, j in g.edges()]}
    _emit(args, payload, ["A:", *_matrix_lines(A), "B:", *_matrix_lines(B)])
    if args.dot:
        Path(args.dot).write_text(export_dot(g))
    if args.plot:
        from .plotting import plot_gram

        plot_gram(g, args.plot)
    return EXIT_OK


def cmd_random(args) -> int:
    if args.m < 1:
        raise InputError("--m must be at least 1")
    F = random_symplectic(args.m, args.seed, args.kind)
    text = F.mat.to_text()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    F = _read_symplectic(args.symplectic)
    try:
        d = SymplecticDecomposition.from_dict(json.loads(_read(args.decomposition)))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad decomposition file: {exc}") from None
    ok = verify_decomposition(F, d, args.seed)
    payload = {"verified": ok, "length": len(d), "residue_dim": residue_dim(F)}
    _emit(args, payload, [f"verified: {str(ok).lower()}"])
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bench(args) -> int:
    if args.m < 1 or args.trials < 1:
        raise InputError("--m and --trials must be positive")
    times, lengths = [], []
    for t in range(args.trials):
        F = random_symplectic(args.m, args.seed + t, args.kind)
        start = time.perf_counter()
        d = decompose_symplectic(F, args.seed)
        times.append(1000 * (time.perf_counter() - start))
        lengths.append(len(d))
    summary = {
        "m": args.m,
        "trials": args.trials,
        "ms": [round(x, 3) for x in times],
        "lengths": lengths,
        "min_ms": round(min(times), 3),
        "median_ms": round(statistics.median(times), 3),
        "mean_ms": round(statistics.fmean(times), 3),
        "max_ms": round(max(times), 3),
    }
    lines = [f"trial {i + 1}: {ms:.1f} ms (length {n})" for i, (ms, n) in enumerate(zip(times, lengths))]
    lines.append(
        f"min {summary['min_ms']:.1f} ms, median {summary['median_ms']:.1f} ms, "
        f"mean {summary['mean_ms']:.1f} ms, max {summary['max_ms']:.1f} ms"
    )
    _emit(args, summary, lines)
    if args.plot:
        from .plotting import plot_timings

        plot_timings(times, args.plot, args.m)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="transvec", description="Transvection decompositions of symplectic matrices and Clifford gates.")
    p.add_argument("--dense-cap", type=int, default=None, help="largest m for dense matrices (default 8)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, circuit=True):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true", help="JSON output")
        if circuit:
            sp.add_argument("--m", type=int, default=None, help="qubit count (default: from the circuit)")

    sp = sub.add_parser("decompose", help="minimal transvection decomposition")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--symplectic", metavar="FILE", help="matrix in text format ('-' for stdin)")
    src.add_argument("--circuit", metavar="TEXT", help="Clifford circuit in the gate DSL")
    sp.add_argument("--method", choices=["congruence", "peeling"], default="congruence")
    sp.add_argument("--support", action="store_true", help="include the Pauli support (circuits only)")
    sp.add_argument("--plot", metavar="PNG", help="draw the Gram digraph of the vectors")
    common(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("support", help="Pauli support of a circuit")
    sp.add_argument("--circuit", required=True, metavar="TEXT")
    sp.add_argument("--cap", type=int, default=20, help="maximum number of transvections to expand")
    common(sp)
    sp.set_defaults(func=cmd_support)

    sp = sub.add_parser("commutant", help="Paulis commuting with a circuit")
    sp.add_argument("--circuit", required=True, metavar="TEXT")
    sp.add_argument("--cap", type=int, default=1 << 12, help="maximum number of elements to list")
    sp.add_argument("--basis-only", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_commutant)

    sp = sub.add_parser("gram", help="Gram and path matrices of a vector list")
    sp.add_argument("--vectors", required=True, metavar="FILE")
    sp.add_argument("--dot", metavar="PATH", help="write the digraph in DOT format")
    sp.add_argument("--plot", metavar="PNG", help="draw the digraph")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_gram)

    sp = sub.add_parser("random", help="write a random symplectic matrix")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--kind", choices=KINDS, default="generic")
    sp.add_argument("--output", metavar="PATH")
    sp.set_defaults(func=cmd_random)

    sp = sub.add_parser("verify", help="check a decomposition against a matrix")
    sp.add_argument("--symplectic", required=True, metavar="FILE")
    sp.add_argument("--decomposition", required=True, metavar="JSON")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="time decompose_symplectic on random matrices")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--kind", choices=KINDS, default="generic")
    sp.add_argument("--plot", metavar="PNG", help="plot per-trial timings")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    saved_cap = _pauli.DENSE_CAP
    if args.dense_cap is not None:
        _pauli.DENSE_CAP = args.dense_cap
    try:
        return args.func(args)
    except (InputError, NotCliffordError, _pauli.DenseCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        _pauli.DENSE_CAP = saved_cap


if __name__ == "__main__":
    sys.exit(main())
