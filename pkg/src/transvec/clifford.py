"""Clifford gates: circuit DSL, symplectic images, transvection-gate decomposition,
Pauli support and Pauli commutant.

Convention: a Clifford ``G`` maps ``E(e_i)`` to ``G E(e_i) G^dagger = s_i E(c_i)``
and its symplectic image ``F`` has rows ``c_i``. With this choice, running
gates left to right on a state corresponds to multiplying their images left to
right. A transvection gate ``G_v = (I + i E(v)) / sqrt(2)`` has image ``T_v``,
so a decomposition ``F = T_{w_1} ... T_{w_r} T_v`` is realized by the operator
``G_v G_{w_r} ... G_{w_1}``.
"""

from __future__ import annotations

import cmath
import logging
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .decompose import SymplecticDecomposition, decompose_symplectic
from .gf2 import BitMatrix, BitVector
from .pauli import (
    Pauli,
    check_dense_cap,
    conjugate_by_transvection_gate,
    pauli_from_dense,
    pauli_mul,
)
from .symplectic import SymplecticMatrix, _half_swap, fix_space, is_symplectic, sip_bits

log = logging.getLogger(__name__)

SUPPORT_CAP = 20
COMMUTANT_CAP = 1 << 12

SQRT2 = math.sqrt(2.0)


class CircuitSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotCliffordError(ValueError):
    pass


class CapExceededError(ValueError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


# -- circuit DSL -----------------------------------------------------------------

GATE_ARITY = {"h": 1, "s": 1, "x": 1, "y": 1, "z": 1, "cnot": 2, "cz": 2, "swap": 2}


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]

    def __str__(self) -> str:
        return " ".join([self.name, *map(str, self.qubits)])


@dataclass(frozen=True)
class CircuitProgram:
    m: int
    gates: tuple[Gate, ...] = ()

    def __str__(self) -> str:
        return "; ".join(map(str, self.gates))

    def __len__(self) -> int:
        return len(self.gates)


_TOKEN = re.compile(r"\S+")


def parse_circuit(text: str, m: int | None = None) -> CircuitProgram:
    """Parse the gate DSL: ``h q | s q | x q | y q | z q | cnot c t | cz a b | swap a b``.

    Statements are separated by ``;`` or newlines, ``#`` starts a comment and
    names are case-insensitive. Without ``m`` the qubit count is one more than
    the largest index used (at least 1).
    """
    gates: list[tuple[Gate, int, int]] = []
    for lineno, line in enumerate(text.splitlines() or [""], start=1):
        line = line.split("#", 1)[0]
        offset = 0
        for stmt in line.split(";"):
            tokens = [(t.group(), offset + t.start() + 1) for t in _TOKEN.finditer(stmt)]
            offset += len(stmt) + 1
            if not tokens:
                continue
            (name, col), args = tokens[0], tokens[1:]
            name = name.lower()
            if name not in GATE_ARITY:
                raise CircuitSyntaxError(f"unknown gate {tokens[0][0]!r}", lineno, col)
            if len(args) != GATE_ARITY[name]:
                raise CircuitSyntaxError(
                    f"gate {name!r} takes {GATE_ARITY[name]} qubit index(es), got {len(args)}", lineno, col
                )
            qubits = []
            for tok, tcol in args:
                if not tok.isdigit():
                    raise CircuitSyntaxError(f"malformed qubit index {tok!r}", lineno, tcol)
                q = int(tok)
                if m is not None and q >= m:
                    raise CircuitSyntaxError(f"qubit index {q} out of range for m = {m}", lineno, tcol)
                qubits.append(q)
            if len(qubits) == 2 and qubits[0] == qubits[1]:
                raise CircuitSyntaxError(f"gate {name!r} needs two distinct qubits", lineno, args[1][1])
            gates.append((Gate(name, tuple(qubits)), lineno, col))
    if m is None:
        m = max((max(g.qubits) for g, _, _ in gates), default=0) + 1
    return CircuitProgram(m, tuple(g for g, _, _ in gates))


def _as_program(p: CircuitProgram | str, m: int | None = None) -> CircuitProgram:
    return parse_circuit(p, m) if isinstance(p, str) else p


# -- symplectic images -----------------------------------------------------------


def _swap_bits(x: int, i: int, j: int) -> int:
    if ((x >> i) ^ (x >> j)) & 1:
        x ^= (1 << i) | (1 << j)
    return x


def _gate_action(g: Gate, x: int, m: int) -> int:
    """Row vector ``x`` times the symplectic image of ``g``."""
    name, qs = g.name, g.qubits
    if name == "h":
        return _swap_bits(x, qs[0], m + qs[0])
    if name == "s":
        return x ^ (((x >> qs[0]) & 1) << (m + qs[0]))
    if name == "cnot":
        c, t = qs
        x ^= ((x >> c) & 1) << t
        return x ^ (((x >> (m + t)) & 1) << (m + c))
    if name == "cz":
        a, b = qs
        xa, xb = (x >> a) & 1, (x >> b) & 1
        return x ^ (xa << (m + b)) ^ (xb << (m + a))
    if name == "swap":
        a, b = qs
        return _swap_bits(_swap_bits(x, a, b), m + a, m + b)
    return x  # Pauli gates act trivially


def circuit_to_symplectic(p: CircuitProgram | str) -> SymplecticMatrix:
    """Left-to-right product of the gate images; no dense matrices involved."""
    p = _as_program(p)
    m = p.m
    rows = [1 << i for i in range(2 * m)]
    for g in p.gates:
        rows = [_gate_action(g, x, m) for x in rows]
    return SymplecticMatrix(m, BitMatrix(2 * m, 2 * m, tuple(rows)))


def _single(m: int, q: int, letter: str, k: int = 0) -> Pauli:
    a = 1 << q if letter in "XY" else 0
    b = 1 << q if letter in "ZY" else 0
    return Pauli(m, a, b, k + (a & b).bit_count())


def _gate_images(g: Gate, m: int) -> dict[tuple[str, int], Pauli]:
    """Images of ``X_q`` and ``Z_q`` under conjugation by ``g`` for the touched qubits."""
    qs = g.qubits
    P = lambda terms, k=0: _pauli_product(m, terms, k)  # noqa: E731
    if g.name == "h":
        q = qs[0]
        return {("X", q): P([("Z", q)]), ("Z", q): P([("X", q)])}
    if g.name == "s":
        q = qs[0]
        return {("X", q): P([("Y", q)]), ("Z", q): P([("Z", q)])}
    if g.name in ("x", "y", "z"):
        q = qs[0]
        flipx = g.name in ("y", "z")
        flipz = g.name in ("x", "y")
        return {("X", q): P([("X", q)], 2 * flipx), ("Z", q): P([("Z", q)], 2 * flipz)}
    a, b = qs
    if g.name == "cnot":
        return {
            ("X", a): P([("X", a), ("X", b)]),
            ("Z", a): P([("Z", a)]),
            ("X", b): P([("X", b)]),
            ("Z", b): P([("Z", a), ("Z", b)]),
        }
    if g.name == "cz":
        return {
            ("X", a): P([("X", a), ("Z", b)]),
            ("Z", a): P([("Z", a)]),
            ("X", b): P([("Z", a), ("X", b)]),
            ("Z", b): P([("Z", b)]),
        }
    if g.name == "swap":
        return {
            ("X", a): P([("X", b)]),
            ("Z", a): P([("Z", b)]),
            ("X", b): P([("X", a)]),
            ("Z", b): P([("Z", a)]),
        }
    raise ValueError(f"unknown gate {g.name!r}")


def _pauli_product(m: int, terms, k: int = 0) -> Pauli:
    out = Pauli.identity(m)
    for letter, q in terms:
        out = pauli_mul(out, _single(m, q, letter))
    return out.times_i(k)


def conjugate_by_gate(p: Pauli, g: Gate) -> Pauli:
    """``g p g^dagger`` computed symbolically."""
    m = p.m
    images = _gate_images(g, m)
    touched = 0
    for _, q in images:
        touched |= 1 << q
    out = Pauli(m, p.a & ~touched, p.b & ~touched, p.k)
    # D(a,b) factors qubit by qubit as X^a Z^b, and distinct qubits commute
    for q in sorted({q for _, q in images}):
        if (p.a >> q) & 1:
            out = pauli_mul(out, images[("X", q)])
        if (p.b >> q) & 1:
            out = pauli_mul(out, images[("Z", q)])
    return out


def circuit_tableau(p: CircuitProgram | str) -> list[Pauli]:
    """Signed images ``s_i E(c_i)`` of the basis Paulis ``E(e_i)`` through the circuit."""
    p = _as_program(p)
    m = p.m
    images = [Pauli.from_vector(1 << i, m) for i in range(2 * m)]
    for g in p.gates:
        images = [conjugate_by_gate(x, g) for x in images]
    return images


# -- dense gates -----------------------------------------------------------------

_H = np.array([[1, 1], [1, -1]], dtype=complex) / SQRT2
_S = np.array([[1, 0], [0, 1j]], dtype=complex)
_PX = np.array([[0, 1], [1, 0]], dtype=complex)
_PY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_PZ = np.array([[1, 0], [0, -1]], dtype=complex)
_CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
_CZ = np.diag([1, 1, 1, -1]).astype(complex)
_SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)

GATE_MATRICES = {"h": _H, "s": _S, "x": _PX, "y": _PY, "z": _PZ, "cnot": _CNOT, "cz": _CZ, "swap": _SWAP}


def _apply_local(U: np.ndarray, mat: np.ndarray, qubits: tuple[int, ...], m: int) -> np.ndarray:
    """``(mat on qubits) @ U`` via a tensor contraction over the row index."""
    N = U.shape[1]
    k = len(qubits)
    T = U.reshape((2,) * m + (N,))
    G = mat.reshape((2,) * (2 * k))
    T = np.tensordot(G, T, axes=(list(range(k, 2 * k)), list(qubits)))
    # contracted axes moved to the front; put them back in place
    rest = [ax for ax in range(m) if ax not in qubits]
    order = [0] * (m + 1)
    for i, q in enumerate(qubits):
        order[q] = i
    for i, ax in enumerate(rest):
        order[ax] = k + i
    order[m] = m
    return np.transpose(T, order).reshape(U.shape)


def circuit_to_dense(p: CircuitProgram | str, cap: int | None = None) -> np.ndarray:
    """The circuit unitary; gates act in program order (the first gate acts first)."""
    p = _as_program(p)
    check_dense_cap(p.m, cap)
    U = np.eye(1 << p.m, dtype=complex)
    for g in p.gates:
        U = _apply_local(U, GATE_MATRICES[g.name], g.qubits, p.m)
    return U


def _num_qubits(U: np.ndarray) -> int:
    N = U.shape[0]
    if U.ndim != 2 or U.shape != (N, N) or N & (N - 1) or N == 0:
        raise ValueError("expected a square matrix of power-of-two size")
    return N.bit_length() - 1


def extract_symplectic(U: np.ndarray, atol: float = 1e-9) -> tuple[SymplecticMatrix, list[int]]:
    """Rows ``c_i`` and signs ``s_i`` from ``U E(e_i) U^dagger = s_i E(c_i)``."""
    U = np.asarray(U, dtype=complex)
    m = _num_qubits(U)
    Ud = U.conj().T
    rows, signs = [], []
    for i in range(2 * m):
        e = Pauli.from_vector(1 << i, m).dense(cap=m)
        try:
            phase, p = pauli_from_dense(U @ e @ Ud, atol)
        except ValueError as exc:
            raise NotCliffordError(f"conjugate of basis Pauli {i} is not a Pauli: {exc}") from None
        if abs(phase.imag) > atol:
            raise NotCliffordError("conjugate of a Hermitian Pauli has a non-real phase")
        rows.append(p.bits)
        signs.append(1 if phase.real > 0 else -1)
    mat = BitMatrix(2 * m, 2 * m, tuple(rows))
    if not is_symplectic(mat):
        raise NotCliffordError("extracted matrix is not symplectic")
    return SymplecticMatrix(m, mat), signs


def transvection_gate(v: BitVector, cap: int | None = None) -> np.ndarray:
    """``G_v = (I + i E(v)) / sqrt(2)``."""
    if not v.bits:
        raise ValueError("transvection gates need a nonzero vector")
    m = v.len // 2
    check_dense_cap(m, cap)
    E = Pauli.from_vector(v).dense(cap=m)
    return (np.eye(1 << m) + 1j * E) / SQRT2


def equal_up_to_phase(u: np.ndarray, v: np.ndarray, atol: float = 1e-8) -> tuple[bool, complex | None]:
    """Whether ``v = phase * u``; the phase is recovered from ``tr(u^dagger v)``."""
    u, v = np.asarray(u, dtype=complex), np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        return False, None
    t = np.trace(u.conj().T @ v)
    if abs(abs(t) - u.shape[0]) > atol:
        return False, None
    phase = complex(t / abs(t))
    return bool(np.allclose(v, phase * u, atol=max(atol, 1e-10))), phase


# -- phases ----------------------------------------------------------------------

_R = 1 / SQRT2
_EIGHTH = [1, complex(_R, _R), 1j, complex(-_R, _R), -1, complex(-_R, -_R), -1j, complex(_R, -_R)]
_EIGHTH_TEXT = ["1", "(1+1i)/sqrt2", "1i", "(-1+1i)/sqrt2", "-1", "(-1-1i)/sqrt2", "-1i", "(1-1i)/sqrt2"]


def round_phase(z: complex, atol: float = 1e-8) -> tuple[complex, int | None]:
    """Snap to the nearest eighth root of unity when within ``atol``."""
    k = round(cmath.phase(z) / (math.pi / 4)) % 8
    if abs(z - _EIGHTH[k]) <= atol:
        return _EIGHTH[k], k
    log.warning("global phase %s is not an eighth root of unity", z)
    return z, None


def phase_text(z: complex | None) -> str | None:
    if z is None:
        return None
    _, k = round_phase(z) if abs(abs(z) - 1) < 1e-6 else (z, None)
    if k is not None:
        return _EIGHTH_TEXT[k]
    return f"{z.real:.12g}{z.imag:+.12g}i"


def parse_phase(text: str | None) -> complex | None:
    if text is None:
        return None
    if text in _EIGHTH_TEXT:
        return _EIGHTH[_EIGHTH_TEXT.index(text)]
    return complex(text.replace("i", "j"))


# -- Clifford decomposition -------------------------------------------------------


@dataclass(frozen=True)
class CliffordDecomposition:
    """``G = global_phase * e0 * G_0`` with ``G_0 = G_v G_{w_r} ... G_{w_1}``.

    ``global_phase`` is ``None`` when the decomposition was computed
    symbolically (the circuit fixes ``G`` only up to a global phase).
    """

    F: SymplecticMatrix
    e0: Pauli
    symplectic: SymplecticDecomposition
    global_phase: complex | None = None
    support: tuple[Pauli, ...] | None = field(default=None, compare=False)

    @property
    def m(self) -> int:
        return self.F.m

    @property
    def vectors(self) -> tuple[BitVector, ...]:
        return self.symplectic.vectors

    @property
    def hyperbolic_fix(self) -> BitVector | None:
        return self.symplectic.hyperbolic_fix

    def operator_order(self) -> list[BitVector]:
        """Transvection vectors in operator (matrix-product) order, leftmost first."""
        return list(reversed(self.symplectic.transvections()))

    def g0(self, cap: int | None = None) -> np.ndarray:
        U = np.eye(1 << self.m, dtype=complex)
        for v in self.operator_order():
            U = U @ transvection_gate(v, cap)
        return U

    def dense(self, cap: int | None = None) -> np.ndarray:
        phase = 1.0 if self.global_phase is None else self.global_phase
        return phase * (self.e0.dense(cap) @ self.g0(cap))

    def to_dict(self, verified: bool | None = None) -> dict:
        d = self.symplectic.to_dict(verified)
        d["global_phase"] = phase_text(self.global_phase)
        d["e0"] = str(self.e0)
        if self.support is not None:
            d["support"] = [str(p) for p in self.support]
        return d


def _transvection_conjugate(p: Pauli, d: SymplecticDecomposition) -> Pauli:
    """``G_0 p G_0^dagger``: the innermost factor ``G_{w_1}`` acts first."""
    for v in d.transvections():
        p = conjugate_by_transvection_gate(p, v)
    return p


def algorithm1_decompose(U: np.ndarray, seed=0) -> CliffordDecomposition:
    """Decompose a dense Clifford into a phase, a Pauli and transvection gates."""
    U = np.asarray(U, dtype=complex)
    F, _ = extract_symplectic(U)
    d = decompose_symplectic(F, seed)
    m = F.m
    cd = CliffordDecomposition(F, Pauli.identity(m), d)
    rest = U @ cd.g0(cap=m).conj().T
    try:
        phase, e0 = pauli_from_dense(rest)
    except ValueError as exc:  # pragma: no cover - would mean a bug in the gate product
        raise NotCliffordError(f"residual after transvection gates is not a Pauli: {exc}") from None
    phase, _ = round_phase(phase)
    return CliffordDecomposition(F, e0, d, phase)


def decompose_circuit(p: CircuitProgram | str, seed=0, dense: bool | None = None) -> CliffordDecomposition:
    """Decomposition of a circuit.

    With ``dense`` (default: when ``m`` is within the dense cap) the circuit
    unitary is built and the global phase recovered; otherwise everything is
    symbolic and ``global_phase`` is ``None``.
    """
    p = _as_program(p)
    from . import pauli as _pauli

    if dense is None:
        dense = p.m <= _pauli.DENSE_CAP
    if dense:
        return algorithm1_decompose(circuit_to_dense(p), seed)
    images = circuit_tableau(p)
    m = p.m
    F = SymplecticMatrix(m, BitMatrix(2 * m, 2 * m, tuple(x.bits for x in images)))
    d = decompose_symplectic(F, seed)
    # G = E(v0) G_0 up to phase: E(v0) flips the sign of E(c_i) iff <v0, c_i> = 1
    beta = 0
    for i, img in enumerate(images):
        target = _transvection_conjugate(Pauli.from_vector(1 << i, m), d)
        if target.bits != img.bits:  # pragma: no cover
            raise RuntimeError("transvection gates do not reproduce the symplectic image")
        if target.k != img.k:
            beta |= 1 << i
    v0 = F.mat.vec_mul(_half_swap(beta, m))
    return CliffordDecomposition(F, Pauli.from_vector(v0, m), d, None)


def _as_decomposition(x, seed=0) -> CliffordDecomposition:
    if isinstance(x, CliffordDecomposition):
        return x
    if isinstance(x, (CircuitProgram, str)):
        return decompose_circuit(x, seed)
    return algorithm1_decompose(x, seed)


# -- support ---------------------------------------------------------------------


@dataclass(frozen=True)
class SupportSet:
    """``G = phase * 2^{-scale/2} * sum_v coeff_v E(v) / sqrt(2^m)`` with Gaussian-integer ``coeff_v``.

    ``elements`` holds ``((re, im), Pauli)`` for the nonzero coefficients in
    packed-vector order; ``basis`` spans the affine hull's direction.
    """

    m: int
    elements: tuple[tuple[tuple[int, int], Pauli], ...]
    scale: int
    basis: BitMatrix

    def paulis(self) -> list[Pauli]:
        return [p for _, p in self.elements]

    def vectors(self) -> set[int]:
        return {p.bits for _, p in self.elements}

    def parseval_lhs(self) -> tuple[int, int]:
        """``sum |coeff|^2`` and ``2^scale`` as exact integers (numerator, denominator shift)."""
        return sum(re * re + im * im for (re, im), _ in self.elements), self.scale

    def parseval_holds(self) -> bool:
        total, scale = self.parseval_lhs()
        # total / 2^scale == 2^m
        if scale >= 0:
            return total == 1 << (self.m + scale)
        return total << (-scale) == 1 << self.m


def _gauss_mul_ik(c: tuple[int, int], k: int) -> tuple[int, int]:
    re, im = c
    for _ in range(k % 4):
        re, im = -im, re
    return re, im


def support_of(x, cap: int = SUPPORT_CAP, seed=0) -> SupportSet:
    """Expand ``e0 * prod (I + i E(v)) / sqrt(2)`` over the Hermitian Pauli basis."""
    cd = _as_decomposition(x, seed)
    m = cd.m
    order = cd.operator_order()
    if len(order) > cap:
        raise CapExceededError(f"{len(order)} transvections exceed the expansion cap {cap}")
    # terms: vector -> Gaussian integer coefficient of E(vector)
    terms: dict[int, tuple[int, int]] = {cd.e0.bits: (1, 0)}
    e0_phase = cd.e0.hermitian_phase
    for v in order:
        ev = Pauli.from_vector(v.bits, m)
        new: dict[int, tuple[int, int]] = {}

        def add(key, c):
            re, im = new.get(key, (0, 0))
            new[key] = (re + c[0], im + c[1])

        for w, c in terms.items():
            add(w, c)
            prod = pauli_mul(Pauli.from_vector(w, m), ev)  # = i^j E(w + v)
            add(prod.bits, _gauss_mul_ik(c, 1 + prod.hermitian_phase))
        terms = {w: c for w, c in new.items() if c != (0, 0)}
    terms = {w: _gauss_mul_ik(c, e0_phase) for w, c in terms.items()}
    elements = tuple(
        (c, Pauli.from_vector(w, m)) for w, c in sorted(terms.items(), key=lambda t: _lex_key(t[0], m))
    )
    basis = BitMatrix(len(order), 2 * m, tuple(v.bits for v in order))
    return SupportSet(m, elements, len(order) - m, basis)


def _lex_key(bits: int, m: int) -> str:
    return str(BitVector(2 * m, bits))


def trace_support(U: np.ndarray, atol: float = 1e-9) -> set[int]:
    """Brute-force support: vectors ``v`` with ``tr(E(v) U) != 0``."""
    m = _num_qubits(np.asarray(U))
    out = set()
    for v in range(1 << (2 * m)):
        if abs(np.trace(Pauli.from_vector(v, m).dense(cap=m) @ U)) > atol:
            out.add(v)
    return out


# -- commutant -------------------------------------------------------------------


def _conjugate_through(cd: CliffordDecomposition, p: Pauli) -> Pauli:
    """``G p G^dagger`` for ``G = phase * E(v0) * G_0`` (the phase cancels)."""
    q = _transvection_conjugate(p, cd.symplectic)
    if sip_bits(q.bits, cd.e0.bits, cd.m):
        q = -q
    return q


@dataclass(frozen=True)
class Commutant:
    """Paulis ``E(c)`` with ``G E(c) G^dagger = E(c)``; a subspace of Fix(F)."""

    m: int
    basis: tuple[Pauli, ...]
    elements: tuple[Pauli, ...] | None

    @property
    def dim(self) -> int:
        return len(self.basis)


def commutant(x, cap: int = COMMUTANT_CAP, seed=0) -> Commutant:
    """Basis of the Pauli commutant, and all its elements when at most ``cap``."""
    cd = _as_decomposition(x, seed)
    m = cd.m
    fix = fix_space(cd.F).rows
    # the sign of G E(c) G^dagger is a character on Fix(F); keep its kernel
    flips = [_conjugate_through(cd, Pauli.from_vector(c, m)).k != Pauli.from_vector(c, m).k for c in fix]
    basis_bits = [c for c, f in zip(fix, flips) if not f]
    odd = [c for c, f in zip(fix, flips) if f]
    basis_bits += [c ^ odd[0] for c in odd[1:]]
    basis = tuple(Pauli.from_vector(c, m) for c in basis_bits)
    elements = None
    if (1 << len(basis_bits)) <= cap:
        span = {0}
        for c in basis_bits:
            span |= {s ^ c for s in span}
        elements = tuple(Pauli.from_vector(c, m) for c in sorted(span, key=lambda c: _lex_key(c, m)))
    return Commutant(m, basis, elements)


def commutant_paulis(x, cap: int = COMMUTANT_CAP, basis_only: bool = False, seed=0) -> list[Pauli]:
    """Paulis commuting with ``G``, in lexicographic order of their ``(a|b)`` strings.

    Raises :class:`CapExceededError` (carrying the basis) when the commutant
    has more than ``cap`` elements; ``basis_only`` returns just a basis.
    """
    c = commutant(x, cap, seed)
    if basis_only:
        return list(c.basis)
    if c.elements is None:
        raise CapExceededError(f"commutant has 2^{c.dim} elements, above the cap {cap}", list(c.basis))
    return list(c.elements)


def dense_commutant(U: np.ndarray, atol: float = 1e-9) -> set[int]:
    m = _num_qubits(np.asarray(U))
    out = set()
    for v in range(1 << (2 * m)):
        E = Pauli.from_vector(v, m).dense(cap=m)
        if np.allclose(U @ E, E @ U, atol=atol):
            out.add(v)
    return out


def random_circuit(m: int, length: int, rng) -> CircuitProgram:
    names = list(GATE_ARITY)
    gates = []
    for _ in range(length):
        name = rng.choice(names) if m > 1 else rng.choice([n for n in names if GATE_ARITY[n] == 1])
        if GATE_ARITY[name] == 1:
            qs = (rng.randrange(m),)
        else:
            qs = tuple(rng.sample(range(m), 2))
        gates.append(Gate(name, qs))
    return CircuitProgram(m, tuple(gates))


__all__ = [
    "CapExceededError",
    "CircuitProgram",
    "CircuitSyntaxError",
    "CliffordDecomposition",
    "Commutant",
    "Gate",
    "NotCliffordError",
    "SupportSet",
    "algorithm1_decompose",
    "circuit_tableau",
    "circuit_to_dense",
    "circuit_to_symplectic",
    "commutant",
    "commutant_paulis",
    "conjugate_by_gate",
    "decompose_circuit",
    "dense_commutant",
    "equal_up_to_phase",
    "extract_symplectic",
    "parse_circuit",
    "phase_text",
    "random_circuit",
    "round_phase",
    "support_of",
    "trace_support",
    "transvection_gate",
]
