"""Phase-tracked Pauli (Heisenberg-Weyl) algebra.

A Pauli is ``i^k D(a, b)`` with ``D(a, b) = X^{a_0} Z^{b_0} (x) ... (x) X^{a_{m-1}} Z^{b_{m-1}}``.
``a`` and ``b`` are packed into ints (bit q = qubit q) and the symplectic
vector of the Pauli is ``a | b << m``, matching the ``(a|b)`` layout used by
the symplectic module. Qubit 0 is the leftmost tensor factor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .gf2 import BitVector, parity
from .symplectic import sip_bits

DENSE_CAP = 8

_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}
_TEXT_RE = re.compile(r"^\s*(-?)(i?)((?i:[IXYZ])+)\s*$")

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)


class DenseCapError(ValueError):
    """Dense realization requested beyond the configured qubit cap."""


def check_dense_cap(m: int, cap: int | None = None) -> None:
    cap = DENSE_CAP if cap is None else cap
    if m > cap:
        raise DenseCapError(f"dense matrices are limited to m <= {cap} (got m = {m})")


@dataclass(frozen=True)
class Pauli:
    """``i^k D(a, b)`` on ``m`` qubits; ``a`` and ``b`` are packed bit masks."""

    m: int
    a: int
    b: int
    k: int = 0

    def __post_init__(self):
        mask = (1 << self.m) - 1
        if self.a & ~mask or self.b & ~mask:
            raise ValueError("Pauli bits exceed the qubit count")
        object.__setattr__(self, "k", self.k % 4)

    @classmethod
    def identity(cls, m: int) -> Pauli:
        return cls(m, 0, 0, 0)

    @classmethod
    def from_vector(cls, v: BitVector | int, m: int | None = None) -> Pauli:
        """The Hermitian representative ``E(v) = i^{a.b} D(a, b)``."""
        if isinstance(v, BitVector):
            if v.len % 2:
                raise ValueError("symplectic vectors have even length")
            m, bits = v.len // 2, v.bits
        else:
            if m is None:
                raise ValueError("m is required for an integer vector")
            bits = v
        mask = (1 << m) - 1
        a, b = bits & mask, (bits >> m) & mask
        return cls(m, a, b, (a & b).bit_count())

    @classmethod
    def from_str(cls, text: str) -> Pauli:
        """Parse text like ``"-iZX"``; letters are the Hermitian one-qubit Paulis."""
        match = _TEXT_RE.match(text)
        if not match:
            raise ValueError(f"not a Pauli string: {text!r}")
        minus, imag, letters = match.groups()
        letters = letters.upper()
        m = len(letters)
        a = b = 0
        for q, ch in enumerate(letters):
            if ch in "XY":
                a |= 1 << q
            if ch in "ZY":
                b |= 1 << q
        k = (2 if minus else 0) + (1 if imag else 0)
        return cls(m, a, b, k + (a & b).bit_count())

    @property
    def bits(self) -> int:
        return self.a | (self.b << self.m)

    @property
    def vector(self) -> BitVector:
        return BitVector(2 * self.m, self.bits)

    @property
    def hermitian_phase(self) -> int:
        """``j`` such that ``self = i^j E(a, b)``."""
        return (self.k - (self.a & self.b).bit_count()) % 4

    def is_hermitian(self) -> bool:
        return self.hermitian_phase % 2 == 0

    def letters(self) -> str:
        out = []
        for q in range(self.m):
            x, z = (self.a >> q) & 1, (self.b >> q) & 1
            out.append("IXZY"[x + 2 * z])
        return "".join(out)

    def __str__(self) -> str:
        return _PREFIX[self.hermitian_phase] + self.letters()

    def __repr__(self) -> str:
        return f"Pauli({str(self)!r})"

    def __mul__(self, other: Pauli) -> Pauli:
        return pauli_mul(self, other)

    def __neg__(self) -> Pauli:
        return Pauli(self.m, self.a, self.b, self.k + 2)

    def times_i(self, power: int = 1) -> Pauli:
        return Pauli(self.m, self.a, self.b, self.k + power)

    def hermitian(self) -> Pauli:
        """``E(a, b)``, this Pauli with its phase stripped."""
        return Pauli.from_vector(self.bits, self.m)

    def commutes_with(self, other: Pauli) -> bool:
        return sip_bits(self.bits, other.bits, self.m) == 0

    def dense(self, cap: int | None = None) -> np.ndarray:
        check_dense_cap(self.m, cap)
        out = np.ones((1, 1), dtype=complex)
        for q in range(self.m):
            f = _I2
            if (self.a >> q) & 1:
                f = _X
            if (self.b >> q) & 1:
                f = f @ _Z
            out = np.kron(out, f)
        return (1j**self.k) * out


def pauli_mul(p: Pauli, q: Pauli) -> Pauli:
    """Product with exact phase: ``D(a,b) D(c,d) = (-1)^{b.c} D(a+c, b+d)``."""
    if p.m != q.m:
        raise ValueError(f"qubit counts differ: {p.m} vs {q.m}")
    sign = 2 * parity(p.b & q.a)
    return Pauli(p.m, p.a ^ q.a, p.b ^ q.b, p.k + q.k + sign)


def e_of(v: BitVector) -> Pauli:
    """The Hermitian Pauli ``E(v)`` for a symplectic vector ``v = (a|b)``."""
    return Pauli.from_vector(v)


def conjugate_by_transvection_gate(p: Pauli, v: BitVector | int, sign: int = 1) -> Pauli:
    """``G_v p G_v^dagger`` for ``G_v = (I + sign * i E(v)) / sqrt(2)``."""
    bits = v.bits if isinstance(v, BitVector) else v
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not sip_bits(p.bits, bits, p.m):
        return p
    ev = Pauli.from_vector(bits, p.m)
    return pauli_mul(ev, p).times_i(1 if sign == 1 else 3)


def _index_bits(m: int, mask: int) -> int:
    """Computational-basis index of the bit mask (qubit 0 is the most significant)."""
    out = 0
    for q in range(m):
        if (mask >> q) & 1:
            out |= 1 << (m - 1 - q)
    return out


def pauli_from_dense(u: np.ndarray, atol: float = 1e-9) -> tuple[complex, Pauli]:
    """Split ``u = phase * E(v)`` into a unit phase and a Hermitian Pauli."""
    u = np.asarray(u, dtype=complex)
    N = u.shape[0]
    if u.ndim != 2 or u.shape != (N, N) or N & (N - 1):
        raise ValueError("expected a square matrix of power-of-two size")
    m = N.bit_length() - 1
    col0 = np.flatnonzero(np.abs(u[:, 0]) > atol)
    if len(col0) != 1:
        raise ValueError("not a scaled Pauli: column 0 does not have exactly one nonzero entry")
    row = int(col0[0])
    a = 0
    for q in range(m):
        if (row >> (m - 1 - q)) & 1:
            a |= 1 << q
    ref = u[row, 0]
    b = 0
    for q in range(m):
        j = _index_bits(m, 1 << q)
        val = u[_index_bits(m, a) ^ j, j]
        if abs(val + ref) < atol:
            b |= 1 << q
        elif abs(val - ref) >= atol:
            raise ValueError("not a scaled Pauli: inconsistent signs")
    p = Pauli.from_vector(a | (b << m), m)
    dense = p.dense(cap=m)
    phase = ref / dense[row, 0]
    if abs(abs(phase) - 1) > atol or not np.allclose(u, phase * dense, atol=atol):
        raise ValueError("not a scaled Pauli")
    return complex(phase), p


def all_paulis(m: int):
    """Every Hermitian Pauli ``E(v)`` on ``m`` qubits, in order of the packed vector."""
    for v in range(1 << (2 * m)):
        yield Pauli.from_vector(v, m)
