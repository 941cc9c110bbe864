"""Bit-packed linear algebra over GF(2).

Rows are stored as Python integers with bit ``j`` holding column ``j``; this is
the same layout as little-endian 64-bit word packing (least significant bit is
the lowest column index), which :meth:`BitMatrix.to_words` exposes directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

WORD_BITS = 64


def parity(x: int) -> int:
    return x.bit_count() & 1


def _mask(n: int) -> int:
    return (1 << n) - 1


def _iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _to_words(x: int, nbits: int) -> list[int]:
    nwords = max(1, -(-nbits // WORD_BITS))
    word_mask = _mask(WORD_BITS)
    return [(x >> (WORD_BITS * k)) & word_mask for k in range(nwords)]


def _bitstring(x: int, n: int) -> str:
    return "".join("1" if (x >> j) & 1 else "0" for j in range(n))


def _parse_bitstring(s: str) -> int:
    x = 0
    for j, ch in enumerate(s):
        if ch == "1":
            x |= 1 << j
        elif ch != "0":
            raise ValueError(f"invalid bit character {ch!r} in {s!r}")
    return x


@dataclass(frozen=True)
class BitVector:
    """A vector in GF(2)^len. Coordinate ``j`` lives in bit ``j`` of ``bits``."""

    len: int
    bits: int = 0

    def __post_init__(self):
        if self.len < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.len:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(n, 0)

    @classmethod
    def unit(cls, n: int, j: int) -> BitVector:
        if not 0 <= j < n:
            raise IndexError(j)
        return cls(n, 1 << j)

    @classmethod
    def from_str(cls, s: str) -> BitVector:
        """Parse ``"0110"``; the leftmost character is coordinate 0."""
        s = s.strip()
        return cls(len(s), _parse_bitstring(s))

    @classmethod
    def from_list(cls, values: Iterable[int]) -> BitVector:
        values = list(values)
        return cls(len(values), sum((int(v) & 1) << j for j, v in enumerate(values)))

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.len:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __add__(self, other: BitVector) -> BitVector:
        if self.len != other.len:
            raise ValueError(f"length mismatch: {self.len} vs {other.len}")
        return BitVector(self.len, self.bits ^ other.bits)

    __xor__ = __add__

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        return _bitstring(self.bits, self.len)

    def __repr__(self) -> str:
        return f"BitVector({str(self)!r})"

    def dot(self, other: BitVector) -> int:
        if self.len != other.len:
            raise ValueError(f"length mismatch: {self.len} vs {other.len}")
        return parity(self.bits & other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.len)]

    def to_words(self) -> list[int]:
        return _to_words(self.bits, self.len)


@dataclass(frozen=True)
class BitMatrix:
    """A dense GF(2) matrix with rows packed into integers.

    Instances are immutable; every operation returns a new matrix.
    """

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row has bits beyond the column count")

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> BitMatrix:
        ncols = nrows if ncols is None else ncols
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[int], ncols: int) -> BitMatrix:
        return cls(len(rows), ncols, tuple(int(r) for r in rows))

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            if not vectors:
                raise ValueError("cannot infer width of an empty vector list")
            ncols = vectors[0].len
        for v in vectors:
            if v.len != ncols:
                raise ValueError("vectors of unequal length")
        return cls(len(vectors), ncols, tuple(v.bits for v in vectors))

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> BitMatrix:
        lines = [ln.strip() for ln in lines]
        if not lines:
            return cls(0, 0, ())
        ncols = len(lines[0])
        if any(len(ln) != ncols for ln in lines):
            raise ValueError("rows of unequal length")
        return cls(len(lines), ncols, tuple(_parse_bitstring(ln) for ln in lines))

    @classmethod
    def from_array(cls, arr) -> BitMatrix:
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        nrows, ncols = arr.shape
        bits = (arr.astype(np.int64) & 1).astype(np.uint8)
        if ncols == 0:
            return cls(nrows, 0, (0,) * nrows)
        packed = np.packbits(bits, axis=1, bitorder="little")
        rows = tuple(int.from_bytes(packed[i].tobytes(), "little") for i in range(nrows))
        return cls(nrows, ncols, rows)

    def to_array(self) -> np.ndarray:
        if self.nrows == 0 or self.ncols == 0:
            return np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        nbytes = -(-self.ncols // 8)
        buf = b"".join(r.to_bytes(nbytes, "little") for r in self.rows)
        packed = np.frombuffer(buf, dtype=np.uint8).reshape(self.nrows, nbytes)
        return np.unpackbits(packed, axis=1, bitorder="little", count=self.ncols)

    # -- text format ------------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> BitMatrix:
        """Parse the ``rows cols`` header followed by one 0/1 line per row."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        header = lines[0].split()
        if len(header) != 2:
            raise ValueError(f"bad header line {lines[0]!r}; expected 'rows cols'")
        try:
            nrows, ncols = int(header[0]), int(header[1])
        except ValueError:
            raise ValueError(f"bad header line {lines[0]!r}; expected 'rows cols'") from None
        body = lines[1:]
        if len(body) != nrows:
            raise ValueError(f"header says {nrows} rows, found {len(body)}")
        for i, ln in enumerate(body):
            if len(ln) != ncols:
                raise ValueError(f"row {i + 1} has {len(ln)} columns, expected {ncols}")
        return cls(nrows, ncols, tuple(_parse_bitstring(ln) for ln in body))

    def to_text(self) -> str:
        out = [f"{self.nrows} {self.ncols}"]
        out += [_bitstring(r, self.ncols) for r in self.rows]
        return "\n".join(out) + "\n"

    # -- element access ---------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(idx)
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.ncols, r) for r in self.rows]

    def column(self, j: int) -> BitVector:
        return BitVector(self.nrows, sum(((r >> j) & 1) << i for i, r in enumerate(self.rows)))

    def to_words(self) -> list[list[int]]:
        return [_to_words(r, self.ncols) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(_bitstring(r, self.ncols) for r in self.rows)

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.ncols})"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return BitMatrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        return mat_mul(self, other)

    @property
    def T(self) -> BitMatrix:
        return transpose(self)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and self == self.T

    def is_alternating(self) -> bool:
        """Symmetric with an all-zero diagonal."""
        if not self.is_symmetric():
            return False
        return all(not (r >> i) & 1 for i, r in enumerate(self.rows))

    def is_upper_triangular(self) -> bool:
        return all(r & _mask(i) == 0 for i, r in enumerate(self.rows))

    def is_lower_triangular(self) -> bool:
        return all(r >> (i + 1) == 0 for i, r in enumerate(self.rows))

    def diagonal(self) -> list[int]:
        return [(self.rows[i] >> i) & 1 for i in range(min(self.nrows, self.ncols))]

    def rank(self) -> int:
        return rref_with_transform(self)[2]

    def submatrix(self, nrows: int, ncols: int) -> BitMatrix:
        """Upper-left ``nrows x ncols`` block."""
        mask = _mask(ncols)
        return BitMatrix(nrows, ncols, tuple(r & mask for r in self.rows[:nrows]))

    def vec_mul(self, x: int) -> int:
        """Row vector ``x`` (as packed bits) times this matrix."""
        acc = 0
        rows = self.rows
        for j in _iter_bits(x):
            acc ^= rows[j]
        return acc


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.ncols != b.nrows:
        raise ValueError(f"shape mismatch: {a.shape} @ {b.shape}")
    return BitMatrix(a.nrows, b.ncols, tuple(b.vec_mul(r) for r in a.rows))


def transpose(a: BitMatrix) -> BitMatrix:
    if a.nrows * a.ncols > 4096:
        return BitMatrix.from_array(a.to_array().T)
    cols = [0] * a.ncols
    for i, r in enumerate(a.rows):
        bit = 1 << i
        for j in _iter_bits(r):
            cols[j] |= bit
    return BitMatrix(a.ncols, a.nrows, tuple(cols))


def hstack(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.nrows != b.nrows:
        raise ValueError("row count mismatch")
    return BitMatrix(a.nrows, a.ncols + b.ncols, tuple(x | (y << a.ncols) for x, y in zip(a.rows, b.rows)))


def vstack(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.ncols != b.ncols:
        raise ValueError("column count mismatch")
    return BitMatrix(a.nrows + b.nrows, a.ncols, a.rows + b.rows)


def rref_with_transform(m: BitMatrix) -> tuple[BitMatrix, BitMatrix, int]:
    """Reduced row echelon form together with the row operations producing it.

    Returns ``(R, rref, rank)`` with ``R @ m == rref``. Pivots are chosen at
    the leftmost remaining nonzero column, taking the topmost available row,
    so the result is deterministic.
    """
    rows = list(m.rows)
    ops = [1 << i for i in range(m.nrows)]
    rank = 0
    for col in range(m.ncols):
        if rank == m.nrows:
            break
        bit = 1 << col
        pivot = next((i for i in range(rank, m.nrows) if rows[i] & bit), None)
        if pivot is None:
            continue
        if pivot != rank:
            rows[pivot], rows[rank] = rows[rank], rows[pivot]
            ops[pivot], ops[rank] = ops[rank], ops[pivot]
        prow, pops = rows[rank], ops[rank]
        for i in range(m.nrows):
            if i != rank and rows[i] & bit:
                rows[i] ^= prow
                ops[i] ^= pops
        rank += 1
    return (
        BitMatrix(m.nrows, m.nrows, tuple(ops)),
        BitMatrix(m.nrows, m.ncols, tuple(rows)),
        rank,
    )


def inverse(m: BitMatrix) -> BitMatrix:
    if m.nrows != m.ncols:
        raise ValueError(f"cannot invert a non-square {m.shape} matrix")
    R, _, rank = rref_with_transform(m)
    if rank != m.nrows:
        raise np.linalg.LinAlgError("singular matrix over GF(2)")
    return R


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis (as rows) of the left null space ``{x : x @ m == 0}``."""
    R, _, rank = rref_with_transform(m)
    return BitMatrix(m.nrows - rank, m.nrows, R.rows[rank:])


def row_basis(m: BitMatrix) -> BitMatrix:
    """Reduced echelon basis of the row space."""
    _, rref, rank = rref_with_transform(m)
    return BitMatrix(rank, m.ncols, rref.rows[:rank])


def row_space_contains(basis: BitMatrix, v: BitVector) -> bool:
    if v.len != basis.ncols:
        raise ValueError(f"width mismatch: {v.len} vs {basis.ncols}")
    _, rref, rank = rref_with_transform(basis)
    x = v.bits
    for r in rref.rows[:rank]:
        low = r & -r
        if x & low:
            x ^= r
    return x == 0
