"""The binary symplectic group Sp(2m; 2).

Vectors are laid out as ``(a | b)``: the X-part occupies coordinates
``0..m-1`` and the Z-part ``m..2m-1``. Matrices act on row vectors,
``x -> x @ F``, so ``F @ G`` means "apply F, then G".
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gf2 import (
    BitMatrix,
    BitVector,
    inverse,
    kernel_basis,
    parity,
    row_basis,
    transpose,
)


log = logging.getLogger(__name__)


def _half_swap(x: int, m: int) -> int:
    """``x @ Omega``: exchange the X and Z halves."""
    lo = (1 << m) - 1
    return (x >> m) | ((x & lo) << m)


def sip_bits(u: int, w: int, m: int) -> int:
    return parity(u & _half_swap(w, m))


def omega(m: int) -> BitMatrix:
    return BitMatrix(2 * m, 2 * m, tuple(_half_swap(1 << i, m) for i in range(2 * m)))


def omega_times(mat: BitMatrix) -> BitMatrix:
    """``Omega @ mat``: exchange the top and bottom halves of the rows."""
    m = mat.nrows // 2
    return BitMatrix(mat.nrows, mat.ncols, mat.rows[m:] + mat.rows[:m])


def _check_even(n: int) -> int:
    if n % 2:
        raise ValueError(f"symplectic vectors need even length, got {n}")
    return n // 2


def sip(u: BitVector, w: BitVector) -> int:
    """Symplectic inner product ``u Omega w^T``."""
    if u.len != w.len:
        raise ValueError(f"length mismatch: {u.len} vs {w.len}")
    m = _check_even(u.len)
    return sip_bits(u.bits, w.bits, m)


def is_symplectic(mat: BitMatrix) -> bool:
    if mat.nrows != mat.ncols or mat.nrows % 2:
        return False
    m = mat.nrows // 2
    rows = mat.rows
    for i in range(2 * m):
        partner = (i + m) % (2 * m)
        for j in range(i + 1, 2 * m):
            if sip_bits(rows[i], rows[j], m) != (j == partner):
                return False
    return True


class NotSymplecticError(ValueError):
    pass


@dataclass(frozen=True)
class SymplecticMatrix:
    """An element of Sp(2m; 2) acting on row vectors."""

    m: int
    mat: BitMatrix

    def __post_init__(self):
        if self.mat.shape != (2 * self.m, 2 * self.m):
            raise ValueError(f"expected a {2 * self.m}x{2 * self.m} matrix, got {self.mat.shape}")

    @classmethod
    def from_matrix(cls, mat: BitMatrix, check: bool = True) -> SymplecticMatrix:
        if mat.nrows != mat.ncols or mat.nrows % 2:
            raise NotSymplecticError("input is not symplectic")
        if check and not is_symplectic(mat):
            raise NotSymplecticError("input is not symplectic")
        return cls(mat.nrows // 2, mat)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> SymplecticMatrix:
        return cls.from_matrix(BitMatrix.from_strings(lines))

    @classmethod
    def identity(cls, m: int) -> SymplecticMatrix:
        return cls(m, BitMatrix.identity(2 * m))

    @property
    def n(self) -> int:
        return 2 * self.m

    @property
    def rows(self) -> tuple[int, ...]:
        return self.mat.rows

    def __matmul__(self, other: SymplecticMatrix) -> SymplecticMatrix:
        if self.m != other.m:
            raise ValueError("qubit count mismatch")
        return SymplecticMatrix(self.m, self.mat @ other.mat)

    def act(self, x: BitVector) -> BitVector:
        """Image ``x @ F``."""
        return BitVector(self.n, self.mat.vec_mul(x.bits))

    def inverse(self) -> SymplecticMatrix:
        # F^{-1} = Omega F^T Omega
        m = self.m
        rows = omega_times(transpose(self.mat)).rows
        return SymplecticMatrix(m, BitMatrix(2 * m, 2 * m, tuple(_half_swap(r, m) for r in rows)))

    def is_identity(self) -> bool:
        return all(r == 1 << i for i, r in enumerate(self.rows))

    def __str__(self) -> str:
        return str(self.mat)


def transvection_bits(v: int, m: int) -> tuple[int, ...]:
    """Rows of T_v: ``e_i -> e_i + <e_i, v> v``."""
    vo = _half_swap(v, m)
    return tuple((1 << i) ^ (v if (vo >> i) & 1 else 0) for i in range(2 * m))


def transvection_matrix(v: BitVector) -> SymplecticMatrix:
    m = _check_even(v.len)
    if not v.bits:
        raise ValueError("a transvection needs a nonzero vector")
    return SymplecticMatrix(m, BitMatrix(2 * m, 2 * m, transvection_bits(v.bits, m)))


def apply_transvection(F: SymplecticMatrix, v: int) -> SymplecticMatrix:
    """``F @ T_v`` in O(m) row updates."""
    m = F.m
    vo = _half_swap(v, m)
    rows = tuple(r ^ v if parity(r & vo) else r for r in F.rows)
    return SymplecticMatrix(m, BitMatrix(2 * m, 2 * m, rows))


def transvection_product(vectors: Sequence[BitVector], m: int) -> SymplecticMatrix:
    """Left-to-right product ``T_{v_1} ... T_{v_r}``."""
    F = SymplecticMatrix.identity(m)
    for v in vectors:
        if v.len != 2 * m:
            raise ValueError("vector length does not match 2m")
        F = apply_transvection(F, v.bits)
    return F


def _i_plus(F: SymplecticMatrix) -> BitMatrix:
    return F.mat + BitMatrix.identity(F.n)


def fix_space(F: SymplecticMatrix) -> BitMatrix:
    """Basis of ``{x : x F = x}``."""
    return kernel_basis(_i_plus(F))


def res_space(F: SymplecticMatrix) -> BitMatrix:
    """Basis of the row space of ``I + F``."""
    return row_basis(_i_plus(F))


def residue_matrix(F: SymplecticMatrix) -> BitMatrix:
    """``Omega (I + F)``; its row space is Res(F)."""
    return omega_times(_i_plus(F))


def residue_dim(F: SymplecticMatrix) -> int:
    return _i_plus(F).rank()


def is_involution(F: SymplecticMatrix) -> bool:
    return (F @ F).is_identity()


def is_hyperbolic(F: SymplecticMatrix) -> bool:
    fhat = residue_matrix(F)
    if not any(fhat.diagonal()) and not fhat.is_symmetric():
        # the diagonal alone does not decide hyperbolicity here
        log.debug("residue matrix has zero diagonal but is not symmetric:\n%s", fhat)
    return fhat.is_alternating()


def _quadratic_vanishes(F: SymplecticMatrix) -> bool:
    """Direct check that ``<x, xF> = 0`` on every basis vector and pair."""
    m, rows = F.m, F.rows
    n = F.n
    for i in range(n):
        if sip_bits(1 << i, rows[i], m):
            return False
    for i in range(n):
        for j in range(i + 1, n):
            x = (1 << i) | (1 << j)
            if sip_bits(x, rows[i] ^ rows[j], m):
                return False
    return True


def quadratic_form_matrix(F: SymplecticMatrix) -> BitMatrix:
    """Matrix ``M`` with ``x M x^T = <x, x F>`` for every x.

    This is ``Omega (I + F^T)``, the residue matrix of the transpose.
    """
    return omega_times(transpose(F.mat) + BitMatrix.identity(F.n))


# -- Gram and path matrices -------------------------------------------------


@dataclass(frozen=True)
class GramData:
    """Gram matrix ``A = V Omega V^T`` of a transvection list and its path counts.

    ``B`` holds exact directed-path counts in the graph with adjacency matrix
    ``A_u`` (strict upper part of ``A``); ``B_mod2`` is its GF(2) reduction,
    equal to ``(I + A_u)^{-1}``.
    """

    V: BitMatrix
    A: BitMatrix
    A_u: BitMatrix
    B: np.ndarray
    B_mod2: BitMatrix

    @property
    def r(self) -> int:
        return self.V.nrows

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.r) for j in range(i + 1, self.r) if self.A[i, j]]


def gram_matrix(V: BitMatrix) -> BitMatrix:
    m = _check_even(V.ncols)
    rows = V.rows
    swapped = [_half_swap(v, m) for v in rows]
    return BitMatrix(
        V.nrows, V.nrows, tuple(sum(parity(rows[i] & w) << j for j, w in enumerate(swapped)) for i in range(V.nrows))
    )


def strict_upper(A: BitMatrix) -> BitMatrix:
    return BitMatrix(A.nrows, A.ncols, tuple(r >> (i + 1) << (i + 1) for i, r in enumerate(A.rows)))


def path_counts(A_u: BitMatrix) -> np.ndarray:
    """Integer matrix ``sum_l A_u^l``; entry (i, j) counts directed paths i -> j."""
    r = A_u.nrows
    adj = A_u.to_array().astype(object)
    B = np.zeros((r, r), dtype=object)
    for i in range(r):
        B[i, i] = 1
    for j in range(r):
        # every path into j ends with an edge k -> j, k < j
        for k in range(j):
            if adj[k, j]:
                B[:, j] += B[:, k]
    return B


def path_matrix_mod2(A_u: BitMatrix) -> BitMatrix:
    return inverse(A_u + BitMatrix.identity(A_u.nrows))


def gram_data(V: BitMatrix) -> GramData:
    if any(r == 0 for r in V.rows):
        raise ValueError("transvection vectors must be nonzero")
    A = gram_matrix(V)
    A_u = strict_upper(A)
    return GramData(V=V, A=A, A_u=A_u, B=path_counts(A_u), B_mod2=path_matrix_mod2(A_u))


def reconstruct(V: BitMatrix) -> SymplecticMatrix:
    """``I + Omega V^T B V``, the product ``T_{v_1} ... T_{v_r}``."""
    m = _check_even(V.ncols)
    if V.nrows == 0:
        return SymplecticMatrix.identity(m)
    if any(r == 0 for r in V.rows):
        raise ValueError("transvection vectors must be nonzero")
    B = path_matrix_mod2(strict_upper(gram_matrix(V)))
    fhat = transpose(V) @ (B @ V)
    return SymplecticMatrix(m, omega_times(fhat) + BitMatrix.identity(2 * m))


# -- generators ------------------------------------------------------------


def _blocks(m: int, tl: BitMatrix, tr: BitMatrix, bl: BitMatrix, br: BitMatrix) -> BitMatrix:
    top = tuple(a | (b << m) for a, b in zip(tl.rows, tr.rows))
    bottom = tuple(a | (b << m) for a, b in zip(bl.rows, br.rows))
    return BitMatrix(2 * m, 2 * m, top + bottom)


def gen_FD(P: BitMatrix) -> SymplecticMatrix:
    """``diag(P, P^{-T})`` for invertible P."""
    if P.nrows != P.ncols:
        raise ValueError("P must be square")
    m = P.nrows
    Pit = transpose(inverse(P))
    z = BitMatrix.zeros(m)
    return SymplecticMatrix(m, _blocks(m, P, z, z, Pit))


def gen_FU(S: BitMatrix) -> SymplecticMatrix:
    """``[[I, S], [0, I]]`` for symmetric S."""
    if not S.is_symmetric():
        raise ValueError("S must be symmetric")
    m = S.nrows
    eye, z = BitMatrix.identity(m), BitMatrix.zeros(m)
    return SymplecticMatrix(m, _blocks(m, eye, S, z, eye))


def gen_FOmega(r: int, m: int | None = None) -> SymplecticMatrix:
    """Partial Hadamard image: swap X and Z on the first ``r`` of ``m`` qubits."""
    m = r if m is None else m
    if not 0 <= r <= m:
        raise ValueError(f"need 0 <= r <= m, got r={r}, m={m}")
    ir = BitMatrix(m, m, tuple(1 << i if i < r else 0 for i in range(m)))
    imr = BitMatrix(m, m, tuple(1 << i if i >= r else 0 for i in range(m)))
    return SymplecticMatrix(m, _blocks(m, imr, ir, ir, imr))


# -- random test matrices ----------------------------------------------------

KINDS = ("generic", "involution", "hyperbolic")


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _random_nonzero(rng: random.Random, nbits: int) -> int:
    while True:
        x = rng.getrandbits(nbits)
        if x:
            return x


def random_isotropic(m: int, k: int, seed=0) -> list[int]:
    """``k`` independent, pairwise orthogonal vectors (packed bits)."""
    rng = _rng(seed)
    if not 0 <= k <= m:
        raise ValueError("isotropic dimension must lie in [0, m]")
    chosen: list[int] = []
    span = BitMatrix(0, 2 * m, ())
    while len(chosen) < k:
        if chosen:
            # x Omega C^T = 0  <=>  x in the orthogonal complement
            C = BitMatrix(len(chosen), 2 * m, tuple(_half_swap(c, m) for c in chosen))
            perp = kernel_basis(transpose(C))
            x = perp.vec_mul(rng.getrandbits(perp.nrows))
        else:
            x = _random_nonzero(rng, 2 * m)
        candidate = BitMatrix(span.nrows + 1, 2 * m, span.rows + (x,))
        if x and candidate.rank() == len(chosen) + 1:
            chosen.append(x)
            span = candidate
    return chosen


def random_symplectic(m: int, seed=0, kind: str = "generic") -> SymplecticMatrix:
    """A seeded random symplectic matrix. Not uniform over the group.

    ``generic`` multiplies 2m+4 random transvections; ``involution`` multiplies
    transvections along a random isotropic set; ``hyperbolic`` additionally
    appends the sum of that set, which makes ``<x, xF>`` vanish identically.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    rng = _rng(seed)
    n = 2 * m
    if kind == "generic":
        F = SymplecticMatrix.identity(m)
        for _ in range(n + 4):
            F = apply_transvection(F, _random_nonzero(rng, n))
        return F
    if kind == "involution":
        k = rng.randint(1, m)
        vecs = random_isotropic(m, k, rng)
        return reconstruct(BitMatrix(k, n, tuple(vecs)))
    for _ in range(1000):
        if m == 1:
            return SymplecticMatrix.identity(1)
        k = rng.randint(2, m)
        vecs = random_isotropic(m, k, rng)
        total = 0
        for v in vecs:
            total ^= v
        F = reconstruct(BitMatrix(k + 1, n, tuple(vecs) + (total,)))
        if is_hyperbolic(F):
            return F
    raise RuntimeError("failed to sample a hyperbolic matrix")  # pragma: no cover


# -- graph export ---------------------------------------------------------------


def export_dot(g: GramData, name: str = "G", labels: bool = True) -> str:
    """Graphviz digraph with an edge ``v_i -> v_j`` whenever ``A[i, j] = 1`` and i < j."""
    lines = [f"digraph {name} {{"]
    for i, v in enumerate(g.V.vectors()):
        if labels:
            lines.append(f'  v{i + 1} [label="v{i + 1}\\n{v}"];')
        else:
            lines.append(f"  v{i + 1};")
    for i, j in g.edges():
        lines.append(f"  v{i + 1} -> v{j + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
