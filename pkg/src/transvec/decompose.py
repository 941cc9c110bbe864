"""Minimal transvection decompositions of symplectic matrices.

A symplectic ``F`` with ``r = dim Res(F)`` is a product of ``r`` or ``r + 1``
transvections. Length ``r`` is possible exactly when the residue form of ``F``
can be triangularized by congruence; hyperbolic maps, and a few others such as
the fixed-point-free order-6 elements of Sp(4; 2), need the extra one. :func:`decompose_symplectic` finds such a basis by
triangularizing the residue form by congruence; :func:`decompose_peeling`
strips one transvection at a time and serves as an independent oracle.
"""

from __future__ import annotations

import json
import logging
import random
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .gf2 import BitMatrix, BitVector, parity, rref_with_transform
from .symplectic import (
    NotSymplecticError,
    SymplecticMatrix,
    apply_transvection,
    is_hyperbolic,
    is_symplectic,
    quadratic_form_matrix,
    reconstruct,
    residue_dim,
    residue_matrix,
)

log = logging.getLogger(__name__)


class DecompositionError(RuntimeError):
    pass


class TriangularizationError(RuntimeError):
    """No congruence triangularization found within the attempt budget."""


@dataclass(frozen=True)
class SymplecticDecomposition:
    """``F = T_{w_1} ... T_{w_r}`` followed by ``T_v`` when a hyperbolic fix is present."""

    m: int
    vectors: tuple[BitVector, ...]
    hyperbolic_fix: BitVector | None = None
    method: str = field(default="congruence", compare=False)

    @property
    def r(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors) + (self.hyperbolic_fix is not None)

    def transvections(self) -> list[BitVector]:
        """All vectors in product order, the hyperbolic fix last."""
        out = list(self.vectors)
        if self.hyperbolic_fix is not None:
            out.append(self.hyperbolic_fix)
        return out

    def product(self) -> SymplecticMatrix:
        F = reconstruct(BitMatrix(len(self.vectors), 2 * self.m, tuple(v.bits for v in self.vectors)))
        if self.hyperbolic_fix is not None:
            F = apply_transvection(F, self.hyperbolic_fix.bits)
        return F

    def to_dict(self, verified: bool | None = None) -> dict:
        d = {
            "m": self.m,
            "hyperbolic_fix": None if self.hyperbolic_fix is None else str(self.hyperbolic_fix),
            "vectors": [str(v) for v in self.vectors],
        }
        if verified is not None:
            d["verified"] = verified
        return d

    def to_json(self, verified: bool | None = None) -> str:
        return json.dumps(self.to_dict(verified))

    @classmethod
    def from_dict(cls, d: dict) -> SymplecticDecomposition:
        m = int(d["m"])
        vectors = tuple(BitVector.from_str(s) for s in d["vectors"])
        fix = d.get("hyperbolic_fix")
        fix = None if fix is None else BitVector.from_str(fix)
        for v in vectors + ((fix,) if fix is not None else ()):
            if v.len != 2 * m:
                raise ValueError(f"vector {v} does not have length 2m = {2 * m}")
        return cls(m, vectors, fix)


def _ensure_symplectic(F) -> SymplecticMatrix:
    if isinstance(F, BitMatrix):
        return SymplecticMatrix.from_matrix(F)
    if not is_symplectic(F.mat):
        raise NotSymplecticError("input is not symplectic")
    return F


def hyperbolic_fix(F: SymplecticMatrix) -> tuple[BitVector, SymplecticMatrix]:
    """Pick ``v`` in Res(F) so that ``F T_v`` is non-hyperbolic with the same residue space."""
    fhat = residue_matrix(F)
    v = next((r for r in fhat.rows if r), 0)
    if not v:
        raise ValueError("the identity has an empty residue space")
    if not fhat.is_alternating():
        raise ValueError("matrix is already non-hyperbolic")
    return BitVector(F.n, v), apply_transvection(F, v)


def quadratic_one(E: BitMatrix) -> BitVector:
    """A vector x with ``x E x^T = 1``."""
    n = E.nrows
    for i in range(n):
        if E[i, i]:
            return BitVector.unit(n, i)
    for i in range(n):
        for j in range(i + 1, n):
            if E[i, j] != E[j, i]:
                return BitVector(n, (1 << i) | (1 << j))
    raise ValueError("form is alternating; x E x^T vanishes identically")


def _form_value(y: int, yE: int) -> int:
    return parity(y & yE)


def _restrict(basis: list[tuple[int, int]], q: int, qE: int) -> list[tuple[int, int]]:
    """Basis of ``{y in span(basis) : q E y^T = 0}``, carrying ``y E`` along."""
    hit = [k for k, (y, _) in enumerate(basis) if parity(qE & y)]
    pivot = basis[hit[0]]
    out = []
    for k, (y, yE) in enumerate(basis):
        if k == hit[0]:
            continue
        if parity(qE & y):
            out.append((y ^ pivot[0], yE ^ pivot[1]))
        else:
            out.append((y, yE))
    return out


def _is_alternating_on(basis: list[tuple[int, int]]) -> bool:
    if any(_form_value(y, yE) for y, yE in basis):
        return False
    for i, (yi, yiE) in enumerate(basis):
        for yj, yjE in basis[i + 1 :]:
            if parity(yiE & yj) != parity(yjE & yi):
                return False
    return True


def _candidates(basis, rng: random.Random | None, limit: int):
    """Vectors ``y`` with ``y E y^T = 1`` drawn from the span of ``basis``."""
    if rng is None:
        for y, yE in basis:
            if _form_value(y, yE):
                yield y, yE
        for i, (yi, yiE) in enumerate(basis):
            for yj, yjE in basis[i + 1 :]:
                if parity(yiE & yj) != parity(yjE & yi):
                    y, yE = yi ^ yj, yiE ^ yjE
                    if _form_value(y, yE):
                        yield y, yE
        return
    tries = 0
    while tries < limit:
        tries += 1
        pick = rng.getrandbits(len(basis))
        y = yE = 0
        for k, (b, bE) in enumerate(basis):
            if (pick >> k) & 1:
                y ^= b
                yE ^= bE
        if y and _form_value(y, yE):
            yield y, yE


def _triangularize_once(E: BitMatrix, rng: random.Random | None) -> list[int] | None:
    r = E.nrows
    basis = [(1 << i, E.rows[i]) for i in range(r)]
    Q: list[int] = []
    while basis:
        chosen = None
        for q, qE in _candidates(basis, rng, limit=4 * len(basis) + 8):
            rest = _restrict(basis, q, qE)
            if not rest or not _is_alternating_on(rest):
                chosen = (q, rest)
                break
        if chosen is None:
            return None
        Q.append(chosen[0])
        basis = chosen[1]
    return Q


EXHAUSTIVE_MAX_RANK = 6


def _triangularize_exhaustive(basis: list[tuple[int, int]]) -> list[int] | None:
    """Depth-first search over every admissible next row; exact but exponential."""
    if not basis:
        return []
    k = len(basis)
    for pick in range(1, 1 << k):
        y = yE = 0
        for j, (b, bE) in enumerate(basis):
            if (pick >> j) & 1:
                y ^= b
                yE ^= bE
        if not _form_value(y, yE):
            continue
        rest = _restrict(basis, y, yE)
        if rest and _is_alternating_on(rest):
            continue
        tail = _triangularize_exhaustive(rest)
        if tail is not None:
            return [y] + tail
    return None


def congruence_triangularize(E: BitMatrix, seed=0, max_attempts: int | None = None) -> BitMatrix:
    """Invertible ``Q`` with ``Q E Q^T`` lower triangular (with unit diagonal).

    Rows are built greedily: each new row ``q`` satisfies ``q E q^T = 1`` and
    is chosen inside the subspace left-orthogonal (``q_i E y^T = 0``) to all
    earlier rows. The first attempt is deterministic. For small forms the
    search then becomes exhaustive; larger ones get randomized retries.
    Raises :class:`TriangularizationError` when no triangularization is found.
    """
    r = E.nrows
    if E.ncols != r:
        raise ValueError("E must be square")
    if r == 0:
        return BitMatrix(0, 0, ())
    Q = _triangularize_once(E, None)
    if Q is None and r <= EXHAUSTIVE_MAX_RANK:
        Q = _triangularize_exhaustive([(1 << i, E.rows[i]) for i in range(r)])
        if Q is None:
            raise TriangularizationError(f"the {r}x{r} form has no triangularization")
    if Q is None:
        budget = 64 * r if max_attempts is None else max_attempts
        rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        for _ in range(budget):
            Q = _triangularize_once(E, rng)
            if Q is not None:
                break
        else:
            raise TriangularizationError(f"no triangularization of a {r}x{r} form after {budget} attempts")
    return BitMatrix(r, r, tuple(Q))


def residue_form(F: SymplecticMatrix) -> tuple[BitMatrix, BitMatrix]:
    """Basis ``V`` of Res(F) (rows of the RREF of F-hat) and the r x r form ``E`` on it.

    ``E`` is the upper-left block of ``R F-hat R^T`` where ``R F-hat`` is the RREF.
    """
    fhat = residue_matrix(F)
    R, rref, r = rref_with_transform(fhat)
    V = rref.rows[:r]
    E = BitMatrix(r, r, tuple(sum(parity(v & R.rows[j]) << j for j in range(r)) for v in V))
    return BitMatrix(r, F.n, V), E


def _triangular_vectors(F: SymplecticMatrix, seed, max_attempts: int | None = None) -> list[int]:
    V, E = residue_form(F)
    Q = congruence_triangularize(E, seed, max_attempts)
    return [V.vec_mul(q) for q in Q.rows]


def has_short_decomposition(F: SymplecticMatrix, seed=0) -> bool:
    """True when ``F`` is a product of exactly dim Res(F) transvections.

    Decided by the triangularization search: success is a certificate, and
    exhausting the attempt budget is taken as a proof of absence.
    """
    if F.is_identity():
        return True
    if is_hyperbolic(F):
        return False
    try:
        _triangular_vectors(F, seed)
    except TriangularizationError:
        return False
    return True


def minimal_length(F, seed=0) -> int:
    """Length of a shortest transvection word for ``F``: dim Res(F), or one more."""
    F = _ensure_symplectic(F)
    return residue_dim(F) + (0 if has_short_decomposition(F, seed) else 1)


def _same_residue_candidates(F: SymplecticMatrix, rng: random.Random, limit: int):
    """Vectors ``v = x + xF`` with ``<x, xF> = 0``; then ``F T_v`` keeps Res(F)."""
    n = F.n
    M = quadratic_form_matrix(F)
    seen = set()

    def emit(x):
        v = x ^ F.mat.vec_mul(x)
        if v and v not in seen and not parity(x & M.vec_mul(x)):
            seen.add(v)
            return v
        return 0

    for i in range(n):
        v = emit(1 << i)
        if v:
            yield v
    for _ in range(limit):
        v = emit(rng.getrandbits(n))
        if v:
            yield v


def residue_fix(F, seed=0) -> tuple[BitVector, SymplecticMatrix]:
    """Pick ``v`` in Res(F) with ``F T_v`` of the same residue and short-decomposable.

    This is the extra transvection needed by every ``F`` that is not a
    product of dim Res(F) transvections; hyperbolic maps are one such family.
    """
    F = _ensure_symplectic(F)
    if F.is_identity():
        raise ValueError("the identity has an empty residue space")
    if not is_hyperbolic(F) and has_short_decomposition(F, seed):
        raise ValueError("matrix already has a decomposition of length dim Res(F)")
    if is_hyperbolic(F):
        v, G = hyperbolic_fix(F)
        if has_short_decomposition(G, seed):
            return v, G
    rng = random.Random(seed)
    for v in _same_residue_candidates(F, rng, limit=64 * F.n):
        G = apply_transvection(F, v)
        if has_short_decomposition(G, seed):
            return BitVector(F.n, v), G
    raise DecompositionError("no residue-preserving fix found")


def decompose_symplectic(F, seed=0) -> SymplecticDecomposition:
    """Minimal transvection decomposition via congruence triangularization.

    When no decomposition of length dim Res(F) exists (always the case for
    hyperbolic ``F``), one extra transvection ``T_v`` with ``v`` in Res(F)
    is split off first. The result is checked by reconstruction before it
    is returned.
    """
    F = _ensure_symplectic(F)
    m = F.m
    if F.is_identity():
        return SymplecticDecomposition(m, ())
    fix = None
    target = F
    if is_hyperbolic(F):
        fix, target = hyperbolic_fix(F)
    try:
        vecs = _triangular_vectors(target, seed)
    except TriangularizationError:
        fix, target = residue_fix(F, seed)
        vecs = _triangular_vectors(target, seed)
    d = SymplecticDecomposition(m, tuple(BitVector(2 * m, v) for v in vecs), fix)
    if not verify_decomposition(F, d, seed):
        raise DecompositionError("congruence result failed verification")
    return d


def _peel_step(F: SymplecticMatrix, seed) -> tuple[int, SymplecticMatrix]:
    """One step ``v = x + xF`` with ``<x, xF> = 1``, keeping ``F T_v`` short-decomposable."""
    M = quadratic_form_matrix(F)
    n = F.n

    def candidates():
        for i in range(n):
            if M[i, i]:
                yield 1 << i
        for i in range(n):
            for j in range(i + 1, n):
                x = (1 << i) | (1 << j)
                if parity(x & M.vec_mul(x)):
                    yield x
        rng = random.Random(seed)
        for _ in range(64 * n * n):
            x = rng.getrandbits(n)
            if parity(x & M.vec_mul(x)):
                yield x

    for x in candidates():
        v = x ^ F.mat.vec_mul(x)
        G = apply_transvection(F, v)
        if has_short_decomposition(G, seed):
            return v, G
    raise DecompositionError("no admissible peeling step found")


def decompose_peeling(F, seed=0) -> SymplecticDecomposition:
    """Decompose by repeatedly peeling one transvection off ``F``.

    Each step lowers the residue dimension by one, so the output is minimal;
    used as an oracle for :func:`decompose_symplectic`.
    """
    F = _ensure_symplectic(F)
    m = F.m
    fix = None
    cur = F
    if not F.is_identity() and not has_short_decomposition(F, seed):
        fix, cur = residue_fix(F, seed)
    peeled: list[int] = []
    while not cur.is_identity():
        v, cur = _peel_step(cur, seed)
        peeled.append(v)
    # cur = F' T_{p_1} ... T_{p_k} = I, so F' = T_{p_k} ... T_{p_1}
    vectors = tuple(BitVector(2 * m, v) for v in reversed(peeled))
    d = SymplecticDecomposition(m, vectors, fix, method="peeling")
    if d.product().mat != F.mat:
        raise DecompositionError("peeling result failed verification")
    return d


def verify_decomposition(F, d: SymplecticDecomposition, seed=0) -> bool:
    """Reconstruction matches ``F`` and the length is the minimum possible."""
    F = F if isinstance(F, SymplecticMatrix) else SymplecticMatrix.from_matrix(F, check=False)
    if d.m != F.m:
        return False
    if any(v.len != F.n or not v.bits for v in d.transvections()):
        return False
    if d.product().mat != F.mat:
        return False
    return len(d) == minimal_length(F, seed)


# -- brute-force minimality oracle -----------------------------------------------


@lru_cache(maxsize=None)
def _word_lengths(m: int) -> dict[tuple[int, ...], int]:
    n = 2 * m
    start = SymplecticMatrix.identity(m)
    dist = {start.rows: 0}
    queue = deque([start])
    while queue:
        F = queue.popleft()
        d = dist[F.rows]
        for v in range(1, 1 << n):
            G = apply_transvection(F, v)
            if G.rows not in dist:
                dist[G.rows] = d + 1
                queue.append(G)
    return dist


def enumerate_group(m: int) -> list[SymplecticMatrix]:
    """All elements of Sp(2m; 2) for m <= 2, by closure under transvections."""
    if m > 2:
        raise ValueError("enumeration is limited to m <= 2")
    return [SymplecticMatrix(m, BitMatrix(2 * m, 2 * m, rows)) for rows in _word_lengths(m)]


def brute_force_min_length(F: SymplecticMatrix) -> int:
    """Shortest transvection word for ``F`` by breadth-first search (m <= 2)."""
    if F.m > 2:
        raise ValueError("brute-force search is limited to m <= 2")
    return _word_lengths(F.m)[F.rows]
