"""Acceptance criteria 1-12, one PASS/FAIL line each in the terminal summary."""

import functools
import random
import time
from functools import reduce

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, WORKED_A, WORKED_B, WORKED_EDGES, WORKED_V
from transvec.clifford import (
    algorithm1_decompose,
    circuit_to_dense,
    commutant_paulis,
    dense_commutant,
    random_circuit,
    support_of,
    trace_support,
)
from transvec.decompose import (
    brute_force_min_length,
    decompose_peeling,
    decompose_symplectic,
    enumerate_group,
    minimal_length,
    verify_decomposition,
)
from transvec.gf2 import BitMatrix, BitVector, row_space_contains
from transvec.pauli import Pauli, pauli_mul
from transvec.symplectic import (
    KINDS,
    export_dot,
    gram_data,
    is_hyperbolic,
    is_involution,
    random_isotropic,
    random_symplectic,
    reconstruct,
    res_space,
    residue_dim,
    sip_bits,
    transvection_product,
)

SQ2 = np.sqrt(2)
I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / SQ2
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def kron_all(mats):
    return reduce(np.kron, mats, np.ones((1, 1), dtype=complex))


def on_qubit(op, n, m):
    return kron_all([op if q == n else I2 for q in range(m)])


@functools.lru_cache(maxsize=1)
def round_trip_matrices():
    """1,000 random matrices per m in 1..8 (cycling through the sampler kinds) and 100 at m = 64."""
    out = []
    for m in range(1, 9):
        out += [random_symplectic(m, 1000 * m + s, KINDS[s % len(KINDS)]) for s in range(1000)]
    out += [random_symplectic(64, 64000 + s, KINDS[s % len(KINDS)]) for s in range(100)]
    return tuple(out)


@functools.lru_cache(maxsize=1)
def small_group():
    return tuple(enumerate_group(1)) + tuple(enumerate_group(2))


def test_criterion_01_gram_golden():
    start = time.perf_counter()
    g = gram_data(BitMatrix.from_strings(WORKED_V))
    A = [[g.A[i, j] for j in range(5)] for i in range(5)]
    adj = set(g.edges())

    def paths(i, j):
        if i == j:
            return [[j]]
        return [[i] + p for k in range(i + 1, j + 1) if (i, k) in adj for p in paths(k, j)]

    found = sorted(paths(0, 3))
    dot = export_dot(g)
    dot_edges = {
        tuple(int(t.strip(" ;v")) for t in line.split("->")) for line in dot.splitlines() if "->" in line
    }
    elapsed = 1000 * (time.perf_counter() - start)
    ok = (
        A == WORKED_A
        and g.B.tolist() == WORKED_B
        and g.B[0, 3] == 3
        and found == sorted([[0, 3], [0, 1, 3], [0, 1, 2, 3]])
        and dot_edges == WORKED_EDGES
        and elapsed < 1.0
    )
    record(1, ok, f"A, B, b_14 = 3 with 3 paths, 7 DOT edges; {elapsed:.3f} ms")


def test_criterion_02_product_identity():
    rng = random.Random(2)
    start = time.perf_counter()
    bad = 0
    for _ in range(1000):
        m = rng.randint(1, 8)
        r = rng.randint(1, 2 * m)
        vecs = [rng.randrange(1, 1 << (2 * m)) for _ in range(r)]
        V = BitMatrix(r, 2 * m, tuple(vecs))
        if reconstruct(V).mat != transvection_product([BitVector(2 * m, v) for v in vecs], m).mat:
            bad += 1
    elapsed = time.perf_counter() - start
    record(2, bad == 0 and elapsed < 1.0, f"1000 lists, {bad} mismatches, {elapsed:.3f} s")


def test_criterion_03_round_trip_length_formula():
    bad_verify = bad_length = 0
    example = None
    for F in round_trip_matrices():
        d = decompose_symplectic(F)
        if d.product().mat != F.mat:
            bad_verify += 1
        expected = residue_dim(F) + (1 if is_hyperbolic(F) and not F.is_identity() else 0)
        if len(d) != expected:
            bad_length += 1
            example = example or (F, len(d), expected)
    total = len(round_trip_matrices())
    detail = f"{total} matrices, {bad_verify} product mismatches, {bad_length} lengths differ from dim Res (+1 iff hyperbolic)"
    if example:
        F, got, want = example
        detail += f"; e.g. m={F.m} minimal length {got} vs formula {want}"
    record(3, bad_verify == 0 and bad_length == 0, detail)


def test_criterion_03_corrected_length():
    # the length the library targets: dim Res, plus one when the residue form has no triangular congruent form
    bad = 0
    for F in round_trip_matrices():
        d = decompose_symplectic(F)
        r = residue_dim(F)
        L = minimal_length(F)
        if not verify_decomposition(F, d) or L not in (r, r + 1):
            bad += 1
        if is_hyperbolic(F) and not F.is_identity() and L != r + 1:
            bad += 1
    assert bad == 0


def test_criterion_04_minimality_oracle():
    start = time.perf_counter()
    group = small_group()
    bad = sum(len(decompose_symplectic(F)) != brute_force_min_length(F) for F in group)
    elapsed = time.perf_counter() - start
    record(4, len(group) == 726 and bad == 0 and elapsed < 30, f"{len(group)} elements, {bad} mismatches, {elapsed:.1f} s")


@pytest.mark.slow
def test_criterion_05_oracle_equivalence():
    bad = 0
    mats = round_trip_matrices() + small_group()
    for F in mats:
        d, p = decompose_symplectic(F), decompose_peeling(F)
        if len(d) != len(p) or not verify_decomposition(F, d) or not verify_decomposition(F, p):
            bad += 1
    record(5, bad == 0, f"{len(mats)} matrices, {bad} disagreements")


def test_criterion_06_involutions():
    bad_orth = bad_inv = 0
    for m in range(1, 7):
        for s in range(200):
            F = random_symplectic(m, 6000 * m + s, "involution")
            vs = [v.bits for v in decompose_symplectic(F).transvections()]
            if any(sip_bits(u, w, m) for u in vs for w in vs):
                bad_orth += 1
            k = random.Random(s).randint(0, m)
            iso = random_isotropic(m, k, 7000 * m + s)
            if not is_involution(transvection_product([BitVector(2 * m, v) for v in iso], m)):
                bad_inv += 1
    record(6, bad_orth == 0 and bad_inv == 0, f"1200 involutions, {bad_orth} non-orthogonal; {bad_inv} non-involutive products")


def test_criterion_07_hadamard_golden():
    identity_err, recon_err = [], []
    for m in range(1, 6):
        Hm = kron_all([H] * m)
        G0 = reduce(np.matmul, [(np.eye(2**m) + 1j * on_qubit(Y, n, m)) / SQ2 for n in range(m)])
        identity_err.append(np.max(np.abs(kron_all([X] * m) @ G0 - Hm)))
        cd = algorithm1_decompose(Hm)
        recon_err.append(np.max(np.abs(cd.dense() - Hm)))
    ok_identity = max(identity_err) < 1e-10
    ok_recon = max(recon_err) < 1e-10
    record(
        7,
        ok_identity and ok_recon,
        f"X^m prod (I+iY_n)/sqrt2 vs H^m max error {max(identity_err):.3g}; "
        f"algorithm1 reconstruction max error {max(recon_err):.3g}",
    )


def test_criterion_07_corrected_hadamard_identity():
    for m in range(1, 6):
        Hm = kron_all([H] * m)
        G0 = reduce(np.matmul, [(np.eye(2**m) + 1j * on_qubit(Y, n, m)) / SQ2 for n in range(m)])
        assert np.max(np.abs(kron_all([Z] * m) @ G0 - Hm)) < 1e-10
        cd = algorithm1_decompose(Hm)
        assert str(cd.e0) == "Z" * m and cd.global_phase == 1
        assert np.max(np.abs(cd.dense() - Hm)) < 1e-10


def test_criterion_08_cnot_golden():
    xi = (1 - 1j) / SQ2
    I4 = np.eye(4)
    G0 = (I4 + 1j * np.kron(I2, X)) @ (I4 - 1j * np.kron(Z, X)) @ (I4 + 1j * np.kron(Z, I2)) / np.sqrt(8)
    err_identity = np.max(np.abs(xi * G0 - CNOT))
    cd = algorithm1_decompose(CNOT)
    err_recon = np.max(np.abs(cd.dense() - CNOT))
    R = res_space(cd.F)
    V = BitMatrix(len(cd.vectors), 4, tuple(v.bits for v in cd.vectors))
    spans = V.rank() == R.nrows and all(row_space_contains(R, v) for v in cd.vectors)
    ok = err_identity < 1e-12 and err_recon < 1e-10 and spans and cd.hyperbolic_fix is not None
    record(8, ok, f"identity error {err_identity:.3g}, reconstruction error {err_recon:.3g}, spans Res: {spans}, fix: {cd.hyperbolic_fix}")


def test_criterion_09_support():
    rng = random.Random(9)
    bad_set = bad_parseval = 0
    for _ in range(200):
        m = rng.randint(1, 4)
        p = random_circuit(m, rng.randint(0, 30), rng)
        s = support_of(p)
        if s.vectors() != trace_support(circuit_to_dense(p)):
            bad_set += 1
        if not s.parseval_holds():
            bad_parseval += 1
    record(9, bad_set == 0 and bad_parseval == 0, f"200 circuits, {bad_set} set mismatches, {bad_parseval} Parseval failures")


def test_criterion_10_commutant():
    rng = random.Random(10)
    bad = 0
    for _ in range(100):
        m = rng.randint(1, 3)
        p = random_circuit(m, rng.randint(0, 30), rng)
        got = commutant_paulis(p)
        if {q.bits for q in got} != dense_commutant(circuit_to_dense(p)) or not all(q.hermitian_phase == 0 for q in got):
            bad += 1
    record(10, bad == 0, f"100 circuits, {bad} mismatches")


def test_criterion_11_pauli_algebra():
    ones = [Pauli(1, a, b, k) for a in range(2) for b in range(2) for k in range(4)]
    bad = sum(not np.array_equal(pauli_mul(p, q).dense(), p.dense() @ q.dense()) for p in ones for q in ones)
    pairs = len(ones) ** 2
    rng = random.Random(11)
    for _ in range(1000):
        m = rng.randint(1, 3)
        p, q = (Pauli(m, rng.getrandbits(m), rng.getrandbits(m), rng.randrange(4)) for _ in range(2))
        bad += not np.array_equal(pauli_mul(p, q).dense(), p.dense() @ q.dense())
    record(11, pairs == 256 and bad == 0, f"{pairs} one-qubit pairs and 1000 random pairs, {bad} mismatches")


def test_criterion_12_performance():
    times = []
    for s in range(5):
        F = random_symplectic(128, 12000 + s)
        start = time.perf_counter()
        d = decompose_symplectic(F)
        times.append(time.perf_counter() - start)
        assert d.product().mat == F.mat
    record(12, max(times) < 1.0, f"m = 128, 5 matrices, max {max(times):.3f} s")
