import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CNOT_F_FIXED, DEFECTIVE_F, WORKED_V
from transvec.decompose import (
    SymplecticDecomposition,
    TriangularizationError,
    brute_force_min_length,
    congruence_triangularize,
    decompose_peeling,
    decompose_symplectic,
    enumerate_group,
    has_short_decomposition,
    hyperbolic_fix,
    minimal_length,
    quadratic_one,
    residue_fix,
    residue_form,
    verify_decomposition,
)
from transvec.gf2 import BitMatrix, BitVector, inverse, row_space_contains
from transvec.symplectic import (
    KINDS,
    SymplecticMatrix,
    gen_FU,
    gram_data,
    is_hyperbolic,
    is_involution,
    omega,
    random_symplectic,
    reconstruct,
    res_space,
    residue_dim,
    residue_matrix,
    sip_bits,
    transvection_matrix,
    transvection_product,
)


def bits(strings):
    return [BitVector.from_str(s) for s in strings]


@st.composite
def symplectics(draw, max_m=5):
    m = draw(st.integers(1, max_m))
    return random_symplectic(m, draw(st.integers(0, 2**32)), draw(st.sampled_from(KINDS)))


class TestHyperbolicFix:
    def test_cnot(self, cnot_F):
        v, G = hyperbolic_fix(cnot_F)
        assert str(v) == "0010"
        assert G.mat == BitMatrix.from_strings(CNOT_F_FIXED)
        assert not is_hyperbolic(G)

    def test_non_hyperbolic_rejected(self):
        with pytest.raises(ValueError):
            hyperbolic_fix(SymplecticMatrix(1, omega(1)))

    def test_identity_rejected(self):
        with pytest.raises(ValueError):
            hyperbolic_fix(SymplecticMatrix.identity(2))

    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_keeps_residue(self, m):
        for seed in range(10):
            F = random_symplectic(m, seed, "hyperbolic")
            if F.is_identity():
                continue
            v, G = hyperbolic_fix(F)
            assert row_space_contains(res_space(F), v)
            assert not is_hyperbolic(G)
            R, RG = res_space(F), res_space(G)
            assert R.nrows == RG.nrows and all(row_space_contains(R, x) for x in RG.vectors())


class TestQuadraticOne:
    def test_one(self):
        assert quadratic_one(BitMatrix.from_strings(["1"])) == BitVector.from_str("1")

    def test_asymmetric(self):
        assert quadratic_one(BitMatrix.from_strings(["01", "00"])) == BitVector.from_str("11")

    def test_alternating(self):
        with pytest.raises(ValueError):
            quadratic_one(BitMatrix.from_strings(["01", "10"]))


class TestTriangularize:
    def test_one(self):
        assert congruence_triangularize(BitMatrix.from_strings(["1"])) == BitMatrix.from_strings(["1"])

    @pytest.mark.parametrize("seed", range(5))
    def test_symmetric_goes_to_identity(self, seed):
        rng = random.Random(seed)
        n = 6
        while True:
            rows = [0] * n
            for i in range(n):
                for j in range(i, n):
                    if rng.getrandbits(1):
                        rows[i] |= 1 << j
                        rows[j] |= 1 << i
            E = BitMatrix(n, n, tuple(rows))
            if E.rank() == n and any(E.diagonal()):
                break
        Q = congruence_triangularize(E, seed)
        assert Q @ E @ Q.T == BitMatrix.identity(n)

    def test_cnot_block(self):
        F = SymplecticMatrix.from_strings(CNOT_F_FIXED)
        V, E = residue_form(F)
        Q = congruence_triangularize(E)
        L = Q @ E @ Q.T
        assert L.is_lower_triangular() and L.diagonal() == [1, 1]
        assert [str(v) for v in (Q @ V).vectors()] == ["0100", "0110"]
        # the row operations shown for this example give the same two vectors
        P = BitMatrix.from_strings(["0110", "0010", "1010", "0001"])
        assert [str(v) for v in (P @ residue_matrix(F)).vectors()[:2]] == ["0100", "0110"]

    def test_no_triangularization(self):
        E = BitMatrix.from_strings(["010", "100", "101"])
        assert E.rank() == 3 and not E.is_alternating()
        with pytest.raises(TriangularizationError):
            congruence_triangularize(E)

    def test_not_square(self):
        with pytest.raises(ValueError):
            congruence_triangularize(BitMatrix.zeros(2, 3))

    def test_exhaustive_small_forms(self):
        # every invertible non-alternating 3x3 form: success iff a triangular congruent form exists
        gl3 = [BitMatrix(3, 3, rows) for rows in itertools.product(range(1, 8), repeat=3)]
        gl3 = [Q for Q in gl3 if Q.rank() == 3]
        for rows in itertools.product(range(8), repeat=3):
            E = BitMatrix(3, 3, rows)
            if E.rank() < 3 or E.is_alternating():
                continue
            exists = any((Q @ E @ Q.T).is_lower_triangular() for Q in gl3)
            try:
                Q = congruence_triangularize(E)
                found = True
                assert (Q @ E @ Q.T).is_lower_triangular() and Q.rank() == 3
            except TriangularizationError:
                found = False
            assert found == exists


class TestDecomposeSymplectic:
    def test_identity(self):
        d = decompose_symplectic(SymplecticMatrix.identity(3))
        assert len(d) == 0 and d.hyperbolic_fix is None

    def test_cnot(self, cnot_F):
        d = decompose_symplectic(cnot_F)
        assert str(d.hyperbolic_fix) == "0010"
        assert [str(v) for v in d.vectors] == ["0100", "0110"]
        assert verify_decomposition(cnot_F, d)

    def test_cnot_worked_triple(self, cnot_F):
        d = SymplecticDecomposition(2, tuple(bits(["0100", "0110"])), BitVector.from_str("0010"))
        assert verify_decomposition(cnot_F, d)
        v1, v2 = d.vectors
        assert v1 + v2 == d.hyperbolic_fix and sip_bits(v1.bits, v2.bits, 2) == 0

    @pytest.mark.parametrize("m", [1, 2, 3, 6])
    def test_omega(self, m):
        d = decompose_symplectic(SymplecticMatrix(m, omega(m)))
        assert d.hyperbolic_fix is None and d.r == m
        expected = {(1 << q) | (1 << (m + q)) for q in range(m)}
        assert {v.bits for v in d.vectors} == expected

    def test_fu_one(self):
        d = decompose_symplectic(gen_FU(BitMatrix.identity(1)))
        assert [str(v) for v in d.vectors] == ["01"] and d.hyperbolic_fix is None

    def test_rejects_non_symplectic(self):
        with pytest.raises(ValueError, match="not symplectic"):
            decompose_symplectic(BitMatrix.from_strings(["11", "11"]))

    def test_defective_example(self):
        F = SymplecticMatrix.from_strings(DEFECTIVE_F)
        assert residue_dim(F) == 3 and not is_hyperbolic(F)
        assert brute_force_min_length(F) == 4
        assert not has_short_decomposition(F)
        d = decompose_symplectic(F)
        assert len(d) == 4 and verify_decomposition(F, d)
        assert row_space_contains(res_space(F), d.hyperbolic_fix)

    @settings(max_examples=150, deadline=None)
    @given(symplectics(max_m=6))
    def test_contract(self, F):
        d = decompose_symplectic(F)
        assert verify_decomposition(F, d)
        assert len(d) == minimal_length(F)
        R = res_space(F)
        V = BitMatrix(d.r, F.n, tuple(v.bits for v in d.vectors))
        assert d.r == R.nrows == V.rank()
        assert all(row_space_contains(R, v) for v in d.vectors)
        if d.hyperbolic_fix is not None:
            assert row_space_contains(V, d.hyperbolic_fix)
        if is_hyperbolic(F) and not F.is_identity():
            assert d.hyperbolic_fix is not None

    @settings(max_examples=80, deadline=None)
    @given(symplectics(max_m=6))
    def test_triangular_consistency(self, F):
        d = decompose_symplectic(F)
        target = F if d.hyperbolic_fix is None else F @ transvection_matrix(d.hyperbolic_fix)
        if target.is_identity():
            return
        V, E = residue_form(target)
        # express the emitted vectors in the residue basis: W = Q V

        W = BitMatrix(d.r, F.n, tuple(v.bits for v in d.vectors))
        # solve Q from W = Q V using the pivots of V (V is in RREF)
        pivots = [(r & -r).bit_length() - 1 for r in V.rows]
        Q = BitMatrix(d.r, d.r, tuple(sum(((w >> p) & 1) << j for j, p in enumerate(pivots)) for w in W.rows))
        assert Q @ V == W
        B = gram_data(W).B_mod2
        assert Q @ E @ Q.T == inverse(B).T

    @pytest.mark.parametrize("m", [1, 3, 6])
    def test_involutions_give_orthogonal_vectors(self, m):
        for seed in range(30):
            F = random_symplectic(m, seed, "involution")
            d = decompose_symplectic(F)
            vs = [v.bits for v in d.vectors]
            assert all(sip_bits(u, w, m) == 0 for u in vs for w in vs)

    def test_large_m(self):
        F = random_symplectic(64, 3)
        d = decompose_symplectic(F)
        assert verify_decomposition(F, d)

    def test_json_round_trip(self, cnot_F):
        d = decompose_symplectic(cnot_F)
        payload = json.loads(d.to_json(verified=True))
        assert payload == {"m": 2, "hyperbolic_fix": "0010", "vectors": ["0100", "0110"], "verified": True}
        assert SymplecticDecomposition.from_dict(payload) == d

    def test_from_dict_bad_length(self):
        with pytest.raises(ValueError):
            SymplecticDecomposition.from_dict({"m": 2, "vectors": ["010"], "hyperbolic_fix": None})


class TestPeeling:
    def test_single_transvection(self, rng):
        for _ in range(10):
            v = BitVector(6, rng.randrange(1, 64))
            d = decompose_peeling(transvection_matrix(v))
            assert list(d.vectors) == [v] and d.hyperbolic_fix is None

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_random_products(self, m, rng):
        for _ in range(20):
            k = rng.randint(1, 2 * m)
            F = transvection_product([BitVector(2 * m, rng.randrange(1, 1 << (2 * m))) for _ in range(k)], m)
            d = decompose_peeling(F)
            assert d.product().mat == F.mat
            assert verify_decomposition(F, d)

    def test_cnot(self, cnot_F):
        d = decompose_peeling(cnot_F)
        assert len(d) == 3 and verify_decomposition(cnot_F, d)

    def test_defective(self):
        F = SymplecticMatrix.from_strings(DEFECTIVE_F)
        assert len(decompose_peeling(F)) == 4

    @settings(max_examples=80, deadline=None)
    @given(symplectics(max_m=6))
    def test_agrees_with_congruence(self, F):
        d, p = decompose_symplectic(F), decompose_peeling(F)
        assert len(d) == len(p)
        assert verify_decomposition(F, p)


class TestVerify:
    def test_wrong_order(self):
        v, w = BitVector.from_str("10"), BitVector.from_str("01")
        assert sip_bits(v.bits, w.bits, 1) == 1
        F = transvection_product([v, w], 1)
        assert verify_decomposition(F, SymplecticDecomposition(1, (v, w)))
        assert not verify_decomposition(F, SymplecticDecomposition(1, (w, v)))

    def test_worked_example(self):
        V = BitMatrix.from_strings(WORKED_V)
        F = reconstruct(V)
        assert verify_decomposition(F, SymplecticDecomposition(5, tuple(V.vectors())))

    def test_non_minimal_rejected(self, rng):
        v = BitVector(4, 0b0011)
        F = transvection_matrix(v)
        assert not verify_decomposition(F, SymplecticDecomposition(2, (v, v, v)))

    def test_wrong_m(self, cnot_F):
        assert not verify_decomposition(cnot_F, SymplecticDecomposition(1, ()))

    def test_many_random(self):
        rng = random.Random(0)
        for _ in range(300):
            m = rng.randint(1, 5)
            F = random_symplectic(m, rng.getrandbits(32), rng.choice(KINDS))
            assert verify_decomposition(F, decompose_symplectic(F))


class TestResidueFix:
    def test_rejects_short(self):
        with pytest.raises(ValueError):
            residue_fix(SymplecticMatrix(1, omega(1)))

    def test_defective(self):
        F = SymplecticMatrix.from_strings(DEFECTIVE_F)
        v, G = residue_fix(F)
        assert residue_dim(G) == residue_dim(F)
        assert has_short_decomposition(G)


class TestBruteForce:
    def test_identity(self):
        assert brute_force_min_length(SymplecticMatrix.identity(2)) == 0

    def test_transvection(self):
        assert brute_force_min_length(transvection_matrix(BitVector.from_str("0110"))) == 1

    def test_cnot(self, cnot_F):
        assert brute_force_min_length(cnot_F) == 3

    def test_group_orders(self):
        assert len(enumerate_group(1)) == 6
        assert len(enumerate_group(2)) == 720

    def test_too_large(self):
        with pytest.raises(ValueError):
            brute_force_min_length(SymplecticMatrix.identity(3))

    def test_length_is_r_or_r_plus_one(self):
        for F in enumerate_group(2):
            L, r = brute_force_min_length(F), residue_dim(F)
            assert L in (r, r + 1)
            if is_hyperbolic(F) and not F.is_identity():
                assert L == r + 1

    def test_defective_count(self):
        defective = [
            F
            for F in enumerate_group(2)
            if not is_hyperbolic(F) and brute_force_min_length(F) == residue_dim(F) + 1
        ]
        assert len(defective) == 210
        assert all(not is_involution(F) for F in defective)
