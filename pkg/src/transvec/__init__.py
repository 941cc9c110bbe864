"""Minimal transvection decompositions of binary symplectic matrices and Clifford gates."""

from .clifford import (
    CircuitProgram,
    CliffordDecomposition,
    SupportSet,
    algorithm1_decompose,
    circuit_to_dense,
    circuit_to_symplectic,
    commutant_paulis,
    decompose_circuit,
    equal_up_to_phase,
    extract_symplectic,
    parse_circuit,
    support_of,
    transvection_gate,
)
from .decompose import (
    SymplecticDecomposition,
    brute_force_min_length,
    congruence_triangularize,
    decompose_peeling,
    decompose_symplectic,
    hyperbolic_fix,
    minimal_length,
    quadratic_one,
    verify_decomposition,
)
from .gf2 import BitMatrix, BitVector, inverse, kernel_basis, mat_mul, row_space_contains, rref_with_transform
from .pauli import Pauli, conjugate_by_transvection_gate, e_of, pauli_from_dense, pauli_mul
from .symplectic import (
    GramData,
    SymplecticMatrix,
    export_dot,
    fix_space,
    gram_data,
    is_hyperbolic,
    is_involution,
    is_symplectic,
    random_symplectic,
    reconstruct,
    res_space,
    residue_matrix,
    sip,
    transvection_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVector",
    "CircuitProgram",
    "CliffordDecomposition",
    "GramData",
    "Pauli",
    "SupportSet",
    "SymplecticDecomposition",
    "SymplecticMatrix",
    "algorithm1_decompose",
    "brute_force_min_length",
    "circuit_to_dense",
    "circuit_to_symplectic",
    "commutant_paulis",
    "congruence_triangularize",
    "conjugate_by_transvection_gate",
    "decompose_circuit",
    "decompose_peeling",
    "decompose_symplectic",
    "e_of",
    "equal_up_to_phase",
    "export_dot",
    "extract_symplectic",
    "fix_space",
    "gram_data",
    "hyperbolic_fix",
    "inverse",
    "is_hyperbolic",
    "is_involution",
    "is_symplectic",
    "kernel_basis",
    "mat_mul",
    "minimal_length",
    "parse_circuit",
    "pauli_from_dense",
    "pauli_mul",
    "quadratic_one",
    "random_symplectic",
    "reconstruct",
    "res_space",
    "residue_matrix",
    "row_space_contains",
    "rref_with_transform",
    "sip",
    "support_of",
    "transvection_gate",
    "transvection_matrix",
    "verify_decomposition",
    "__version__",
]
