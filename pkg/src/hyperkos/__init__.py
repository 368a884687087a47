"""Invariants, congruence tests and assembly gates for point configurations
in complex hyperbolic space, with the real hyperbolic specialization."""

from .core_linalg import (
    DEFAULT_TOL,
    InvalidInputError,
    NumericalDisagreementError,
    Tolerance,
    Verdict,
    is_pd,
    is_psd,
)
from .rkhs import GramSpec, alpha, cpp_certify, delta_h, gram_of_config, kos, kos_matrix, mq_matrix
from .moduli import ModuliPoint, congruent, decode, encode
from .assembly import (
    AssemblyVerdict,
    Piece,
    assemble_v1,
    assemble_v2,
    assemble_v3,
    q1_from_triangles,
    q2_gate,
    tetra_gate,
)

__all__ = [
    "DEFAULT_TOL",
    "InvalidInputError",
    "NumericalDisagreementError",
    "Tolerance",
    "Verdict",
    "is_pd",
    "is_psd",
    "GramSpec",
    "alpha",
    "cpp_certify",
    "delta_h",
    "gram_of_config",
    "kos",
    "kos_matrix",
    "mq_matrix",
    "ModuliPoint",
    "congruent",
    "decode",
    "encode",
    "AssemblyVerdict",
    "Piece",
    "assemble_v1",
    "assemble_v2",
    "assemble_v3",
    "q1_from_triangles",
    "q2_gate",
    "tetra_gate",
]
