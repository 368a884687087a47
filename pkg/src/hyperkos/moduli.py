"""Complete congruence invariants of ordered configurations.

A configuration ``x_0, ..., x_n`` is encoded by ``rho_i = delta(x_0, x_i)``
and the KOS matrix at ``x_0``. Two configurations are congruent exactly when
their encodings agree, and every admissible pair ``(rho, M)`` is realized.
For ``n + 1`` points the encoding carries ``n + n(n - 1) = n**2`` real
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ball import BOUNDARY_MARGIN, as_config, pseudo_dist
from .core_linalg import (
    DEFAULT_TOL,
    InvalidInputError,
    Tolerance,
    as_hermitian,
    gram_factorize,
    is_pd,
    is_psd,
)
from .rkhs import gram_of_config, kos_matrix

__all__ = [
    "ModuliPoint",
    "VertexModuli",
    "encode",
    "decode",
    "congruent",
    "general_position",
    "vertex_moduli",
    "vertex_congruent",
]


def _check_kos_like(M, tol: Tolerance) -> np.ndarray:
    M = as_hermitian(M, tol)
    if np.max(np.abs(M.diagonal() - 1.0)) > tol.eq_tol:
        raise InvalidInputError("moduli matrix must have unit diagonal")
    if not is_psd(M, tol):
        raise InvalidInputError("moduli matrix must be positive semidefinite")
    return M


@dataclass(frozen=True, eq=False)
class ModuliPoint:
    """``rho`` in ``(0, 1)**n`` and a unit-diagonal PSD ``M``."""

    rho: np.ndarray
    M: np.ndarray
    tol: Tolerance = DEFAULT_TOL

    def __post_init__(self):
        rho = np.array(self.rho, dtype=float).reshape(-1)
        if np.any(rho <= 0) or np.any(rho >= 1.0 - BOUNDARY_MARGIN):
            raise InvalidInputError("rho entries must lie in (0, 1)")
        M = _check_kos_like(self.M, self.tol)
        if M.shape[0] != rho.size:
            raise InvalidInputError("rho and M sizes differ")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "M", M)

    def close_to(self, other: "ModuliPoint", tol: Tolerance = DEFAULT_TOL) -> bool:
        if self.rho.shape != other.rho.shape:
            return False
        return bool(
            np.max(np.abs(self.rho - other.rho)) <= tol.eq_tol
            and np.max(np.abs(self.M - other.M)) <= tol.eq_tol
        )


def encode(X, tol: Tolerance = DEFAULT_TOL) -> ModuliPoint:
    """Distances from the first point and the KOS matrix there."""
    A = as_config(X, tol)
    if len(A) < 2:
        raise InvalidInputError("encode needs at least two points")
    rho = pseudo_dist(A[0][None, :], A[1:])
    return ModuliPoint(rho, kos_matrix(gram_of_config(A, tol), 0, tol), tol)


def decode(m: ModuliPoint, dimension: int | None = None) -> np.ndarray:
    """A configuration with the given encoding.

    The first point is the origin and ``x_i = rho_i w_i`` where the unit
    vectors ``w_i`` factor ``M``. The ambient dimension is the numerical rank
    of ``M`` unless a larger ``dimension`` is requested.
    """
    W = gram_factorize(m.M, m.tol)
    W = W / np.linalg.norm(W, axis=1, keepdims=True)
    rank = W.shape[1]
    width = rank if dimension is None else int(dimension)
    if width < rank:
        raise InvalidInputError(f"dimension {width} is below the rank {rank} of M")
    X = np.zeros((len(m.rho) + 1, width), dtype=complex)
    X[1:, :rank] = m.rho[:, None] * W
    return X


def congruent(X, Y, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Congruence of ordered configurations by equality of encodings."""
    A, B = as_config(X, tol), as_config(Y, tol)
    if len(A) != len(B):
        raise InvalidInputError("configurations have different sizes")
    return encode(A, tol).close_to(encode(B, tol), tol)


def general_position(X, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when the KOS matrix at the first point is positive definite."""
    return is_pd(encode(X, tol).M, tol).holds


@dataclass(frozen=True, eq=False)
class VertexModuli:
    """KOS matrix of a vertex with ``n`` edges (lengths play no role)."""

    M: np.ndarray
    tol: Tolerance = DEFAULT_TOL

    def __post_init__(self):
        object.__setattr__(self, "M", _check_kos_like(self.M, self.tol))


def vertex_moduli(X, tol: Tolerance = DEFAULT_TOL) -> VertexModuli:
    """Vertex at the first point with edges toward the remaining points."""
    return VertexModuli(encode(X, tol).M, tol)


def vertex_congruent(V: VertexModuli, W: VertexModuli, tol: Tolerance = DEFAULT_TOL) -> bool:
    if V.M.shape != W.M.shape:
        raise InvalidInputError("vertices have different valence")
    return bool(np.max(np.abs(V.M - W.M)) <= tol.eq_tol)
