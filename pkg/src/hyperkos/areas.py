"""Areas of geodesic triangles and polygons in a complex geodesic and in the
Beltrami-Klein disk, each computed two ways and cross-checked.

CH^1 areas are signed by orientation: counterclockwise vertex order gives a
positive value. The functions return the absolute value unless
``signed=True``.
"""

from __future__ import annotations

import numpy as np

from .ball import involution
from .core_linalg import DEFAULT_TOL, InvalidInputError, NumericalDisagreementError, Tolerance
from .rkhs import GramSpec, alpha, gram_of_config, kos

__all__ = ["disk_points", "area_ch1", "polygon_area_ch1", "area_bk2"]

# arccos loses about sqrt(machine epsilon) near +-1, so the two vertex-angle
# routes in area_bk2 are only compared to this accuracy.
ARCCOS_TOL = 1e-6


def disk_points(P) -> np.ndarray:
    """Points of the one-dimensional ball as an ``(n, 1)`` complex array."""
    A = np.array(P, dtype=complex)
    if A.ndim == 2 and A.shape[1] == 1:
        A = A[:, 0]
    if A.ndim != 1:
        raise InvalidInputError(f"expected points of the unit disk, got shape {np.shape(P)}")
    return A.reshape(-1, 1)


def _corners(A: np.ndarray, tol: Tolerance) -> list[GramSpec]:
    """Gram matrix of ``(x_i, x_(i+1), x_(i-1))`` for each vertex ``i``.

    Only these triples enter the area, and their Gram matrices stay well
    conditioned when the full Pick matrix of many points does not.
    """
    n = len(A)
    return [gram_of_config(A[[i, (i + 1) % n, (i - 1) % n]], tol) for i in range(n)]


def _turning(corners: list[GramSpec], tol: Tolerance) -> float:
    """Sum over vertices of ``arg kos_i(i+1, i-1)``."""
    return float(sum(np.angle(kos(G, 0, 1, 2, tol)) for G in corners))


def _boundary_phase(corners: list[GramSpec]) -> float:
    """``-2 * sum arg G[i, i+1]``, the signed area from kernel phases."""
    return float(-2.0 * sum(np.angle(G[0, 1]) for G in corners))


def _angle_form(turn: float, n: int) -> float:
    """Signed area from the interior angles, ``+-((n - 2) pi - sum angles)``."""
    return float(-np.sign(turn) * ((n - 2) * np.pi - abs(turn)))


def _settle(first: float, second: float, signed: bool, tol: Tolerance, n: int) -> float:
    if abs(first - second) > tol.eq_tol * max(1, n):
        raise NumericalDisagreementError(
            f"area expressions disagree: {first:.12g} vs {second:.12g}"
        )
    return second if signed else abs(second)


def area_ch1(T, signed: bool = False, tol: Tolerance = DEFAULT_TOL) -> float:
    """Area of a triangle in the one-dimensional ball.

    Computed from the kos values at the three vertices and from twice the
    angular invariant; the two must agree.
    """
    A = disk_points(T)
    if len(A) != 3:
        raise InvalidInputError("area_ch1 needs three points")
    first = _angle_form(_turning(_corners(A, tol), tol), 3)
    second = 2.0 * alpha(gram_of_config(A, tol), 0, 1, 2)
    return _settle(first, second, signed, tol, 3)


def polygon_area_ch1(P, signed: bool = False, tol: Tolerance = DEFAULT_TOL) -> float:
    """Area of a convex polygon in the one-dimensional ball, vertices in cyclic order.

    Uses the interior angles ``kos_i(i+1, i-1)`` and the boundary kernel
    phases ``G[i, i+1]``; the two must agree. Convexity is assumed.
    """
    A = disk_points(P)
    n = len(A)
    if n < 3:
        raise InvalidInputError("a polygon needs at least three vertices")
    corners = _corners(A, tol)
    first = _angle_form(_turning(corners, tol), n)
    second = _boundary_phase(corners)
    return _settle(first, second, signed, tol, n)


def area_bk2(T, tol: Tolerance = DEFAULT_TOL) -> float:
    """Area of a triangle in the Beltrami-Klein disk of real points of the 2-ball.

    Four times the angle defect. Each vertex angle is ``arccos kos`` and is
    recomputed with ``atan2`` after moving the vertex to the origin, where
    the angle is Euclidean; the second value is returned because it stays
    accurate for nearly straight angles.
    """
    A = np.array(T, dtype=complex)
    if A.shape != (3, 2):
        raise InvalidInputError("area_bk2 needs three points with two coordinates")
    if np.max(np.abs(A.imag)) > tol.eq_tol:
        raise InvalidInputError("Beltrami-Klein points must be real")
    A = A.real.astype(complex)
    G = gram_of_config(A, tol)
    total = 0.0
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        c = kos(G, i, j, k, tol)
        if abs(c.imag) > tol.eq_tol or abs(c.real) > 1.0 + tol.eq_tol:
            raise NumericalDisagreementError(f"real triangle produced kos {c}")
        u, v = involution(A[i])(A[[j, k]]).real
        angle = float(np.arctan2(abs(u[0] * v[1] - u[1] * v[0]), u @ v))
        if abs(angle - np.arccos(np.clip(c.real, -1.0, 1.0))) > ARCCOS_TOL:
            raise NumericalDisagreementError(f"vertex angle routes disagree at vertex {i}")
        total += angle
    return 4.0 * (np.pi - total)
