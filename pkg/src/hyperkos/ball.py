"""The open unit ball of complex n-space as a model of complex hyperbolic space.

Points are 1-d complex arrays and configurations are 2-d arrays with one
point per row. The pairing ``<<w, z>> = sum(w_k * conj(z_k))`` is linear in
its first argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import unitary_group

from .core_linalg import DEFAULT_TOL, InvalidInputError, Tolerance

__all__ = [
    "BOUNDARY_MARGIN",
    "inner",
    "as_point",
    "as_config",
    "szego_kernel",
    "pseudo_dist",
    "involution",
    "Automorphism",
    "random_automorphism",
    "random_points",
    "project_to_complex_geodesic",
    "normalize_to_model",
]

# Points with norm at or beyond 1 - BOUNDARY_MARGIN are treated as ideal.
BOUNDARY_MARGIN = 1e-12


def inner(w, z):
    """``<<w, z>>`` along the last axis (broadcasts over leading axes)."""
    w = np.asarray(w, dtype=complex)
    z = np.asarray(z, dtype=complex)
    if w.shape[-1] != z.shape[-1]:
        raise InvalidInputError(f"dimension mismatch: {w.shape[-1]} vs {z.shape[-1]}")
    return np.sum(w * z.conj(), axis=-1)


def as_point(z) -> np.ndarray:
    """Validate a single ball point; scalars are promoted to dimension 1."""
    p = np.atleast_1d(np.array(z, dtype=complex))
    if p.ndim != 1 or p.size == 0:
        raise InvalidInputError(f"a point must be a nonempty vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise InvalidInputError("point has non-finite coordinates")
    if np.linalg.norm(p) >= 1.0 - BOUNDARY_MARGIN:
        raise InvalidInputError(f"point {p} is not inside the open unit ball")
    return p


def as_config(X, tol: Tolerance = DEFAULT_TOL, distinct: bool = True) -> np.ndarray:
    """Validate an ordered configuration, returned as an ``(m, n)`` array.

    A 1-d input is read as ``m`` points of the one-dimensional ball.
    """
    A = np.array(X, dtype=complex)
    if A.ndim == 1:
        A = A[:, None]
    if A.ndim != 2 or A.shape[0] == 0 or A.shape[1] == 0:
        raise InvalidInputError(f"a configuration must be an (m, n) array, got shape {A.shape}")
    for row in A:
        as_point(row)
    if distinct:
        for i in range(len(A)):
            for j in range(i):
                if pseudo_dist(A[i], A[j]) <= tol.eq_tol:
                    raise InvalidInputError(f"points {j} and {i} coincide")
    return A


def szego_kernel(w, z):
    """``1 / (1 - <<w, z>>)``."""
    return 1.0 / (1.0 - inner(w, z))


def pseudo_dist(y, w):
    """Pseudohyperbolic distance, with ``pseudo_dist(0, z) = |z|``.

    The numerator of ``delta**2`` is evaluated as
    ``|y - w|**2 - (|y|**2 |w|**2 - |<<y, w>>|**2)`` with the bracket written
    as a sum of squared 2x2 minors, which avoids cancellation for nearby
    points.
    """
    y = np.asarray(y, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if y.shape[-1] != w.shape[-1]:
        raise InvalidInputError(f"dimension mismatch: {y.shape[-1]} vs {w.shape[-1]}")
    diff = np.sum(np.abs(y - w) ** 2, axis=-1)
    wedge = y[..., :, None] * w[..., None, :] - y[..., None, :] * w[..., :, None]
    lagrange = 0.5 * np.sum(np.abs(wedge) ** 2, axis=(-2, -1))
    denom = np.abs(1.0 - inner(y, w)) ** 2
    return np.sqrt(np.clip((diff - lagrange) / denom, 0.0, None))


def involution(a):
    """The automorphism swapping ``a`` and ``0``.

    ``phi_a(z) = (a - P z - s Q z) / (1 - <<z, a>>)`` where ``P`` projects onto
    the span of ``a``, ``Q = I - P`` and ``s = sqrt(1 - |a|**2)``. The
    returned map accepts a point or a stack of points (rows).
    """
    a = as_point(a)
    norm2 = float(np.real(inner(a, a)))
    if norm2 == 0.0:
        return lambda z: np.array(z, dtype=complex)
    s = np.sqrt(1.0 - norm2)

    def phi(z):
        z = np.asarray(z, dtype=complex)
        along = inner(z, a)[..., None]
        proj = along / norm2 * a
        return (a - proj - s * (z - proj)) / (1.0 - along)

    return phi


@dataclass(frozen=True)
class Automorphism:
    """``z -> U phi_base(z)``: an involution followed by a unitary."""

    unitary: np.ndarray
    base: np.ndarray

    def __call__(self, z):
        return involution(self.base)(z) @ self.unitary.T


def random_automorphism(seed, dimension: int) -> Automorphism:
    """A reproducible random automorphism of the ``dimension``-ball."""
    rng = np.random.default_rng(seed)
    if dimension == 1:
        U = np.exp(2j * np.pi * rng.random()) * np.ones((1, 1))
    else:
        U = unitary_group.rvs(dimension, random_state=rng)
    base = random_points(rng, 1, dimension, radius=0.9)[0]
    return Automorphism(np.asarray(U, dtype=complex), base)


def random_points(rng, count: int, dimension: int, radius: float = 0.9) -> np.ndarray:
    """``count`` points uniformly distributed in the ball of given radius."""
    rng = np.random.default_rng(rng)
    g = rng.normal(size=(count, dimension)) + 1j * rng.normal(size=(count, dimension))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = radius * rng.random(count) ** (1.0 / (2 * dimension))
    return g * r[:, None]


def project_to_complex_geodesic(p, q, x) -> np.ndarray:
    """Metric projection of ``x`` onto the complex geodesic through ``p, q``.

    After moving ``p`` to the origin the geodesic is the complex line through
    the image of ``q``, where the projection is orthogonal.
    """
    p, q, x = as_point(p), as_point(q), as_point(x)
    phi = involution(p)
    direction = phi(q)
    length = np.linalg.norm(direction)
    if length <= DEFAULT_TOL.eq_tol:
        raise InvalidInputError("a complex geodesic needs two distinct points")
    u = direction / length
    x_moved = phi(x)
    return phi(inner(x_moved, u) * u)


def _fresh_axis(basis: list[np.ndarray], dimension: int) -> np.ndarray:
    # First standard basis vector outside the current span.
    for j in range(dimension):
        e = np.zeros(dimension, dtype=complex)
        e[j] = 1.0
        for b in basis:
            e = e - inner(e, b) * b
        n = np.linalg.norm(e)
        if n > 1e-6:
            return e / n
    raise InvalidInputError("no room for another axis")


def normalize_to_model(X, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Congruent copy in model position, as an ``(m, m - 1)`` array.

    The first point goes to the origin; the ``k``-th point then lies in the
    span of the first ``k - 1`` axes with a real nonnegative last
    coordinate. For a triangle this is ``{0, (a, 0), (x, b)}`` with
    ``a > 0, b >= 0``; for a tetrahedron the fourth point is ``(y, z, c)``
    with ``c >= 0``. When a point adds no new direction the next axis is the
    first standard basis vector outside the span.
    """
    A = as_config(X, tol)
    m, n = A.shape
    width = max(n, m - 1)
    moved = np.zeros((m, width), dtype=complex)
    moved[:, :n] = involution(A[0])(A)
    moved[0] = 0.0
    basis: list[np.ndarray] = []
    out = np.zeros((m, m - 1), dtype=complex)
    for i in range(1, m):
        v = moved[i]
        coords = [inner(v, b) for b in basis]
        residual = v - sum((c * b for c, b in zip(coords, basis)), np.zeros(width, dtype=complex))
        size = float(np.linalg.norm(residual))
        if size > tol.eq_tol:
            basis.append(residual / size)
        else:
            basis.append(_fresh_axis(basis, width))
            size = 0.0
        out[i, : i - 1] = coords
        out[i, i - 1] = size
    return out
