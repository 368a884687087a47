"""Triangle congruence data in three parameterizations, with conversions.

``TriangleS`` holds the moduli of the normalized Gram entries and the
angular invariant, ``TriangleSPrime`` the three side lengths and the angular
invariant, ``TriangleSDoublePrime`` two sides and the kos value at the first
vertex. Vertex labels are 1, 2, 3; the first vertex is distinguished.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ball import as_config, normalize_to_model, project_to_complex_geodesic, pseudo_dist
from .core_linalg import DEFAULT_TOL, InvalidInputError, Tolerance
from .rkhs import alpha, as_gram, delta_h, kos

__all__ = [
    "TriangleS",
    "TriangleSPrime",
    "TriangleSDoublePrime",
    "s_of_gram",
    "sprime_of_gram",
    "sdp_of_gram",
    "gamma_factor",
    "realizable_sprime",
    "realizable_sdp",
    "in_complex_geodesic",
    "sdp_to_sprime",
    "sprime_to_sdp",
    "build_model_triangle",
    "sss_family",
    "kos_polar",
]


def _open_unit(name: str, value: float, low_closed: bool = False) -> float:
    value = float(value)
    ok = (0.0 <= value if low_closed else 0.0 < value) and value < 1.0
    if not ok:
        raise InvalidInputError(f"{name} must lie in (0, 1), got {value}")
    return value


@dataclass(frozen=True)
class TriangleS:
    m12: float
    m23: float
    m13: float
    alpha123: float

    def __post_init__(self):
        for name in ("m12", "m23", "m13"):
            v = getattr(self, name)
            if not (0.0 < v <= 1.0):
                raise InvalidInputError(f"{name} must lie in (0, 1], got {v}")


@dataclass(frozen=True)
class TriangleSPrime:
    d12: float
    d13: float
    d23: float
    alpha123: float

    def __post_init__(self):
        for name in ("d12", "d13", "d23"):
            _open_unit(name, getattr(self, name))

    def side(self, a: int, b: int) -> float:
        pair = {frozenset((1, 2)): self.d12, frozenset((1, 3)): self.d13, frozenset((2, 3)): self.d23}
        return pair[frozenset((a, b))]


@dataclass(frozen=True)
class TriangleSDoublePrime:
    d12: float
    d13: float
    kos123: complex

    def __post_init__(self):
        _open_unit("d12", self.d12)
        _open_unit("d13", self.d13)


def s_of_gram(G) -> TriangleS:
    G = as_gram(G)
    m = lambda i, j: float(np.sqrt(1.0 - delta_h(G, i, j) ** 2))
    return TriangleS(m(0, 1), m(1, 2), m(0, 2), alpha(G, 0, 1, 2))


def sprime_of_gram(G) -> TriangleSPrime:
    G = as_gram(G)
    return TriangleSPrime(delta_h(G, 0, 1), delta_h(G, 0, 2), delta_h(G, 1, 2), alpha(G, 0, 1, 2))


def sdp_of_gram(G) -> TriangleSDoublePrime:
    G = as_gram(G)
    return TriangleSDoublePrime(delta_h(G, 0, 1), delta_h(G, 0, 2), kos(G, 0, 1, 2))


def _one_minus_sq(data, a: int, b: int) -> float:
    if isinstance(data, TriangleS):
        m = {frozenset((1, 2)): data.m12, frozenset((1, 3)): data.m13, frozenset((2, 3)): data.m23}
        return m[frozenset((a, b))] ** 2
    return 1.0 - data.side(a, b) ** 2


def gamma_factor(data, a: int, b: int, c: int) -> float:
    """``sqrt((1 - d_ab**2)(1 - d_bc**2) / (1 - d_ca**2))`` for S or S' data."""
    if sorted((a, b, c)) != [1, 2, 3]:
        raise InvalidInputError("gamma_factor needs a permutation of the labels 1, 2, 3")
    return float(np.sqrt(_one_minus_sq(data, a, b) * _one_minus_sq(data, b, c) / _one_minus_sq(data, c, a)))


def realizable_sprime(t: TriangleSPrime, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether side lengths and angular invariant come from an actual triangle.

    Tests ``G123 + G231 + G312 - m12 m23 m31 <= 2 cos(alpha)`` where
    ``m_ab = sqrt(1 - d_ab**2)``; this is ``|kos| <= 1`` after dividing by
    the positive quantity ``m12 m13 / m23``.
    """
    total = gamma_factor(t, 1, 2, 3) + gamma_factor(t, 2, 3, 1) + gamma_factor(t, 3, 1, 2)
    product = np.sqrt(_one_minus_sq(t, 1, 2) * _one_minus_sq(t, 2, 3) * _one_minus_sq(t, 3, 1))
    return bool(total - product <= 2.0 * np.cos(t.alpha123) + tol.eq_tol)


def realizable_sdp(t: TriangleSDoublePrime, tol: Tolerance = DEFAULT_TOL) -> bool:
    return bool(abs(t.kos123) <= 1.0 + tol.eq_tol)


def in_complex_geodesic(t: TriangleSDoublePrime, tol: Tolerance = DEFAULT_TOL) -> bool:
    return bool(abs(abs(t.kos123) - 1.0) <= tol.eq_tol)


def sdp_to_sprime(t: TriangleSDoublePrime, tol: Tolerance = DEFAULT_TOL) -> TriangleSPrime:
    """Third side and angular invariant from two sides and the vertex kos.

    In model position ``x2 = (a, 0)`` and ``x3 = (x, b)``, so
    ``a * conj(x) = d12 * d13 * kos``, and the third side follows from the
    distance formula.
    """
    if not realizable_sdp(t, tol):
        raise InvalidInputError("S'' data with |kos| > 1 is not realizable")
    pairing = t.d12 * t.d13 * t.kos123
    one_minus = 1.0 - pairing
    ratio = (1 - t.d12**2) * (1 - t.d13**2) / abs(one_minus) ** 2
    d23 = float(np.sqrt(max(0.0, 1.0 - ratio)))
    return TriangleSPrime(t.d12, t.d13, d23, float(np.angle(one_minus)))


def sprime_to_sdp(t: TriangleSPrime, tol: Tolerance = DEFAULT_TOL) -> TriangleSDoublePrime:
    """Inverse of :func:`sdp_to_sprime`."""
    if not realizable_sprime(t, tol):
        raise InvalidInputError("S' data fails the realizability inequality")
    modulus = np.sqrt((1 - t.d12**2) * (1 - t.d13**2) / (1 - t.d23**2))
    one_minus = modulus * np.exp(1j * t.alpha123)
    return TriangleSDoublePrime(t.d12, t.d13, complex((1.0 - one_minus) / (t.d12 * t.d13)))


def build_model_triangle(t: TriangleSDoublePrime, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``{(0, 0), (a, 0), (x, b)}`` with ``a = d12``, ``x = d13 conj(kos)``, ``b >= 0``."""
    if not realizable_sdp(t, tol):
        raise InvalidInputError("S'' data with |kos| > 1 is not realizable")
    x = t.d13 * np.conj(t.kos123)
    if abs(t.kos123) > 1.0:  # inside the tolerance slack
        x = x / abs(t.kos123)
    b = np.sqrt(max(0.0, t.d13**2 - abs(x) ** 2))
    return np.array([[0, 0], [t.d12, 0], [x, b]], dtype=complex)


def sss_family(t: float) -> np.ndarray:
    """Triangles with equal side lengths for every ``t`` in ``[1, sqrt 2]``.

    ``{(0, 0), (1/2, 0), (t e^{i theta} / 2, sqrt(2 - t**2) / 2)}`` with
    ``cos theta = (t**2 + 7) / (8 t)``.
    """
    t = float(t)
    if not (1.0 <= t <= np.sqrt(2.0) + 1e-15):
        raise InvalidInputError(f"t must lie in [1, sqrt 2], got {t}")
    theta = np.arccos(min(1.0, (t * t + 7.0) / (8.0 * t)))
    return np.array(
        [[0, 0], [0.5, 0], [t * np.exp(1j * theta) / 2, np.sqrt(max(0.0, 2.0 - t * t)) / 2]],
        dtype=complex,
    )


def kos_polar(X, tol: Tolerance = DEFAULT_TOL) -> tuple[float, float]:
    """Modulus and argument of ``kos_1(2, 3)`` from geometry.

    The modulus is ``delta(x1, y) / delta(x1, x3)`` with ``y`` the projection
    of ``x3`` onto the complex geodesic through ``x1, x2``. The argument is
    read in model position, where ``y`` sits on the first axis and the
    Euclidean angle at the origin is the hyperbolic one.
    """
    A = as_config(X, tol)
    if len(A) != 3:
        raise InvalidInputError("kos_polar needs a triangle")
    y = project_to_complex_geodesic(A[0], A[1], A[2])
    r = float(pseudo_dist(A[0], y) / pseudo_dist(A[0], A[2]))
    model = normalize_to_model(A, tol)
    first = model[2, 0]
    theta = 0.0 if abs(first) <= tol.eq_tol else float(-np.angle(first))
    return r, theta
