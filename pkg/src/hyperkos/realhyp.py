"""Real hyperbolic tetrahedra seen from one vertex.

Angle triples are ordered ``(a23, a24, a34)``: the angle between the edges
(or faces) labelled by the index pair, at a vertex with edges toward points
2, 3, 4. Matrix position ``(0, 1)`` holds the ``23`` entry, ``(0, 2)`` the
``24`` entry and ``(1, 2)`` the ``34`` entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .core_linalg import (
    BAND_FACTOR,
    DEFAULT_TOL,
    InvalidInputError,
    NumericalDisagreementError,
    Tolerance,
    Verdict,
    as_hermitian,
    det,
    is_psd,
    is_psd_batch,
)
from .rkhs import as_gram, gram_of_config, kos_matrix

__all__ = [
    "as_angles",
    "is_real_gram",
    "is_real_config",
    "vertex_angles",
    "cva_matrix",
    "neg_cda_matrix",
    "angles_of_matrix",
    "dihedral_from_vertex",
    "vertex_from_dihedral",
    "gva_check",
    "gda_check",
    "tia_holds",
    "tid_holds",
    "dual",
    "AngleCriteria",
    "angle_criteria_batch",
    "VertexGateVerdict",
    "vertex_gate",
    "DihedralGateVerdict",
    "dihedral_gate",
    "Amplitude",
    "amplitude_va",
    "amplitude_da",
    "cayley_p",
    "cayley_classify",
    "SINGULAR_POINTS",
]

CayleyClass = Literal["interior", "smooth_boundary", "singular", "exterior", "out_of_box"]

SINGULAR_POINTS = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)

_PAIRS = ((0, 1), (0, 2), (1, 2))


def as_angles(t) -> np.ndarray:
    """Three finite angles in the open interval ``(0, pi)``."""
    a = np.array(t, dtype=float).reshape(-1)
    if a.size != 3 or not np.all(np.isfinite(a)):
        raise InvalidInputError("expected three finite angles")
    if np.any(a <= 0.0) or np.any(a >= np.pi):
        raise InvalidInputError(f"angles must lie in (0, pi), got {a.tolist()}")
    return a


def as_angle_stack(t) -> np.ndarray:
    """A ``(m, 3)`` array of triples, each checked like :func:`as_angles`."""
    a = np.array(t, dtype=float)
    if a.ndim != 2 or a.shape[1] != 3 or not np.all(np.isfinite(a)):
        raise InvalidInputError(f"expected an (m, 3) array of angles, got shape {a.shape}")
    if np.any(a <= 0.0) or np.any(a >= np.pi):
        raise InvalidInputError("angles must lie in (0, pi)")
    return a


def _arccos(c, tol: Tolerance) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    if np.any(np.abs(c) > 1.0 + tol.eq_tol):
        raise InvalidInputError("cosine value outside [-1, 1]")
    return np.arccos(np.clip(c, -1.0, 1.0))


def is_real_gram(G, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when every kos value at every base point is real."""
    G = as_gram(G, tol)
    if G.n < 3:
        return True
    return all(float(np.max(np.abs(kos_matrix(G, s, tol).imag))) <= tol.eq_tol for s in range(G.n))


def is_real_config(X, tol: Tolerance = DEFAULT_TOL) -> bool:
    return is_real_gram(gram_of_config(X, tol), tol)


def _cos_matrix(c, sign: float) -> np.ndarray:
    M = np.eye(3)
    for k, (i, j) in enumerate(_PAIRS):
        M[i, j] = M[j, i] = sign * c[k]
    return M


def cva_matrix(va) -> np.ndarray:
    """Unit-diagonal matrix of vertex-angle cosines."""
    return _cos_matrix(np.cos(as_angles(va)), 1.0)


def neg_cda_matrix(da) -> np.ndarray:
    """Unit-diagonal matrix of negated dihedral-angle cosines."""
    return _cos_matrix(np.cos(as_angles(da)), -1.0)


def _real_unit_matrix(M, tol: Tolerance) -> np.ndarray:
    M = as_hermitian(M, tol)
    if M.shape != (3, 3):
        raise InvalidInputError("expected a 3x3 matrix")
    if np.max(np.abs(M.imag)) > tol.eq_tol:
        raise InvalidInputError("matrix must be real")
    M = M.real
    if np.max(np.abs(M.diagonal() - 1.0)) > tol.eq_tol:
        raise InvalidInputError("matrix must have unit diagonal")
    if np.max(np.abs(M)) > 1.0 + tol.eq_tol:
        raise InvalidInputError("matrix entries must lie in [-1, 1]")
    return M


def angles_of_matrix(M, negated: bool = False, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Angle triple whose (negated) cosines fill the off-diagonal of ``M``."""
    M = _real_unit_matrix(M, tol)
    c = np.array([M[i, j] for i, j in _PAIRS])
    return _arccos(-c if negated else c, tol)


def vertex_angles(X, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Vertex-angle cosine matrix at the first point of a real tetrahedron."""
    G = gram_of_config(X, tol)
    if G.n != 4:
        raise InvalidInputError("vertex_angles needs four points")
    if not is_real_gram(G, tol):
        raise InvalidInputError("configuration is not real hyperbolic")
    K = kos_matrix(G, 0, tol).real
    return np.clip((K + K.T) / 2, -1.0, 1.0)


def _law_of_cosines(c: np.ndarray, s: np.ndarray, sign: float) -> np.ndarray:
    out = np.empty(3)
    for k in range(3):
        j, l = (m for m in range(3) if m != k)
        out[k] = (c[k] + sign * c[j] * c[l]) / (s[j] * s[l])
    return out


def dihedral_from_vertex(va) -> np.ndarray:
    """Cosines of the dihedral angles from the vertex angles.

    ``cos da_k = (cos va_k - cos va_j cos va_l) / (sin va_j sin va_l)``
    where ``j, l`` are the other two positions. Values outside ``[-1, 1]``
    mean the vertex is not realizable.
    """
    a = as_angles(va)
    return _law_of_cosines(np.cos(a), np.sin(a), -1.0)


def vertex_from_dihedral(da) -> np.ndarray:
    """Cosines of the vertex angles from the dihedral angles."""
    a = as_angles(da)
    return _law_of_cosines(np.cos(a), np.sin(a), 1.0)


def _psd_agrees(decision: bool, verdict: Verdict, tol: Tolerance, what: str) -> None:
    loud = abs(verdict.min_eigenvalue) > BAND_FACTOR * tol.psd_tol * verdict.scale
    if decision != verdict.holds and loud:
        raise NumericalDisagreementError(
            f"{what}: closed form says {decision}, matrix positivity says {verdict.holds}"
        )


# Closed forms over the last axis of an angle array.


def _tia_form(a: np.ndarray, tol: Tolerance) -> np.ndarray:
    return 2 * a.max(axis=-1) <= a.sum(axis=-1) + tol.eq_tol


def _tid_form(a: np.ndarray, tol: Tolerance) -> np.ndarray:
    return a.sum(axis=-1) >= np.pi - tol.eq_tol


def _gva_form(a: np.ndarray, tol: Tolerance) -> np.ndarray:
    return _tia_form(a, tol) & (a.sum(axis=-1) <= 2 * np.pi + tol.eq_tol)


def _gda_form(a: np.ndarray, tol: Tolerance) -> np.ndarray:
    excess = a.sum(axis=-1)[..., None] - 2 * a
    return _tid_form(a, tol) & np.all(excess <= np.pi + tol.eq_tol, axis=-1)


def gva_check(gamma, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether the triple occurs as the vertex angles of a trivalent vertex.

    Closed form: the largest angle is at most the sum of the other two and
    the three add up to at most ``2 pi``. Cross-checked against positivity
    of :func:`cva_matrix`.
    """
    a = as_angles(gamma)
    ok = bool(_gva_form(a, tol))
    _psd_agrees(ok, is_psd(cva_matrix(a), tol), tol, "vertex angles")
    return ok


def gda_check(gamma, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether the triple occurs as the dihedral angles of a trivalent vertex.

    Closed form: the angles sum to at least ``pi`` and for each angle ``A``
    the other two satisfy ``B + C - A <= pi``. Cross-checked against
    positivity of :func:`neg_cda_matrix`.
    """
    a = as_angles(gamma)
    ok = bool(_gda_form(a, tol))
    _psd_agrees(ok, is_psd(neg_cda_matrix(a), tol), tol, "dihedral angles")
    return ok


def tia_holds(gamma, tol: Tolerance = DEFAULT_TOL) -> bool:
    """The bare angle triangle inequality: largest angle at most the sum of the others."""
    return bool(_tia_form(as_angles(gamma), tol))


def tid_holds(gamma, tol: Tolerance = DEFAULT_TOL) -> bool:
    """The bare angle-sum bound: the three angles add up to at least ``pi``."""
    return bool(_tid_form(as_angles(gamma), tol))


class AngleCriteria(NamedTuple):
    """Per-triple verdicts of every angle criterion and of matrix positivity."""

    gva: np.ndarray
    gda: np.ndarray
    tia: np.ndarray
    tid: np.ndarray
    cva_psd: np.ndarray
    cda_psd: np.ndarray
    cva_min_eigenvalue: np.ndarray
    cda_min_eigenvalue: np.ndarray


def _cos_stack(c: np.ndarray, sign: float) -> np.ndarray:
    M = np.broadcast_to(np.eye(3), c.shape[:-1] + (3, 3)).copy()
    for k, (i, j) in enumerate(_PAIRS):
        M[..., i, j] = M[..., j, i] = sign * c[..., k]
    return M


def angle_criteria_batch(angles, tol: Tolerance = DEFAULT_TOL) -> AngleCriteria:
    """Vectorized :func:`gva_check`, :func:`gda_check`, :func:`tia_holds` and :func:`tid_holds`.

    Like the scalar checks, raises when a closed form for ``gva`` or ``gda``
    disagrees with matrix positivity outside the tolerance band.
    """
    a = as_angle_stack(angles)
    c = np.cos(a)
    cva_psd, cva_lam = is_psd_batch(_cos_stack(c, 1.0), tol)
    cda_psd, cda_lam = is_psd_batch(_cos_stack(c, -1.0), tol)
    gva, gda = _gva_form(a, tol), _gda_form(a, tol)
    band = BAND_FACTOR * tol.psd_tol
    if np.any((gva != cva_psd) & (np.abs(cva_lam) > band)):
        raise NumericalDisagreementError("vertex angles: closed form and matrix positivity disagree")
    if np.any((gda != cda_psd) & (np.abs(cda_lam) > band)):
        raise NumericalDisagreementError("dihedral angles: closed form and matrix positivity disagree")
    return AngleCriteria(gva, gda, _tia_form(a, tol), _tid_form(a, tol), cva_psd, cda_psd, cva_lam, cda_lam)


def dual(gamma) -> np.ndarray:
    """Supplementary triple ``pi - gamma``; exchanges vertex and dihedral data."""
    return np.pi - as_angles(gamma)


@dataclass(frozen=True)
class VertexGateVerdict:
    """Realizability of vertex angles by four equivalent routes.

    ``boundary`` is set when the determinant lies within ``eq_tol`` of zero,
    where the routes may legitimately split.
    """

    feasible: bool
    psd: bool
    det_nonnegative: bool
    trig: bool
    normalized_trig: bool
    determinant: float
    boundary: bool


def vertex_gate(va, tol: Tolerance = DEFAULT_TOL) -> VertexGateVerdict:
    a = as_angles(va)
    c, s = np.cos(a), np.sin(a)
    M = cva_matrix(a)
    verdict = is_psd(M, tol)
    d = float(det(M).real)
    gap = c[2] - c[0] * c[1]
    trig = bool(gap**2 <= (1 - c[0] ** 2) * (1 - c[1] ** 2) + tol.eq_tol)
    normalized = bool((gap / (s[0] * s[1])) ** 2 <= 1.0 + tol.eq_tol)
    det_ok = d >= -tol.eq_tol
    boundary = abs(d) <= tol.eq_tol
    votes = {verdict.holds, det_ok, trig, normalized}
    if len(votes) > 1 and abs(d) > BAND_FACTOR * tol.eq_tol:
        raise NumericalDisagreementError(f"vertex gate routes disagree (det {d:.3e})")
    return VertexGateVerdict(verdict.holds, verdict.holds, det_ok, trig, normalized, d, boundary)


@dataclass(frozen=True)
class DihedralGateVerdict:
    feasible: bool
    psd: Verdict
    trig: bool
    determinant: float
    boundary: bool


def dihedral_gate(L, tol: Tolerance = DEFAULT_TOL) -> DihedralGateVerdict:
    """Whether ``L`` (negated dihedral cosines) comes from a trivalent vertex.

    Decided by positivity of ``L``; the trigonometric form
    ``(c34 + c23 c24)**2 <= (1 - c23**2)(1 - c24**2)`` with ``c = -L`` is
    evaluated alongside and must agree.
    """
    M = _real_unit_matrix(L, tol)
    verdict = is_psd(M, tol)
    c23, c24, c34 = -M[0, 1], -M[0, 2], -M[1, 2]
    trig = bool((c34 + c23 * c24) ** 2 <= (1 - c23**2) * (1 - c24**2) + tol.eq_tol)
    d = float(det(M).real)
    if trig != verdict.holds and abs(d) > BAND_FACTOR * tol.eq_tol:
        raise NumericalDisagreementError(f"dihedral gate routes disagree (det {d:.3e})")
    return DihedralGateVerdict(verdict.holds, verdict, trig, d, abs(d) <= tol.eq_tol)


class Amplitude(NamedTuple):
    polynomial: float
    factorized: float


def amplitude_va(va) -> Amplitude:
    """``1 + 2abc - a^2 - b^2 - c^2`` of the vertex cosines and its sine product."""
    a = as_angles(va)
    c = np.cos(a)
    poly = 1 + 2 * c.prod() - np.sum(c**2)
    s = a.sum() / 2
    return Amplitude(float(poly), float(4 * np.sin(s) * np.prod(np.sin(s - a))))


def amplitude_da(da) -> Amplitude:
    """``1 - 2abc - a^2 - b^2 - c^2`` of the dihedral cosines and its cosine product."""
    a = as_angles(da)
    c = np.cos(a)
    poly = 1 - 2 * c.prod() - np.sum(c**2)
    S = a.sum() / 2
    return Amplitude(float(poly), float(-4 * np.cos(S) * np.prod(np.cos(S - a))))


def cayley_p(x, y=None, z=None) -> float:
    """``1 + 2xyz - x^2 - y^2 - z^2``; accepts a point or three coordinates."""
    if y is None and z is None:
        x, y, z = np.array(x, dtype=float).reshape(3)
    x, y, z = float(x), float(y), float(z)
    return 1 + 2 * x * y * z - x * x - y * y - z * z


def cayley_classify(point, tol: Tolerance = DEFAULT_TOL) -> CayleyClass:
    p = np.array(point, dtype=float).reshape(-1)
    if p.size != 3 or not np.all(np.isfinite(p)):
        raise InvalidInputError("expected three finite coordinates")
    if np.any(np.abs(p) > 1.0 + tol.eq_tol):
        return "out_of_box"
    if np.min(np.max(np.abs(SINGULAR_POINTS - p), axis=1)) <= tol.eq_tol:
        return "singular"
    value = cayley_p(p)
    if abs(value) <= tol.eq_tol:
        return "smooth_boundary"
    return "interior" if value > 0 else "exterior"
