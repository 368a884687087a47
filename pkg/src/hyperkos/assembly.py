"""Assembling configurations and kernel spaces from overlapping pieces.

A piece is a Gram matrix together with the global labels of its points.
Every gate here reduces to one matrix: the KOS matrix at a shared base
label, with entries read off whichever piece contains the relevant triple.
Overlapping pieces must agree on the distances to the base and on the kos
values they share (coherence).

Tetrahedron faces use the fixed labeling ``(1, 2, 3)``, ``(1, 3, 4)``,
``(1, 4, 2)`` with derived face ``(2, 3, 4)``. The third face is listed
against the orientation of the other two, so its kos enters conjugated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable, Sequence

import numpy as np

from .core_linalg import (
    BAND_FACTOR,
    DEFAULT_TOL,
    InvalidInputError,
    NumericalDisagreementError,
    Tolerance,
    det,
    entry_scale,
    is_psd,
    principal_minors,
)
from .moduli import ModuliPoint, decode
from .rkhs import (
    GramSpec,
    as_gram,
    cpp_certify,
    delta_h,
    gram_of_config,
    is_rescaling_equivalent,
    kos_matrix,
    regular_subspace,
)
from .triangles import TriangleSDoublePrime, TriangleSPrime, sdp_of_gram

__all__ = [
    "IncompleteCoverError",
    "Piece",
    "AssemblyVerdict",
    "validate_matched",
    "validate_cocycle",
    "derive_fourth",
    "tetra_gate",
    "q1_from_triangles",
    "third_triangle_disk",
    "assemble_v1",
    "assemble_v2",
    "V3Problem",
    "v3_problem",
    "assemble_v3",
    "q2_gate",
    "DEFAULT_RHO",
]

# Edge length used for witnesses when the caller supplies none.
DEFAULT_RHO = 0.5

# Resolution of the fallback z-grid in the one-missing-entry completion.
GRID_SIZE = 201


class IncompleteCoverError(InvalidInputError):
    """Some entry of the assembled matrix is not covered by any piece."""


@dataclass(frozen=True, eq=False)
class Piece:
    """A Gram matrix whose local index ``i`` carries global label ``labels[i]``."""

    gram: GramSpec
    labels: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise InvalidInputError(f"piece labels must be distinct, got {labels}")
        if len(labels) != self.gram.n:
            raise InvalidInputError("piece needs one label per point")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_config(cls, X, labels, tol: Tolerance = DEFAULT_TOL) -> "Piece":
        return cls(gram_of_config(X, tol), tuple(labels))

    @classmethod
    def from_gram(cls, G, labels, tol: Tolerance = DEFAULT_TOL) -> "Piece":
        return cls(as_gram(G, tol), tuple(labels))

    def local(self, label: Hashable) -> int:
        return self.labels.index(label)


@dataclass(frozen=True, eq=False)
class AssemblyVerdict:
    """Gate outcome.

    ``witness`` is a configuration exactly when ``feasible``; otherwise
    ``failing_minor`` names (by label) a principal submatrix with negative
    determinant when one exists. ``boundary`` flags a decisive quantity
    inside the tolerance band.
    """

    feasible: bool
    witness: np.ndarray | None = None
    failing_minor: tuple | None = None
    matrix: np.ndarray | None = None
    labels: tuple = ()
    boundary: bool = False
    gram: GramSpec | None = None
    details: dict[str, Any] = field(default_factory=dict)


def _wrap(angle: float) -> float:
    """Representative of ``angle`` modulo ``2 pi`` in ``(-pi, pi]``."""
    out = float(np.angle(np.exp(1j * angle)))
    return np.pi if out == -np.pi else out


def _to_gram(item, tol: Tolerance) -> GramSpec:
    if isinstance(item, GramSpec):
        return item
    return gram_of_config(item, tol)


def validate_matched(pieces: Sequence[Piece], tol: Tolerance = DEFAULT_TOL) -> bool:
    """Every pair of labels shared by two pieces has one common distance."""
    seen: dict[frozenset, float] = {}
    for p in pieces:
        if not isinstance(p, Piece):
            raise InvalidInputError("validate_matched expects Piece objects")
        for i in range(p.gram.n):
            for j in range(i + 1, p.gram.n):
                key = frozenset((p.labels[i], p.labels[j]))
                d = delta_h(p.gram, i, j)
                if key in seen and abs(seen[key] - d) > tol.eq_tol:
                    return False
                seen.setdefault(key, d)
    return True


def validate_cocycle(a123: float, a234: float, a341: float, a412: float, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``a123 - a234 + a341 - a412 = 0`` modulo ``2 pi``."""
    return abs(_wrap(a123 - a234 + a341 - a412)) <= tol.eq_tol


def derive_fourth(
    f123: TriangleSPrime, f134: TriangleSPrime, f142: TriangleSPrime, tol: Tolerance = DEFAULT_TOL
) -> TriangleSPrime:
    """The face ``(2, 3, 4)`` forced by three matched faces at vertex 1.

    Sides come from the faces' far edges; the angular invariant solves the
    cocycle identity, ``a234 = a123 + a134 + a142``.
    """
    shared = [(f123.d13, f134.d12), (f134.d13, f142.d12), (f142.d13, f123.d12)]
    if any(abs(u - v) > tol.eq_tol for u, v in shared):
        raise InvalidInputError("faces are not matched along the edges at vertex 1")
    a234 = _wrap(f123.alpha123 + f134.alpha123 + f142.alpha123)
    return TriangleSPrime(f123.d23, f142.d23, f134.d23, a234)


def _lemma_conditions(a1: complex, a2: complex, a3: complex, tol: Tolerance):
    """The four equivalent positivity tests for a unit-diagonal 3x3 matrix."""
    N = np.array(
        [[1, a1, a2], [np.conj(a1), 1, a3], [np.conj(a2), np.conj(a3), 1]], dtype=complex
    )
    verdict = is_psd(N, tol)
    determinant = float(det(N).real)
    polynomial = float(1 + 2 * np.real(a1 * np.conj(a2) * a3) - abs(a1) ** 2 - abs(a2) ** 2 - abs(a3) ** 2)
    disk = float((1 - abs(a1) ** 2) * (1 - abs(a2) ** 2) - abs(a3 - np.conj(a1) * a2) ** 2)
    return N, verdict, determinant, polynomial, disk


def tetra_gate(K23: complex, K24: complex, K34: complex, rho=None, tol: Tolerance = DEFAULT_TOL) -> AssemblyVerdict:
    """Whether three vertex kos values fit together at one tetrahedron vertex.

    Feasible iff ``|K34 - conj(K23) K24|**2 <= (1 - |K23|**2)(1 - |K24|**2)``.
    The matrix positivity test, its determinant, the expanded determinant
    polynomial and the disk inequality are all evaluated and must agree.
    """
    K23, K24, K34 = complex(K23), complex(K24), complex(K34)
    if abs(K23) > 1 + tol.eq_tol or abs(K24) > 1 + tol.eq_tol:
        raise InvalidInputError("|K23| and |K24| must not exceed 1")
    N, verdict, determinant, polynomial, disk = _lemma_conditions(K23, K24, K34, tol)
    margin = tol.eq_tol * entry_scale(N) ** 3
    votes = {
        "psd": verdict.holds,
        "det": determinant >= -margin,
        "polynomial": polynomial >= -margin,
        "disk": disk >= -margin,
    }
    boundary = min(abs(determinant), abs(polynomial), abs(disk)) <= BAND_FACTOR * margin or (
        abs(verdict.min_eigenvalue) <= BAND_FACTOR * tol.psd_tol * verdict.scale
    )
    if len(set(votes.values())) > 1 and not boundary:
        raise NumericalDisagreementError(f"matrix-condition tests disagree: {votes}")
    feasible = votes["disk"]
    details = {
        "conditions": votes,
        "determinant": determinant,
        "polynomial": polynomial,
        "disk_margin": disk,
        "min_eigenvalue": verdict.min_eigenvalue,
    }
    labels = (2, 3, 4)
    if not feasible:
        failing = tuple(labels[i] for i in verdict.minor_subset) if verdict.minor_subset else labels
        return AssemblyVerdict(False, None, failing, N, labels, boundary, details=details)
    rho = np.full(3, DEFAULT_RHO) if rho is None else np.asarray(rho, dtype=float)
    witness = decode(ModuliPoint(rho, N, tol), dimension=3)
    return AssemblyVerdict(True, witness, None, N, labels, boundary, details=details)


def _face_data(face, tol: Tolerance) -> TriangleSDoublePrime:
    G = _to_gram(face, tol)
    if G.n != 3:
        raise InvalidInputError("each face must have three points")
    return sdp_of_gram(G)


def q1_from_triangles(t123, t134, t142, tol: Tolerance = DEFAULT_TOL) -> AssemblyVerdict:
    """Assemble three faces sharing vertex 1 into a tetrahedron.

    Each face is a 3-point configuration or a 3x3 :class:`GramSpec` listed
    in the vertex order of its name. Only the kos values decide
    feasibility; the matched side lengths position the witness.
    """
    f1, f2, f3 = (_face_data(t, tol) for t in (t123, t134, t142))
    shared = [(f1.d13, f2.d12), (f2.d13, f3.d12), (f3.d13, f1.d12)]
    if any(abs(u - v) > tol.eq_tol for u, v in shared):
        raise InvalidInputError("faces are not matched along the edges at vertex 1")
    rho = np.array([f1.d12, f1.d13, f2.d13])
    verdict = tetra_gate(f1.kos123, np.conj(f3.kos123), f2.kos123, rho, tol)
    if verdict.feasible:
        X = verdict.witness
        rebuilt = [_face_data(X[list(idx)], tol) for idx in ((0, 1, 2), (0, 2, 3), (0, 3, 1))]
        gap = max(
            max(abs(a.d12 - b.d12), abs(a.d13 - b.d13), abs(a.kos123 - b.kos123))
            for a, b in zip(rebuilt, (f1, f2, f3))
        )
        verdict.details["face_gap"] = gap
    return verdict


def third_triangle_disk(K23: complex, K24: complex) -> tuple[complex, float]:
    """Center and radius of the disk of admissible ``K34`` values."""
    K23, K24 = complex(K23), complex(K24)
    if abs(K23) > 1 or abs(K24) > 1:
        raise InvalidInputError("|K23| and |K24| must not exceed 1")
    return np.conj(K23) * K24, float(np.sqrt((1 - abs(K23) ** 2) * (1 - abs(K24) ** 2)))


@dataclass
class _BaseData:
    order: list
    rho: dict
    entries: dict


def _agree(store: dict, key, value, what: str, tol: Tolerance) -> None:
    if key in store:
        if abs(store[key] - value) > tol.eq_tol:
            raise InvalidInputError(f"coherence violation: pieces disagree on {what} {key}")
    else:
        store[key] = value


def _collect(pieces: Sequence[Piece], base, tol: Tolerance, order=None) -> _BaseData:
    data = _BaseData(list(order) if order else [], {}, {})
    for p in pieces:
        if base not in p.labels:
            raise InvalidInputError(f"piece {p.labels} does not contain the base label {base!r}")
        b = p.local(base)
        others = [i for i in range(p.gram.n) if i != b]
        K = kos_matrix(p.gram, b, tol)
        for u, i in enumerate(others):
            li = p.labels[i]
            if li not in data.order:
                if order:
                    raise InvalidInputError(f"unexpected label {li!r}")
                data.order.append(li)
            _agree(data.rho, li, delta_h(p.gram, b, i), "distance to the base at", tol)
            for v, j in enumerate(others):
                if u != v:
                    _agree(data.entries, (li, p.labels[j]), K[u, v], "kos entry", tol)
    return data


def _matrix(data: _BaseData, allow_missing=()) -> np.ndarray:
    m = len(data.order)
    M = np.eye(m, dtype=complex)
    missing = []
    for a in range(m):
        for b in range(m):
            if a == b:
                continue
            key = (data.order[a], data.order[b])
            if key in data.entries:
                M[a, b] = data.entries[key]
            elif key in allow_missing or key[::-1] in allow_missing:
                M[a, b] = 0.0
            elif a < b:
                missing.append(key)
    if missing:
        raise IncompleteCoverError(f"no piece covers the pairs {missing}")
    return (M + M.conj().T) / 2


def _default_base(pieces: Sequence[Piece], base):
    if not pieces:
        raise InvalidInputError("no pieces given")
    return pieces[0].labels[0] if base is None else base


def _finish(M: np.ndarray, data: _BaseData, base, feasible: bool, verdict, tol, details) -> AssemblyVerdict:
    labels = tuple(data.order)
    if not feasible:
        subset = verdict.minor_subset if verdict is not None else None
        failing = tuple(labels[i] for i in subset) if subset else None
        return AssemblyVerdict(False, None, failing, M, labels, details=details)
    rho = np.array([data.rho[label] for label in labels])
    witness = decode(ModuliPoint(rho, M, tol), dimension=len(labels))
    details.setdefault("witness_labels", (base,) + labels)
    return AssemblyVerdict(True, witness, None, M, labels, details=details)


def assemble_v1(pieces: Sequence[Piece], base=None, tol: Tolerance = DEFAULT_TOL) -> AssemblyVerdict:
    """Triangles sharing the base label, one for every pair of other labels."""
    base = _default_base(pieces, base)
    data = _collect(pieces, base, tol)
    M = _matrix(data)
    verdict = is_psd(M, tol)
    details = {"minors": [(tuple(data.order[i] for i in s), v) for s, v in principal_minors(M, tol)]}
    return _finish(M, data, base, verdict.holds, verdict, tol, details)


def assemble_v2(pieces: Sequence[Piece], base=None, tol: Tolerance = DEFAULT_TOL) -> AssemblyVerdict:
    """Facets that each omit one non-base label.

    Every proper principal minor lies inside some facet, so only the full
    determinant decides; the eigenvalue route is kept as a cross-check.
    """
    base = _default_base(pieces, base)
    for p in pieces:
        if not cpp_certify(p.gram, tol).is_cpp:
            raise InvalidInputError(f"facet {p.labels} is not a complete Pick space")
    data = _collect(pieces, base, tol)
    M = _matrix(data)
    determinant = float(det(M).real)
    margin = tol.eq_tol * entry_scale(M) ** len(M)
    feasible = determinant >= -margin
    verdict = is_psd(M, tol)
    if verdict.holds != feasible and abs(determinant) > BAND_FACTOR * margin and (
        abs(verdict.min_eigenvalue) > BAND_FACTOR * tol.psd_tol * verdict.scale
    ):
        raise NumericalDisagreementError("facet determinant and eigenvalue tests disagree")
    details = {"determinant": determinant}
    return _finish(M, data, base, feasible, verdict, tol, details)


@dataclass(frozen=True, eq=False)
class V3Problem:
    """KOS matrix over ``(a_only, s1, s2, b_only)`` with unknown corner ``z``.

    ``det(z) = c0 + 2 Re(w z) - d |z|**2`` where ``d`` is the determinant of
    the shared middle block. The 3x3 blocks through the corner confine ``z``
    to two disks.
    """

    base_matrix: np.ndarray
    labels: tuple
    c0: float
    w: complex
    d: float
    disks: tuple[tuple[complex, float], tuple[complex, float]]

    def matrix_at(self, z: complex) -> np.ndarray:
        return _corner(self.base_matrix, z)

    def det_at(self, z):
        z = np.asarray(z, dtype=complex)
        return self.c0 + 2 * np.real(self.w * z) - self.d * np.abs(z) ** 2

    def disk_margins(self, z):
        z = np.asarray(z, dtype=complex)
        return np.stack([r - np.abs(z - c) for c, r in self.disks])


def _corner(M: np.ndarray, z: complex) -> np.ndarray:
    out = M.copy()
    out[0, 3], out[3, 0] = z, np.conj(z)
    return out


def _v3_setup(piece_a: Piece, piece_b: Piece, base, tol: Tolerance):
    base = _default_base([piece_a, piece_b], base)
    shared = [x for x in piece_a.labels if x in piece_b.labels]
    if len(piece_a.labels) != 4 or len(piece_b.labels) != 4 or len(shared) != 3 or base not in shared:
        raise InvalidInputError("v3 needs two 4-point pieces sharing three labels, base included")
    (a_only,) = [x for x in piece_a.labels if x not in shared]
    (b_only,) = [x for x in piece_b.labels if x not in shared]
    s1, s2 = [x for x in shared if x != base]
    data = _collect([piece_a, piece_b], base, tol, order=[a_only, s1, s2, b_only])
    M = _matrix(data, allow_missing={(a_only, b_only)})
    # det is quadratic in (Re z, Im z); three evaluations fix its coefficients.
    c0 = float(det(M).real)
    d = float(1.0 - abs(M[1, 2]) ** 2)
    at_one = float(det(_corner(M, 1.0)).real)
    at_i = float(det(_corner(M, 1j)).real)
    w = complex((at_one - c0 + d) / 2, -(at_i - c0 + d) / 2)
    disks = []
    for p in (1, 2):
        k_ap, k_pb = M[0, p], M[p, 3]
        radius = np.sqrt(max(0.0, (1 - abs(k_ap) ** 2) * (1 - abs(k_pb) ** 2)))
        disks.append((complex(k_ap * k_pb), float(radius)))
    return V3Problem(M, tuple(data.order), c0, w, d, tuple(disks)), data, base


def v3_problem(piece_a: Piece, piece_b: Piece, base=None, tol: Tolerance = DEFAULT_TOL) -> V3Problem:
    """Set up the completion problem for two 4-point pieces sharing a triangle."""
    return _v3_setup(piece_a, piece_b, base, tol)[0]


def _circle_candidates(prob: V3Problem) -> list[complex]:
    # On a circle the determinant is a sinusoid in the angle; off its peak
    # the best point of an arc is an arc endpoint, i.e. a circle crossing.
    out = []
    for c, r in prob.disks:
        if r <= 0.0:
            out.append(c)
            continue
        pull = prob.w - prob.d * np.conj(c)
        direction = np.conj(pull) / abs(pull) if abs(pull) > 0 else 1.0
        out.append(c + r * direction)
    (c1, r1), (c2, r2) = prob.disks
    gap = abs(c2 - c1)
    if 0 < gap <= r1 + r2 and gap >= abs(r1 - r2):
        along = (r1**2 - r2**2 + gap**2) / (2 * gap)
        half = np.sqrt(max(0.0, r1**2 - along**2))
        unit = (c2 - c1) / gap
        mid = c1 + along * unit
        out += [mid + 1j * half * unit, mid - 1j * half * unit]
    return out


def _grid_candidates(prob: V3Problem) -> list[complex]:
    c, r = min(prob.disks, key=lambda cr: cr[1])
    t = np.linspace(-r, r, GRID_SIZE)
    return list((c + t[:, None] + 1j * t[None, :]).ravel())


def assemble_v3(piece_a: Piece, piece_b: Piece, base=None, tol: Tolerance = DEFAULT_TOL) -> AssemblyVerdict:
    """Two 4-point pieces sharing a triangle; one KOS entry is free.

    Searches for a corner value ``z`` making the 4x4 KOS matrix PSD: the
    3x3 minors through the corner confine ``z`` to two disks and the full
    determinant is a concave quadratic in ``z``. Its maximum over the disk
    intersection is found from the stationary point, the best point on each
    circle and the circle crossings; when the middle block is singular a
    grid of ``GRID_SIZE**2`` points over the smaller disk is added.
    """
    prob, data, base = _v3_setup(piece_a, piece_b, base, tol)
    details: dict[str, Any] = {"disks": prob.disks, "c0": prob.c0, "w": prob.w, "d": prob.d}
    labels = prob.labels
    for idx in ([0, 1, 2], [1, 2, 3]):
        if not is_psd(prob.base_matrix[np.ix_(idx, idx)], tol):
            details["method"] = "blocks"
            return AssemblyVerdict(False, None, tuple(labels[i] for i in idx), prob.base_matrix, labels,
                                   details=details)
    candidates = [("boundary", z) for z in _circle_candidates(prob)]
    if prob.d > tol.psd_tol:
        candidates.append(("stationary", np.conj(prob.w) / prob.d))
    else:
        candidates += [("grid", z) for z in _grid_candidates(prob)]
    kinds = [k for k, _ in candidates]
    Z = np.array([z for _, z in candidates], dtype=complex)
    inside = np.flatnonzero(np.all(prob.disk_margins(Z) >= -tol.eq_tol, axis=0))
    if inside.size == 0:
        details["method"] = "disjoint"
        return AssemblyVerdict(False, None, (labels[0], labels[1], labels[3]), prob.base_matrix, labels,
                               details=details)
    values = prob.det_at(Z[inside])
    best = inside[int(np.argmax(values))]
    z = complex(Z[best])
    top = float(prob.det_at(z))
    details.update(method=kinds[best], z=z, max_det=top)
    M = prob.matrix_at(z)
    return _finish(M, data, base, top >= -tol.eq_tol, is_psd(M, tol), tol, details)


def q2_gate(pieces: Sequence[Piece], base=None, tol: Tolerance = DEFAULT_TOL) -> AssemblyVerdict:
    """Three-point complete Pick spaces assembled into a four-point one.

    On success the witness Gram matrix has regular subspaces
    rescaling-equivalent to each input on its labels.
    """
    base = _default_base(pieces, base)
    for p in pieces:
        if p.gram.n != 3:
            raise InvalidInputError("q2_gate takes three-dimensional pieces")
        if not cpp_certify(p.gram, tol).is_cpp:
            raise InvalidInputError(f"piece {p.labels} is not a complete Pick space")
    data = _collect(pieces, base, tol)
    M = _matrix(data)
    verdict = is_psd(M, tol)
    out = _finish(M, data, base, verdict.holds, verdict, tol, {})
    if not out.feasible:
        return out
    H = gram_of_config(out.witness, tol)
    position = {label: i for i, label in enumerate(out.details["witness_labels"])}
    matches = [
        is_rescaling_equivalent(regular_subspace(H, [position[x] for x in p.labels]), p.gram, tol)
        for p in pieces
    ]
    out.details["subspaces_match"] = matches
    return AssemblyVerdict(True, out.witness, None, M, out.labels, out.boundary, H, out.details)
