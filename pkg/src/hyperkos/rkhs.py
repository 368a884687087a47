"""Finite reproducing-kernel data represented by Gram matrices.

Indices are 0-based throughout. For a configuration ``X`` the Gram matrix
has entries ``G[i, j] = 1 / (1 - <<x_i, x_j>>)``, so with ``x_s`` at the
origin ``kos(G, s, i, j) = <<x_i, x_j>> / (|x_i| |x_j|)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ball import as_config, szego_kernel
from .core_linalg import (
    BAND_FACTOR,
    DEFAULT_TOL,
    InvalidInputError,
    NumericalDisagreementError,
    Tolerance,
    Verdict,
    as_hermitian,
    det,
    entry_scale,
    is_pd,
    is_psd,
)

__all__ = [
    "GramSpec",
    "as_gram",
    "gram_of_config",
    "delta_h",
    "delta_matrix",
    "alpha",
    "kos",
    "kos_matrix",
    "mq_matrix",
    "canonical_rescaling_form",
    "is_rescaling_equivalent",
    "regular_subspace",
    "CppCertificate",
    "cpp_certify",
    "cross_ratio",
    "multiplier_slice_extremal",
    "quiggin_gram",
    "QuigginReport",
    "quiggin_report",
]


@dataclass(frozen=True, eq=False)
class GramSpec:
    """Positive definite Hermitian matrix with positive diagonal and no zero entry."""

    matrix: np.ndarray
    tol: Tolerance = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        G = as_hermitian(self.matrix, self.tol)
        diag = G.diagonal().real
        if np.any(diag <= 0):
            raise InvalidInputError("Gram diagonal must be positive")
        floor = self.tol.eq_tol * np.sqrt(np.outer(diag, diag))
        if np.any(np.abs(G) <= floor):
            raise InvalidInputError("Gram matrix has a zero entry (reducible space)")
        if not is_pd(G, self.tol):
            raise InvalidInputError("Gram matrix is not positive definite")
        G.setflags(write=False)
        object.__setattr__(self, "matrix", G)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __getitem__(self, key):
        return self.matrix[key]


def as_gram(G, tol: Tolerance = DEFAULT_TOL) -> GramSpec:
    return G if isinstance(G, GramSpec) else GramSpec(np.asarray(G), tol)


def _index(G: GramSpec, *idx: int) -> None:
    for i in idx:
        if not (0 <= i < G.n):
            raise InvalidInputError(f"index {i} out of range for dimension {G.n}")


def gram_of_config(X, tol: Tolerance = DEFAULT_TOL) -> GramSpec:
    """Gram matrix of the kernel functions at the points of ``X``."""
    A = as_config(X, tol)
    return GramSpec(szego_kernel(A[:, None, :], A[None, :, :]), tol)


def delta_h(G, i: int, j: int) -> float:
    """``sqrt(1 - |G_ij|**2 / (G_ii G_jj))``; a metric on the kernel indices."""
    G = as_gram(G)
    _index(G, i, j)
    if i == j:
        return 0.0
    ratio = abs(G[i, j]) ** 2 / (G[i, i].real * G[j, j].real)
    return float(np.sqrt(max(0.0, 1.0 - ratio)))


def delta_matrix(G) -> np.ndarray:
    G = as_gram(G)
    return np.array([[delta_h(G, i, j) for j in range(G.n)] for i in range(G.n)])


def alpha(G, i: int, j: int, k: int) -> float:
    """Angular invariant ``-arg(G_ij G_jk G_ki)`` on the principal branch."""
    G = as_gram(G)
    _index(G, i, j, k)
    if len({i, j, k}) != 3:
        raise InvalidInputError("alpha needs three distinct indices")
    return float(-np.angle(G[i, j] * G[j, k] * G[k, i]))


def kos(G, s: int, i: int, j: int, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Complex cosine of the angle at ``s`` between the kernels ``i`` and ``j``."""
    G = as_gram(G)
    _index(G, s, i, j)
    if s in (i, j):
        raise InvalidInputError("kos needs the base index distinct from i and j")
    if i == j:
        return 1.0 + 0.0j
    d_si, d_sj = delta_h(G, s, i), delta_h(G, s, j)
    if min(d_si, d_sj) <= tol.eq_tol:
        raise InvalidInputError("kos is undefined for coincident points")
    value = 1.0 - G[i, s] * G[s, j] / (G[s, s] * G[i, j])
    return complex(value / (d_si * d_sj))


def _others(G: GramSpec, s: int) -> list[int]:
    _index(G, s)
    return [i for i in range(G.n) if i != s]


def kos_matrix(G, s: int = 0, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``(n-1) x (n-1)`` matrix of ``kos(G, s, i, j)`` over ``i, j != s`` in order."""
    G = as_gram(G)
    idx = _others(G, s)
    K = np.array([[kos(G, s, i, j, tol) for j in idx] for i in idx], dtype=complex)
    return (K + K.conj().T) / 2


def mq_matrix(G, s: int = 0) -> np.ndarray:
    """Entries ``1 - G_is G_sj / (G_ij G_ss)`` over ``i, j != s``."""
    G = as_gram(G)
    idx = _others(G, s)
    M = np.array(
        [[1.0 - G[i, s] * G[s, j] / (G[i, j] * G[s, s]) for j in idx] for i in idx],
        dtype=complex,
    )
    return (M + M.conj().T) / 2


def canonical_rescaling_form(G) -> np.ndarray:
    """Representative with unit diagonal and a real positive first row."""
    G = as_gram(G)
    M = G.matrix
    phases = np.exp(-1j * np.angle(M[0]))
    phases[0] = 1.0
    d = phases / np.sqrt(M.diagonal().real)
    C = d[:, None].conj() * M * d[None, :]
    return (C + C.conj().T) / 2


def is_rescaling_equivalent(G, H, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when the two Gram matrices differ by a diagonal rescaling."""
    G, H = as_gram(G, tol), as_gram(H, tol)
    if G.n != H.n:
        raise InvalidInputError("dimension mismatch")
    A, B = canonical_rescaling_form(G), canonical_rescaling_form(H)
    return bool(np.max(np.abs(A - B)) <= tol.eq_tol * max(entry_scale(A), entry_scale(B)))


def regular_subspace(G, indices) -> GramSpec:
    """Principal submatrix on ``indices`` (kept in the given order)."""
    G = as_gram(G)
    idx = list(indices)
    if not idx:
        raise InvalidInputError("a regular subspace needs at least one index")
    _index(G, *idx)
    return GramSpec(G.matrix[np.ix_(idx, idx)], G.tol)


@dataclass(frozen=True)
class CppCertificate:
    """``is_cpp`` plus the positivity verdict of every base point's KOS matrix."""

    is_cpp: bool
    witness: Verdict
    by_base: tuple[Verdict, ...]


def cpp_certify(G, tol: Tolerance = DEFAULT_TOL) -> CppCertificate:
    """Decide the complete Pick property from KOS positivity at base 0.

    The KOS matrices at every other base are also tested and must give the
    same answer.
    """
    G = as_gram(G, tol)
    verdicts = tuple(is_psd(kos_matrix(G, s, tol), tol) for s in range(G.n))
    first = verdicts[0]
    for s, v in enumerate(verdicts[1:], start=1):
        if v.holds != first.holds:
            loud = max(abs(v.min_eigenvalue), abs(first.min_eigenvalue))
            if loud > BAND_FACTOR * tol.psd_tol * max(v.scale, first.scale):
                raise NumericalDisagreementError(
                    f"KOS positivity at base 0 is {first.holds} but at base {s} is {v.holds}"
                )
    return CppCertificate(first.holds, first, verdicts)


def cross_ratio(G, i: int, j: int, k: int, l: int) -> complex:
    """``G_ki G_lj / (G_kj G_li)``, invariant under rescaling and automorphisms."""
    G = as_gram(G)
    _index(G, i, j, k, l)
    if len({i, j, k, l}) != 4:
        raise InvalidInputError("cross ratio needs four distinct indices")
    return complex(G[k, i] * G[l, j] / (G[k, j] * G[l, i]))


def multiplier_slice_extremal(G, j: int, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``(0, d_01 kos_0(j, 1), ..., d_0(n-1) kos_0(j, n-1))`` for a CPP space."""
    G = as_gram(G, tol)
    _index(G, j)
    if j == 0:
        raise InvalidInputError("j must differ from the base index 0")
    if not cpp_certify(G, tol).is_cpp:
        raise InvalidInputError("the slice extremal point needs a complete Pick space")
    out = np.zeros(G.n, dtype=complex)
    for t in range(1, G.n):
        out[t] = delta_h(G, 0, t) * kos(G, 0, j, t, tol)
    return out


def quiggin_gram(x: float) -> GramSpec:
    """Four-dimensional family whose 3-point pieces are CPP but whose whole is not."""
    x = float(x)
    if not (0.0 < x < 1.0):
        raise InvalidInputError(f"x must lie in (0, 1), got {x}")
    s = (1.0 - x) * np.sqrt(x)
    G = np.array(
        [
            [1, x, x, x + 1j * s],
            [x, 1, x - 1j * s, x],
            [x, x + 1j * s, 1, x],
            [x - 1j * s, x, x, 1],
        ],
        dtype=complex,
    )
    return GramSpec(G)


def _leading_minor_formulas(x: float) -> list[float]:
    return [(1 + x) ** 2 * (1 - x) ** 4, (1 + x) * (1 - x) ** 2, (1 + x) * (1 - x), 1.0]


@dataclass(frozen=True)
class QuigginReport:
    """Computed determinants next to their closed forms.

    ``leading_minors[k]`` is the size ``k + 1`` leading minor and
    ``leading_minor_formulas[k]`` the closed form matched to it.
    ``j_dets[i]`` is the 2x2 MQ block of the subspace omitting point ``i``.
    """

    x: float
    leading_minors: tuple[float, ...]
    leading_minor_formulas: tuple[float, ...]
    j_dets: tuple[float, ...]
    j_formulas: tuple[float, ...]
    det_mq: float
    det_mq_formula: float
    subspace_cpp: tuple[bool, ...]
    full_cpp: bool


def quiggin_report(x: float, tol: Tolerance = DEFAULT_TOL) -> QuigginReport:
    G = quiggin_gram(x)
    M = G.matrix
    leading = [float(det(M[:k, :k]).real) for k in range(1, 5)]
    # Pair each printed closed form with the minor it matches numerically.
    pool = _leading_minor_formulas(x)
    matched = []
    for value in leading:
        best = min(pool, key=lambda f: abs(f - value))
        pool.remove(best)
        matched.append(best)
    j_dets, sub_cpp = [], []
    for omit in range(4):
        keep = [i for i in range(4) if i != omit]
        J = regular_subspace(G, keep)
        j_dets.append(float(det(mq_matrix(J, 0)).real))
        sub_cpp.append(cpp_certify(J, tol).is_cpp)
    tail = x**2 * (x + 1) * (x - 1) ** 2
    j_form = (tail, tail, tail, x**3 * (x + 1) * (x - 1) ** 2 / (x**2 - x + 1))
    return QuigginReport(
        x=x,
        leading_minors=tuple(leading),
        leading_minor_formulas=tuple(matched),
        j_dets=tuple(j_dets),
        j_formulas=j_form,
        det_mq=float(det(mq_matrix(G, 0)).real),
        det_mq_formula=-(x**3) * (x + 1) ** 2 * (x - 1) ** 4 / (x**2 - x + 1),
        subspace_cpp=tuple(sub_cpp),
        full_cpp=cpp_certify(G, tol).is_cpp,
    )
