"""Dense complex linear algebra with two independent positivity tests.

Every positivity decision in the package goes through :func:`is_psd` or
:func:`is_pd`. Both run an eigenvalue test and a determinant (Sylvester)
scan built on the hand-written pivoted elimination in :func:`det`; the two
routes must agree unless the smallest eigenvalue sits inside the tolerance
band around zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

__all__ = [
    "InvalidInputError",
    "NumericalDisagreementError",
    "Tolerance",
    "DEFAULT_TOL",
    "Verdict",
    "entry_scale",
    "as_square",
    "as_hermitian",
    "det",
    "principal_minors",
    "is_psd",
    "is_pd",
    "is_psd_batch",
    "gram_factorize",
]

# Disagreements between the eigenvalue and determinant routes are only
# reported once the smallest eigenvalue is this many tolerances from zero.
BAND_FACTOR = 10.0


class InvalidInputError(ValueError):
    """Input violates a documented precondition or type invariant."""


class NumericalDisagreementError(ArithmeticError):
    """Two independent numerical routes disagree outside the tolerance band."""


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerances, scaled by ``max(1, largest |entry|)``.

    ``eq_tol`` governs scalar equality, ``psd_tol`` the eigenvalue floor and
    numerical rank.
    """

    eq_tol: float = 1e-9
    psd_tol: float = 1e-9

    def __post_init__(self):
        for name in ("eq_tol", "psd_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise InvalidInputError(f"{name} must lie in (0, 1), got {value!r}")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Verdict:
    """Outcome of a positivity test.

    ``minor_subset``/``minor_value`` name the most negative principal minor
    found by the determinant scan (or the failing leading minor for
    :func:`is_pd`). Subsets use 0-based indices.
    """

    holds: bool
    min_eigenvalue: float
    scale: float
    minor_subset: tuple[int, ...] | None = None
    minor_value: float | None = None

    def __bool__(self) -> bool:
        return self.holds


def entry_scale(A) -> float:
    """``max(1, max |A_ij|)``, the reference size for relative tolerances."""
    A = np.asarray(A)
    if A.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(A))))


def as_square(A) -> np.ndarray:
    """Return ``A`` as a complex square array with ``n >= 1``."""
    M = np.array(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise InvalidInputError(f"expected a nonempty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidInputError("matrix has non-finite entries")
    return M


def as_hermitian(A, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Validate Hermitian symmetry and return the exactly symmetrized copy.

    Matrices that miss symmetry by more than ``eq_tol`` (relative) are
    rejected rather than repaired.
    """
    M = as_square(A)
    gap = float(np.max(np.abs(M - M.conj().T)))
    if gap > tol.eq_tol * entry_scale(M):
        raise InvalidInputError(f"matrix is not Hermitian (asymmetry {gap:.3e})")
    return (M + M.conj().T) / 2


def det(A):
    """Determinant by Gaussian elimination with partial pivoting.

    Accepts a single square matrix or a stack ``(..., n, n)``; returns a
    complex scalar or an array of the stack's leading shape.
    """
    a = np.array(A, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] == 0:
        raise InvalidInputError(f"expected square matrices, got shape {a.shape}")
    n = a.shape[-1]
    lead = a.shape[:-2]
    a = a.reshape(-1, n, n)
    count = a.shape[0]
    rows = np.arange(count)
    result = np.ones(count, dtype=complex)
    for k in range(n):
        piv = k + np.argmax(np.abs(a[:, k:, k]), axis=1)
        moved = piv != k
        if moved.any():
            top = a[rows, k, :].copy()
            a[rows, k, :] = a[rows, piv, :]
            a[rows, piv, :] = top
            result[moved] *= -1.0
        pivot = a[:, k, k]
        result *= pivot
        if k + 1 < n:
            nonzero = pivot != 0
            factors = np.zeros((count, n - k - 1), dtype=complex)
            factors[nonzero] = a[nonzero, k + 1 :, k] / pivot[nonzero, None]
            a[:, k + 1 :, k:] -= factors[:, :, None] * a[:, None, k, k:]
    if lead == ():
        return complex(result[0])
    return result.reshape(lead)


def _minors_of_size(M: np.ndarray, k: int):
    subsets = np.array(list(combinations(range(M.shape[0]), k)), dtype=int)
    blocks = M[subsets[:, :, None], subsets[:, None, :]]
    return subsets, det(blocks).real


def principal_minors(A, tol: Tolerance = DEFAULT_TOL) -> list[tuple[tuple[int, ...], float]]:
    """All ``2**n - 1`` principal minors of a Hermitian matrix.

    Returns ``(subset, minor)`` pairs ordered by subset size, then
    lexicographically; subsets are 0-based index tuples.
    """
    M = as_hermitian(A, tol)
    out = []
    for k in range(1, M.shape[0] + 1):
        subsets, values = _minors_of_size(M, k)
        out.extend((tuple(int(i) for i in s), float(v)) for s, v in zip(subsets, values))
    return out


def _sylvester_scan(M: np.ndarray, tol: Tolerance, scale: float):
    """Most negative scale-normalized principal minor and its subset."""
    worst_subset, worst_value, worst_ratio = None, None, np.inf
    for k in range(1, M.shape[0] + 1):
        subsets, values = _minors_of_size(M, k)
        ratios = values / scale**k
        i = int(np.argmin(ratios))
        if ratios[i] < worst_ratio:
            worst_ratio = float(ratios[i])
            worst_subset = tuple(int(j) for j in subsets[i])
            worst_value = float(values[i])
    return worst_subset, worst_value, worst_ratio >= -tol.psd_tol


def is_psd(A, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Positive semidefiniteness with an eigenvalue and a Sylvester route.

    Eigenvalues in ``[-psd_tol*scale, psd_tol*scale]`` count as zero. The
    determinant scan checks every principal minor; if the two routes
    disagree while the smallest eigenvalue lies outside a band of
    ``10*psd_tol*scale``, :class:`NumericalDisagreementError` is raised.
    """
    M = as_hermitian(A, tol)
    scale = entry_scale(M)
    lam = float(np.linalg.eigvalsh(M)[0])
    by_eig = lam >= -tol.psd_tol * scale
    subset, value, by_minors = _sylvester_scan(M, tol, scale)
    if by_eig != by_minors and abs(lam) > BAND_FACTOR * tol.psd_tol * scale:
        raise NumericalDisagreementError(
            f"eigenvalue route says {by_eig}, minor scan says {by_minors} "
            f"(min eigenvalue {lam:.3e}, minor {subset} = {value:.3e})"
        )
    return Verdict(by_eig, lam, scale, subset, value)


def is_psd_batch(stack, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`is_psd` over a stack ``(..., n, n)``.

    Returns the verdicts and smallest eigenvalues; raises on a disagreement
    between the two routes outside the band, like the scalar version.
    """
    A = np.array(stack, dtype=complex)
    if A.ndim < 2 or A.shape[-1] != A.shape[-2] or A.shape[-1] == 0:
        raise InvalidInputError(f"expected a stack of square matrices, got shape {A.shape}")
    n = A.shape[-1]
    scale = np.maximum(1.0, np.max(np.abs(A), axis=(-2, -1)))
    gap = np.max(np.abs(A - np.swapaxes(A.conj(), -1, -2)), axis=(-2, -1))
    if np.any(gap > tol.eq_tol * scale):
        raise InvalidInputError("stack contains a non-Hermitian matrix")
    A = (A + np.swapaxes(A.conj(), -1, -2)) / 2
    lam = np.linalg.eigvalsh(A)[..., 0]
    by_eig = lam >= -tol.psd_tol * scale
    worst = np.full(scale.shape, np.inf)
    for k in range(1, n + 1):
        subsets = np.array(list(combinations(range(n), k)), dtype=int)
        blocks = A[..., subsets[:, :, None], subsets[:, None, :]]
        worst = np.minimum(worst, np.min(det(blocks).real, axis=-1) / scale**k)
    by_minors = worst >= -tol.psd_tol
    loud = np.abs(lam) > BAND_FACTOR * tol.psd_tol * scale
    if np.any((by_eig != by_minors) & loud):
        raise NumericalDisagreementError("eigenvalue and minor routes disagree on a stack entry")
    return by_eig, lam


def is_pd(A, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Strict positivity: eigenvalues and leading minors above the floor.

    The minor route tests the ratios ``m_k / m_(k-1)`` of consecutive
    leading minors (the elimination pivots) against ``psd_tol*scale``. All
    ratios are positive exactly when all leading minors are, and the
    smallest ratio of a positive definite matrix is at least its smallest
    eigenvalue, so the two floors are comparable.
    """
    M = as_hermitian(A, tol)
    scale = entry_scale(M)
    lam = float(np.linalg.eigvalsh(M)[0])
    by_eig = lam > tol.psd_tol * scale
    n = M.shape[0]
    leading = [float(det(M[:k, :k]).real) for k in range(1, n + 1)]
    failing = None
    for k in range(n):
        below = leading[k - 1] if k else 1.0
        if below <= 0 or leading[k] / below <= tol.psd_tol * scale:
            failing = k
            break
    by_minors = failing is None
    if by_eig != by_minors and abs(lam - tol.psd_tol * scale) > BAND_FACTOR * tol.psd_tol * scale:
        raise NumericalDisagreementError(
            f"eigenvalue route says {by_eig}, leading minors say {by_minors} "
            f"(min eigenvalue {lam:.3e})"
        )
    k = n - 1 if failing is None else failing
    return Verdict(by_eig, lam, scale, tuple(range(k + 1)), leading[k])


def gram_factorize(A, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Vectors ``w_i`` (rows of the result) with ``<<w_i, w_j>> = A[i, j]``.

    Uses the spectral square root truncated to the numerical rank ``r``
    (eigenvalues above ``psd_tol*scale``), so the result has shape
    ``(n, r)`` with ``r >= 1``.
    """
    M = as_hermitian(A, tol)
    if not is_psd(M, tol):
        raise InvalidInputError("gram_factorize needs a positive semidefinite matrix")
    lam, V = np.linalg.eigh(M)
    keep = lam > tol.psd_tol * entry_scale(M)
    if not keep.any():
        keep[-1] = True
    lam = np.clip(lam[keep], 0.0, None)
    return V[:, keep] * np.sqrt(lam)[None, :]
