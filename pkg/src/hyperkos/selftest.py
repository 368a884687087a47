"""Quick randomized health check over every module, driven by one seed."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .areas import area_ch1, polygon_area_ch1
from .assembly import q1_from_triangles
from .ball import random_automorphism, random_points
from .core_linalg import DEFAULT_TOL, BAND_FACTOR, NumericalDisagreementError, Tolerance, is_psd
from .moduli import congruent, decode, encode
from .realhyp import amplitude_da, amplitude_va, cva_matrix, gda_check, gva_check, neg_cda_matrix
from .rkhs import alpha, delta_matrix, gram_of_config, kos_matrix, quiggin_report, regular_subspace

__all__ = ["run_selftest"]


def _psd_engine(rng, tol: Tolerance) -> str:
    for _ in range(100):
        n = int(rng.integers(1, 7))
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        H = A @ A.conj().T - rng.random() * n * np.eye(n)
        is_psd(H, tol)  # raises when the two routes disagree outside the band
    return "100 matrices"


def _quiggin(rng, tol: Tolerance) -> str:
    r = quiggin_report(0.25, tol)
    gap = abs(r.det_mq - r.det_mq_formula) / abs(r.det_mq_formula)
    if gap > 1e-9 or r.full_cpp or not all(r.subspace_cpp):
        raise AssertionError(f"relative gap {gap:.3e}, verdicts {r.subspace_cpp} / {r.full_cpp}")
    return f"det MQ {r.det_mq:.10g}"


def _moduli(rng, tol: Tolerance) -> str:
    for _ in range(20):
        X = random_points(rng, int(rng.integers(3, 6)), int(rng.integers(2, 5)))
        m = encode(X, tol)
        if not congruent(X, decode(m), tol) or not encode(decode(m), tol).close_to(m, tol):
            raise AssertionError("encoding round trip failed")
    return "20 configurations"


def _invariance(rng, tol: Tolerance) -> str:
    worst = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 4))
        X = random_points(rng, 4, dim)
        Y = random_automorphism(rng, dim)(X)
        G, H = gram_of_config(X, tol), gram_of_config(Y, tol)
        worst = max(
            worst,
            float(np.max(np.abs(delta_matrix(G) - delta_matrix(H)))),
            float(np.max(np.abs(kos_matrix(G, 0, tol) - kos_matrix(H, 0, tol)))),
            abs(alpha(G, 0, 1, 2) - alpha(H, 0, 1, 2)),
        )
    if worst > 1e-8:
        raise AssertionError(f"invariants moved by {worst:.3e}")
    return f"max drift {worst:.3e}"


def _tetrahedra(rng, tol: Tolerance) -> str:
    for _ in range(10):
        X = random_points(rng, 4, 3)
        G = gram_of_config(X, tol)
        faces = [regular_subspace(G, idx) for idx in ((0, 1, 2), (0, 2, 3), (0, 3, 1))]
        v = q1_from_triangles(*faces, tol=tol)
        if not v.feasible or not congruent(X, v.witness, tol):
            raise AssertionError("faces of a tetrahedron were not reassembled")
    return "10 tetrahedra"


def _real_angles(rng, tol: Tolerance) -> str:
    for _ in range(200):
        g = rng.uniform(0.05, np.pi - 0.05, size=3)
        for check, M in ((gva_check, cva_matrix(g)), (gda_check, neg_cda_matrix(g))):
            v = is_psd(M, tol)
            if abs(v.min_eigenvalue) > BAND_FACTOR * tol.psd_tol and check(g, tol) != v.holds:
                raise NumericalDisagreementError("angle criterion disagrees with matrix positivity")
        for amp in (amplitude_va(g), amplitude_da(g)):
            if abs(amp.polynomial - amp.factorized) > 1e-9:
                raise AssertionError("amplitude factorization failed")
    return "200 triples"


def _areas(rng, tol: Tolerance) -> str:
    for _ in range(20):
        z = random_points(rng, 3, 1)[:, 0]
        area_ch1(z, tol=tol)  # raises when the two expressions disagree
        r = rng.uniform(0.2, 0.9)
        ring = r * np.exp(1j * np.sort(rng.uniform(0, 2 * np.pi, size=5)))
        total = sum(area_ch1(ring[[0, k, k + 1]], tol=tol) for k in range(1, 4))
        if abs(polygon_area_ch1(ring, tol=tol) - total) > 1e-9:
            raise AssertionError("polygon area differs from its triangulation")
    return "20 triangles and pentagons"


CHECKS: list[tuple[str, Callable]] = [
    ("psd_engine", _psd_engine),
    ("quiggin", _quiggin),
    ("moduli_round_trip", _moduli),
    ("automorphism_invariance", _invariance),
    ("tetrahedron_assembly", _tetrahedra),
    ("real_angle_criteria", _real_angles),
    ("areas", _areas),
]


def run_selftest(seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> list[dict]:
    """Run every check; each entry records the name, outcome and a short note."""
    rng = np.random.default_rng(seed)
    results = []
    for name, check in CHECKS:
        try:
            results.append({"name": name, "passed": True, "detail": check(rng, tol)})
        except (AssertionError, ArithmeticError, ValueError) as exc:
            results.append({"name": name, "passed": False, "detail": f"{type(exc).__name__}: {exc}"})
    return results
