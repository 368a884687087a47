"""Independent reference computations shared by the module and acceptance tests."""

import numpy as np

from hyperkos.assembly import GRID_SIZE, V3Problem
from hyperkos.ball import normalize_to_model
from hyperkos.core_linalg import is_psd_batch


def model_kos(X):
    """``(K23, K24, K34)`` from model-position coordinates of a tetrahedron."""
    Y = normalize_to_model(X)
    x3, x4 = Y[2, :3], Y[3, :3]
    xi, beta = x3[0] / np.linalg.norm(x3), x3[1] / np.linalg.norm(x3)
    eta, zeta = x4[0] / np.linalg.norm(x4), x4[1] / np.linalg.norm(x4)
    return np.conj(xi), np.conj(eta), xi * np.conj(eta) + beta * np.conj(zeta)


def v3_grid(prob: V3Problem, size: int = GRID_SIZE, band: float = 1e-6):
    """PSD verdicts of the completed matrix over a grid covering the smaller disk.

    Returns ``(grid_psd, analytic, clear)``: the brute-force verdict per grid
    point, the disk-and-determinant prediction, and a mask of points away
    from every decision boundary by more than ``band``.
    """
    c, r = min(prob.disks, key=lambda cr: cr[1])
    t = np.linspace(-r, r, size)
    Z = (c + t[:, None] + 1j * t[None, :]).ravel()
    Z = Z[np.abs(Z - c) <= r]
    stack = np.repeat(prob.base_matrix[None], len(Z), axis=0)
    stack[:, 0, 3], stack[:, 3, 0] = Z, np.conj(Z)
    grid_psd, lam = is_psd_batch(stack)
    margins = prob.disk_margins(Z)
    value = prob.det_at(Z)
    analytic = np.all(margins >= 0, axis=0) & (value >= 0)
    clear = (np.min(np.abs(margins), axis=0) > band) & (np.abs(value) > band) & (np.abs(lam) > band)
    return grid_psd, analytic, clear
