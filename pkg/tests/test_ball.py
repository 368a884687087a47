import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperkos.ball import (
    Automorphism,
    as_config,
    as_point,
    involution,
    normalize_to_model,
    project_to_complex_geodesic,
    pseudo_dist,
    random_automorphism,
    szego_kernel,
)
from hyperkos.core_linalg import InvalidInputError
from hyperkos.rkhs import gram_of_config, is_rescaling_equivalent

from conftest import config, model_triangle, seeds


def test_szego_kernel_examples():
    assert szego_kernel([0, 0], [0.3, 0.4j]) == 1
    assert szego_kernel([0.5, 0], [0.5, 0]) == pytest.approx(4 / 3)
    assert szego_kernel([0.5, 0], [0, 0.5]) == 1


def test_pseudo_dist_examples():
    assert pseudo_dist([0, 0], [0.5, 0]) == pytest.approx(0.5)
    assert pseudo_dist([0.3, 0.2j], [0.3, 0.2j]) == 0
    assert pseudo_dist([0.5, 0], [0, 0.5]) == pytest.approx(np.sqrt(0.4375), abs=1e-15)
    assert pseudo_dist([0.5, 0], [0, 0.5]) == pytest.approx(0.6614378277661477, abs=1e-15)


def test_pseudo_dist_nearby_points_keep_precision():
    y = np.array([0.6, 0.3j])
    w = y + np.array([1e-9, 0])
    # Oracle: the one-dimensional Blaschke form after moving y to 0.
    expected = np.linalg.norm(involution(y)(w))
    assert pseudo_dist(y, w) == pytest.approx(expected, rel=1e-6)


def test_as_point_and_config_validation():
    with pytest.raises(InvalidInputError):
        as_point([0.8, 0.7])
    with pytest.raises(InvalidInputError):
        as_point([np.nan])
    with pytest.raises(InvalidInputError):
        as_config([[0.1, 0], [0.1, 0]])
    assert as_config([0.1, 0.2j]).shape == (2, 1)


def test_involution_examples():
    z = np.array([0.2, -0.1j])
    assert np.allclose(involution([0, 0])(z), z)
    a = np.array([0.3, 0.4j])
    assert np.allclose(involution(a)(a), 0)
    assert np.allclose(involution(a)(np.zeros(2)), a)
    assert involution([0.5])([0.25])[0] == pytest.approx(0.25 / 0.875)


@given(seeds, st.integers(1, 4))
def test_involution_is_an_involution(seed, dim):
    a, z = config(seed, 2, dim)
    phi = involution(a)
    assert np.allclose(phi(phi(z)), z, atol=1e-9)


@given(seeds, st.integers(1, 4))
def test_fundamental_identity(seed, dim):
    # 1 - <<phi_a(z), phi_a(w)>> = (1 - |a|^2)(1 - <<z, w>>) / ((1 - <<z, a>>)(1 - <<a, w>>))
    a, z, w = config(seed, 3, dim)
    phi = involution(a)
    lhs = 1 - np.vdot(phi(w), phi(z))
    rhs = (1 - np.vdot(a, a).real) * (1 - np.vdot(w, z)) / ((1 - np.vdot(a, z)) * (1 - np.vdot(w, a)))
    assert abs(lhs - rhs) <= 1e-9


@given(seeds, st.integers(1, 4))
def test_strong_triangle_inequality(seed, dim):
    x, y, z = config(seed, 3, dim, radius=0.99)
    a, b, c = pseudo_dist(x, z), pseudo_dist(z, y), pseudo_dist(x, y)
    assert abs(a - b) / (1 - a * b) <= c + 1e-12
    assert c <= (a + b) / (1 + a * b) + 1e-12


@given(seeds, st.integers(1, 4))
def test_automorphisms_preserve_distance(seed, dim):
    X = config(seed, 2, dim)
    phi = random_automorphism(seed, dim)
    Y = phi(X)
    assert abs(pseudo_dist(*Y) - pseudo_dist(*X)) <= 1e-9


def test_automorphism_structure():
    phi = random_automorphism(7, 3)
    assert np.allclose(phi(np.zeros(3)), phi.unitary @ phi.base)
    ident = Automorphism(np.eye(2, dtype=complex), np.zeros(2, dtype=complex))
    assert np.allclose(ident([[0.1, 0.2j]]), [[0.1, 0.2j]])


def test_project_to_complex_geodesic_examples():
    p, q = np.zeros(2), np.array([0.5, 0])
    assert np.allclose(project_to_complex_geodesic(p, q, [0.3, 0.4]), [0.3, 0])
    assert np.allclose(project_to_complex_geodesic(p, q, [-0.2j, 0]), [-0.2j, 0])


def test_projection_minimizes_distance(rng):
    p, q, x = config(11, 3, 2)
    y = project_to_complex_geodesic(p, q, x)
    # Oracle: dense sample of the complex geodesic, parametrized from p.
    phi = involution(p)
    u = phi(q) / np.linalg.norm(phi(q))
    r, t = np.meshgrid(np.linspace(0, 0.999, 400), np.linspace(0, 2 * np.pi, 400))
    samples = phi((r * np.exp(1j * t)).reshape(-1, 1) * u[None, :])
    best = np.min(pseudo_dist(x[None, :], samples))
    assert pseudo_dist(x, y) <= best + 1e-6
    assert pseudo_dist(x, y) >= best - 5e-3


def test_normalize_to_model_examples():
    T = model_triangle()
    assert np.allclose(normalize_to_model(T), T)
    for seed in range(5):
        image = random_automorphism(seed, 2)(T)
        assert np.allclose(normalize_to_model(image), T, atol=1e-9)
    line = np.array([[0.1, 0], [-0.4, 0], [0.6, 0]], dtype=complex)
    model = normalize_to_model(line)
    assert abs(model[2, 1]) <= 1e-12


@given(seeds, st.integers(2, 5), st.integers(1, 4))
def test_normalize_to_model_is_congruent(seed, m, dim):
    X = config(seed, m, dim)
    Y = normalize_to_model(X)
    assert Y.shape == (m, m - 1)
    assert np.allclose(np.tril(Y[1:], 0), Y[1:])
    assert np.all(np.abs(np.diagonal(Y[1:]).imag) <= 1e-12)
    assert is_rescaling_equivalent(gram_of_config(X), gram_of_config(Y), tol=_loose())


def _loose():
    from hyperkos.core_linalg import Tolerance

    return Tolerance(eq_tol=1e-8)
