import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperkos.ball import random_automorphism
from hyperkos.core_linalg import InvalidInputError
from hyperkos.moduli import (
    ModuliPoint,
    VertexModuli,
    congruent,
    decode,
    encode,
    general_position,
    vertex_congruent,
    vertex_moduli,
)
from hyperkos.rkhs import gram_of_config, is_rescaling_equivalent

from conftest import ORTHO_RAYS, config, model_triangle, seeds


def test_encode_examples():
    m = encode(ORTHO_RAYS)
    assert np.allclose(m.rho, 0.5) and np.allclose(m.M, np.eye(3))
    m = encode(model_triangle())
    assert np.allclose(m.rho, [0.5, 0.5]) and m.M[0, 1] == pytest.approx(0.6)
    X = np.array([[0, 0, 0], [0.5, 0, 0], [0.3, 0.4, 0], [0, 0, 0.5]], dtype=complex)
    m = encode(X)
    assert np.allclose(m.rho, [0.5, 0.5, 0.5])
    assert abs(m.M[0, 2]) <= 1e-12 and abs(m.M[1, 2]) <= 1e-12


def test_moduli_point_validation():
    with pytest.raises(InvalidInputError):
        ModuliPoint([0.5, 1.0], np.eye(2))
    with pytest.raises(InvalidInputError):
        ModuliPoint([0.5, 0.5], [[1, 2], [2, 1]])
    with pytest.raises(InvalidInputError):
        ModuliPoint([0.5], np.eye(2))


def test_decode_examples():
    X = decode(ModuliPoint([0.5, 0.5, 0.5], np.eye(3)))
    assert congruent(X, ORTHO_RAYS)
    X = decode(ModuliPoint([0.5, 0.5], [[1, 0.6], [0.6, 1]]))
    assert is_rescaling_equivalent(gram_of_config(X), gram_of_config(model_triangle()))
    X = decode(ModuliPoint([0.2, 0.5, 0.7], np.ones((3, 3))))
    assert X.shape == (4, 1) and np.allclose(X[:, 0].imag, 0)
    with pytest.raises(InvalidInputError):
        decode(ModuliPoint([0.5, 0.5], np.eye(2)), dimension=1)


@given(seeds, st.integers(3, 5), st.integers(2, 4))
def test_round_trips(seed, count, dim):
    X = config(seed, count, dim)
    m = encode(X)
    Y = decode(m)
    assert congruent(X, Y)
    assert encode(Y).close_to(m)


def test_congruent_examples(rng):
    X = config(4, 4, 2)
    assert congruent(X, random_automorphism(9, 2)(X))
    assert not congruent(X, X[[0, 2, 1, 3]])
    T = config(5, 3, 2)
    assert not congruent(T, T.conj())


def test_ch1_moduli_are_phases():
    theta = np.array([0.0, 0.4, 1.9, -2.2])
    r = np.array([0.0, 0.3, 0.5, 0.8])
    m = encode((r * np.exp(1j * theta))[:, None])
    expected = np.exp(1j * (theta[1:, None] - theta[None, 1:]))
    assert np.max(np.abs(m.M - expected)) <= 1e-9


def test_bk2_moduli_are_cosines():
    theta = np.array([0.0, 0.4, 1.9, -2.2])
    r = np.array([0.0, 0.3, 0.5, 0.8])
    Y = np.stack([r * np.cos(theta), r * np.sin(theta)], axis=1)
    m = encode(Y)
    assert np.max(np.abs(m.M - np.cos(theta[1:, None] - theta[None, 1:]))) <= 1e-9


def test_general_position_examples():
    assert general_position(ORTHO_RAYS)
    assert not general_position(np.array([[0.0], [0.3], [0.2j], [-0.4 + 0.1j]]))
    assert general_position(model_triangle())


def test_vertex_congruence_examples():
    V = vertex_moduli(model_triangle(x=0.3 + 0.2j))
    assert vertex_congruent(V, V)
    reversed_V = VertexModuli(V.M[::-1, ::-1])
    assert not vertex_congruent(V, reversed_V)
    W = vertex_moduli(model_triangle())
    assert vertex_congruent(W, VertexModuli(W.M[::-1, ::-1]))
