import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperkos.assembly import tetra_gate
from hyperkos.core_linalg import InvalidInputError, det, is_psd
from hyperkos.realhyp import (
    amplitude_da,
    amplitude_va,
    angle_criteria_batch,
    angles_of_matrix,
    cayley_classify,
    cayley_p,
    cva_matrix,
    dihedral_from_vertex,
    dihedral_gate,
    dual,
    gda_check,
    gva_check,
    is_real_config,
    is_real_gram,
    neg_cda_matrix,
    tia_holds,
    tid_holds,
    vertex_angles,
    vertex_from_dihedral,
    vertex_gate,
)
from hyperkos.rkhs import gram_of_config, kos_matrix, quiggin_gram

from conftest import ORTHO_RAYS, config, model_triangle, seeds

PI = np.pi
angle = st.floats(0.05, PI - 0.05)
triples = st.tuples(angle, angle, angle)


def real_tetrahedron(seed):
    return config(seed, 4, 3).real.astype(complex) * 0.9


def test_reality_examples():
    assert is_real_config(real_tetrahedron(1))
    assert not is_real_config(model_triangle(x=0.3j))
    assert not is_real_gram(quiggin_gram(0.25))
    assert is_real_config(ORTHO_RAYS)


def test_vertex_angles_examples():
    assert np.allclose(vertex_angles(ORTHO_RAYS), np.eye(3))
    X = np.array([[0, 0, 0], [0.5, 0, 0], [-0.4, 0, 0], [0, 0.3, 0]], dtype=complex)
    assert vertex_angles(X)[0, 1] == pytest.approx(-1.0)
    r = 0.5
    w = np.exp(2j * PI / 3)
    X = np.array([[0, 0], [r, 0], [r * w.real, r * w.imag], [r * w.real, -r * w.imag]], dtype=complex)
    V = vertex_angles(X)
    assert np.allclose(V[np.triu_indices(3, 1)], -0.5)
    assert det(V).real == pytest.approx(0.0, abs=1e-12)
    assert cayley_p(-0.5, -0.5, -0.5) == pytest.approx(0.0)
    with pytest.raises(InvalidInputError):
        vertex_angles(np.vstack([model_triangle(x=0.3j), [[0.1, 0.1]]]))


@given(seeds)
def test_reality_bridge(seed):
    X = real_tetrahedron(seed)
    V = vertex_angles(X)
    assert np.max(np.abs(V - kos_matrix(gram_of_config(X), 0))) <= 1e-10
    va = angles_of_matrix(V)
    gate = vertex_gate(va)
    tv = tetra_gate(V[0, 1], V[0, 2], V[1, 2])
    assert gate.feasible and tv.feasible
    if not gate.boundary:
        assert gate.psd == gate.det_nonnegative == gate.trig == gate.normalized_trig
    assert gate.determinant == pytest.approx(tv.details["determinant"], abs=1e-12)


def test_dihedral_from_vertex_examples():
    assert np.allclose(dihedral_from_vertex([PI / 2] * 3), 0)
    assert np.allclose(dihedral_from_vertex([PI / 3] * 3), 1 / 3)
    cos_da = dihedral_from_vertex([PI / 2, PI / 4, PI / 5])
    assert np.any(np.abs(cos_da) > 1) and not gva_check([PI / 2, PI / 4, PI / 5])
    with pytest.raises(InvalidInputError):
        dihedral_from_vertex([0.0, 1.0, 1.0])


def test_vertex_from_dihedral_examples():
    assert np.allclose(vertex_from_dihedral([PI / 2] * 3), 0)
    assert np.allclose(vertex_from_dihedral([np.arccos(1 / 3)] * 3), 0.5)


def realizable(va):
    return np.all(np.abs(dihedral_from_vertex(va)) < 1 - 1e-6)


@given(triples)
def test_law_of_cosines_round_trip(va):
    va = np.array(va)
    if not realizable(va):
        return
    da = np.arccos(dihedral_from_vertex(va))
    assert np.allclose(np.arccos(vertex_from_dihedral(da)), va, atol=1e-9)


@given(triples)
def test_double_dual_reproduces_vertex_matrix(va):
    va = np.array(va)
    if not realizable(va):
        return
    da = np.arccos(dihedral_from_vertex(va))
    assert np.max(np.abs(cva_matrix(np.arccos(vertex_from_dihedral(da))) - cva_matrix(va))) <= 1e-9


def test_angle_criteria_examples():
    assert gva_check([PI / 2] * 3) and gda_check([PI / 2] * 3)
    assert gva_check([PI / 4] * 3) and not gda_check([PI / 4] * 3)
    assert not gva_check([PI / 2, PI / 4, PI / 5])
    assert gda_check([2 * PI / 3] * 3)


def test_dual_examples():
    assert np.allclose(dual([PI / 2] * 3), PI / 2)
    assert gva_check([PI / 3] * 3) and gda_check(dual([PI / 3] * 3))
    assert gva_check([PI / 4] * 3) and gda_check(dual([PI / 4] * 3))
    g = np.array([0.3, 1.1, 2.5])
    assert np.allclose(dual(dual(g)), g)


@given(triples)
def test_duality_exchanges_criteria(g):
    assert gva_check(g) == gda_check(dual(g))


@given(triples)
def test_criteria_match_matrix_positivity(g):
    for check, M in ((gva_check, cva_matrix(g)), (gda_check, neg_cda_matrix(g))):
        v = is_psd(M)
        if abs(v.min_eigenvalue) > 2e-9:
            assert check(g) == v.holds


def test_dihedral_gate_examples():
    assert dihedral_gate(np.eye(3)).feasible
    v = dihedral_gate(neg_cda_matrix([PI / 4] * 3))
    assert not v.feasible and not v.trig and not gda_check([PI / 4] * 3)
    v = dihedral_gate(neg_cda_matrix([2 * PI / 3] * 3))
    assert v.feasible and v.determinant == pytest.approx(0.5)


def test_amplitude_examples():
    amp = amplitude_va([PI / 2] * 3)
    assert amp.polynomial == pytest.approx(1) and amp.factorized == pytest.approx(1)
    amp = amplitude_va([PI / 2, PI / 4, PI / 4])
    assert amp.polynomial == pytest.approx(0, abs=1e-12) and amp.factorized == pytest.approx(0, abs=1e-12)


def test_amplitude_identities(rng):
    for _ in range(1000):
        g = rng.uniform(0.01, PI - 0.01, 3)
        va, da = amplitude_va(g), amplitude_da(g)
        assert abs(va.polynomial - va.factorized) <= 1e-9
        assert abs(da.polynomial - da.factorized) <= 1e-9
        assert abs(va.polynomial - det(cva_matrix(g)).real) <= 1e-9
        assert abs(da.polynomial - det(neg_cda_matrix(g)).real) <= 1e-9
        assert cayley_p(np.cos(g)) == pytest.approx(va.polynomial, abs=1e-12)


def test_cayley_examples():
    assert cayley_p(0, 0, 0) == 1 and cayley_classify((0, 0, 0)) == "interior"
    assert cayley_p(1, 1, 1) == 0 and cayley_classify((1, 1, 1)) == "singular"
    for s in ((1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
        assert cayley_classify(s) == "singular"
    a, b = 1.0, 0.7
    assert cayley_classify((np.cos(a), np.cos(b), np.cos(2 * PI - a - b))) == "smooth_boundary"
    assert cayley_classify((1.2, 0, 0)) == "out_of_box"
    assert cayley_classify((0.9, 0.9, -0.9)) == "exterior"


def test_batch_criteria_match_scalar(rng):
    G = rng.uniform(0.02, PI - 0.02, (300, 3))
    crit = angle_criteria_batch(G)
    assert list(crit.gva) == [gva_check(g) for g in G]
    assert list(crit.gda) == [gda_check(g) for g in G]
    assert list(crit.tia) == [tia_holds(g) for g in G]
    assert list(crit.tid) == [tid_holds(g) for g in G]
    with pytest.raises(InvalidInputError):
        angle_criteria_batch([[0.0, 1.0, 1.0]])


def test_literal_criteria_examples():
    # The bare inequalities accept triples whose matrices are not PSD.
    big = [0.9 * PI] * 3
    assert tia_holds(big) and not gva_check(big)
    lopsided = [0.9 * PI, 0.9 * PI, 0.1 * PI]
    assert tid_holds(lopsided) and not gda_check(lopsided)
