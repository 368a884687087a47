import io
import json
import subprocess
import sys

import numpy as np
import pytest

from hyperkos.cli import dumps, main
from hyperkos.moduli import congruent

from conftest import ORTHO_RAYS, config


def pair(z):
    return [float(np.real(z)), float(np.imag(z))]


def points_doc(X):
    return [[pair(c) for c in row] for row in np.asarray(X)]


def as_points(v):
    return np.array([[complex(*c) for c in row] for row in v])


def as_matrix(v):
    return np.array([[complex(*c) if isinstance(c, list) else c for c in row] for row in v])


def call(monkeypatch, capsys, argv, doc=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO("" if doc is None else json.dumps(doc)))
    code = main(argv)
    return json.loads(capsys.readouterr().out), code


def test_invariants_orthogonal_rays(monkeypatch, capsys):
    out, code = call(monkeypatch, capsys, ["invariants"], {"points": points_doc(ORTHO_RAYS)})
    assert code == 0 and out["schema"] == "1"
    assert np.allclose(as_matrix(out["kos"]), np.eye(3))
    assert all(abs(a["alpha"]) <= 1e-12 for a in out["alpha"])
    assert out["tolerances"] == {"eq_tol": 1e-9, "psd_tol": 1e-9}


def test_quiggin_report(monkeypatch, capsys):
    out, code = call(monkeypatch, capsys, ["quiggin", "--x", "0.25"])
    assert code == 0 and out["cpp"] is False and all(out["subspace_cpp"])
    assert out["det_mq"] == pytest.approx(-2025 / 212992, rel=1e-9)


def test_tetra_gate_exit_codes(monkeypatch, capsys):
    out, code = call(monkeypatch, capsys, ["tetra-gate"], {"K23": 1, "K24": 1, "K34": -1})
    assert code == 1 and out["feasible"] is False and out["points"] is None
    out, code = call(monkeypatch, capsys, ["tetra-gate"], {"K23": 0.5, "K24": 0.5, "K34": [0.5, 0]})
    assert code == 0 and out["feasible"] and len(out["points"]) == 4


def test_invalid_input_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("{not json"))
    assert main(["invariants"]) == 2
    capsys.readouterr()
    out, code = call(monkeypatch, capsys, ["invariants"], {"points": [[[1.5, 0]], [[0, 0]]]})
    assert code == 2 and out["error"]["type"] == "InvalidInputError"
    out, code = call(monkeypatch, capsys, ["tetra-gate"], {"K23": 1})
    assert code == 2
    out, code = call(monkeypatch, capsys, ["invariants"], {"schema": "2", "points": []})
    assert code == 2


def test_disagreement_exit_code(monkeypatch, capsys):
    import hyperkos.cli as cli
    from hyperkos.core_linalg import NumericalDisagreementError

    def broken(doc, ctx):
        raise NumericalDisagreementError("forced")

    monkeypatch.setitem(cli.HANDLERS, "cayley", broken)
    out, code = call(monkeypatch, capsys, ["cayley"], {"point": [0, 0, 0]})
    assert code == 3 and out["error"]["type"] == "NumericalDisagreementError"


def test_batch_reports_worst_code(monkeypatch, capsys):
    docs = [{"K23": 0, "K24": 0, "K34": 0}, {"K23": 1, "K24": 1, "K34": -1}]
    out, code = call(monkeypatch, capsys, ["tetra-gate", "--batch"], docs)
    assert code == 1 and [o["feasible"] for o in out] == [True, False]
    out, code = call(monkeypatch, capsys, ["tetra-gate", "--batch"], docs + [{"K23": 2, "K24": 0, "K34": 0}])
    assert code == 2 and "error" in out[2]


def test_moduli_round_trip(monkeypatch, capsys):
    X = config(3, 4, 3)
    enc, code = call(monkeypatch, capsys, ["moduli-encode"], {"points": points_doc(X)})
    assert code == 0
    dec, code = call(monkeypatch, capsys, ["moduli-decode"], {"rho": enc["rho"], "M": enc["M"]})
    assert code == 0
    Y = as_points(dec["points"])
    assert congruent(X, Y)
    again, code = call(monkeypatch, capsys, ["congruent"], {"a": points_doc(X), "b": dec["points"]})
    assert code == 0 and again["congruent"] is True


def test_triangle_verbs(monkeypatch, capsys):
    out, code = call(monkeypatch, capsys, ["triangle", "convert"], {"sdp": {"d12": 0.5, "d13": 0.3, "kos123": 1}})
    assert code == 0 and out["sprime"]["d23"] == pytest.approx(0.2 / 0.85)
    out, code = call(monkeypatch, capsys, ["triangle", "realize"], {"sdp": {"d12": 0.5, "d13": 0.4, "kos123": 1.2}})
    assert code == 1 and out["realizable"] is False
    out, code = call(monkeypatch, capsys, ["triangle", "model"], {"sdp": {"d12": 0.5, "d13": 0.5, "kos123": 0.6}})
    assert code == 0 and np.allclose(as_points(out["points"]), [[0, 0], [0.5, 0], [0.3, 0.4]])


def test_assembly_verbs(monkeypatch, capsys):
    X = config(5, 5, 4)
    pieces = [{"labels": [0, 1, 2, 3], "points": points_doc(X[[0, 1, 2, 3]])},
              {"labels": [0, 2, 3, 4], "points": points_doc(X[[0, 2, 3, 4]])}]
    out, code = call(monkeypatch, capsys, ["assemble", "v3"], {"pieces": pieces})
    assert code == 0 and out["feasible"] and len(out["details"]["disks"]) == 2
    tri = [{"labels": [0, i, j], "points": points_doc(X[[0, i, j]])} for i in range(1, 5) for j in range(i + 1, 5)]
    out, code = call(monkeypatch, capsys, ["assemble", "v1"], {"pieces": tri})
    assert code == 0 and len(out["details"]["minors"]) == 15


def test_real_angle_verbs(monkeypatch, capsys):
    out, code = call(monkeypatch, capsys, ["real-angles", "dihedral"], {"va": [np.pi / 3] * 3})
    assert code == 0 and np.allclose(out["cos_da"], 1 / 3)
    out, code = call(monkeypatch, capsys, ["real-angles", "gva"], {"angles": [np.pi / 2, np.pi / 4, np.pi / 5]})
    assert code == 1 and out["gva"] is False
    out, code = call(monkeypatch, capsys, ["real-angles", "gate"], {"da": [2 * np.pi / 3] * 3})
    assert code == 0 and out["determinant"] == pytest.approx(0.5)
    out, code = call(monkeypatch, capsys, ["cayley"], {"point": [1, -1, -1]})
    assert out["class"] == "singular"


def test_area_verbs(monkeypatch, capsys):
    z = [[[0.1, 0]], [[0.5, 0.1]], [[0.2, 0.6]]]
    plain, _ = call(monkeypatch, capsys, ["area", "ch1"], {"points": z})
    signed, _ = call(monkeypatch, capsys, ["area", "ch1", "--signed-area"], {"points": z[::-1]})
    assert signed["signed"] and signed["area"] == pytest.approx(-plain["area"])
    out, code = call(monkeypatch, capsys, ["area", "bk2"], {"points": [[0, 0], [0.5, 0], [0, 0.5]]})
    assert code == 0 and out["area"] > 0


def test_selftest(monkeypatch, capsys):
    out, code = call(monkeypatch, capsys, ["selftest", "--seed", "3"])
    assert code == 0 and out["passed"] and len(out["checks"]) == 7


def test_output_is_deterministic_with_17_digits():
    text = dumps({"v": 0.1, "z": 1 / 3 + 0.5j})
    assert json.loads(text) == {"v": 0.1, "z": [float("0.33333333333333331"), 0.5]}
    assert "0.33333333333333331" in text


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hyperkos", "tetra-gate"],
        input=json.dumps({"K23": 1, "K24": 1, "K34": -1}), capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 1 and json.loads(proc.stdout)["feasible"] is False
