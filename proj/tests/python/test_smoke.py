import math
import os
import subprocess

import numpy as np
import pytest

import dchern


def test_bloch_matrix_at_origin():
    x = dchern.bloch_damping_matrix(dchern.Params(), 0.0, 0.0)
    assert x.shape == (2, 2)
    assert x[0, 0] == pytest.approx(complex(-math.sqrt(2) * 0.1, -0.5))
    a, b = dchern.bloch_damping_eigenvalues(dchern.Params(), 0.0, 0.0)
    assert a.imag == pytest.approx(math.sqrt(0.23))
    assert b == pytest.approx(a.conjugate())


def test_real_space_matches_numpy_spectrum():
    p = dchern.Params(nx=3, ny=3, boundary="periodic")
    x = dchern.real_space_damping_matrix(p)
    assert x.shape == (18, 18)
    ev = np.linalg.eigvals(x)
    assert ev.real.max() <= 1e-10
    h = dchern.real_space_hamiltonian(p)
    assert np.allclose(h, h.conj().T)


def test_gaps():
    closed = dchern.liouvillian_gap_bloch(dchern.Params(m=1.5, lam=0.1), 64)
    opened = dchern.liouvillian_gap_bloch(dchern.Params(m=2.5, lam=0.1), 64)
    assert abs(closed["gap"]) < 1e-8
    assert opened["gap"] > 0.05
    real = dchern.liouvillian_gap_real(dchern.Params(nx=6, ny=6, boundary="open"))
    assert real["gap"] > 0.0


def test_union_and_subset_sums():
    u = dchern.verify_union(dchern.Params(nx=2, ny=2, boundary="open"))
    assert u["pass"]
    sums = dchern.liouvillian_eigenvalues([complex(-1, 2)])
    assert sorted(sums, key=abs) == [0, complex(-1, 2)]


def test_dynamics_and_classifier():
    p = dchern.Params(nx=4, ny=4, boundary="open", m=2.5, lam=0.5)
    times = list(np.linspace(0.0, 10.0, 21))
    s = dchern.deviation_series(p, times)
    assert s["R"][0] == pytest.approx(1.0)
    assert s["Rx"].shape == (16, 21)
    t = np.linspace(1, 40, 40)
    c = dchern.classify_damping(list(t), list(np.exp(-0.3 * t)), 1.0, 40.0)
    assert c["law"] == "Exponential"
    assert c["rate"] == pytest.approx(0.3, abs=0.01)


def test_wavefront_periodic_has_no_front():
    t = dchern.wavefront_times(dchern.Params(nx=4, ny=4), list(np.linspace(0.1, 20, 60)))
    assert t.shape == (4, 4)
    assert np.isnan(t).all()


def test_circuit():
    c = dchern.component_values(dchern.Params(), 1.0)
    assert c["R1"] == pytest.approx(-10.0)
    assert c["RA"] == pytest.approx(-2.5)
    p = dchern.Params(nx=3, ny=3, boundary="open")
    assert dchern.circuit_mapping(p)["pass"]
    bad = dchern.circuit_mapping(p, compensate=False)
    assert not bad["pass"]
    text = dchern.export_netlist(p)
    assert text.startswith("*") and ".end" in text


def test_errors():
    with pytest.raises(dchern.ValidationError):
        dchern.Params(nx=0)
    with pytest.raises(dchern.ValidationError):
        dchern.component_values(dchern.Params(lam=0.0))
    with pytest.raises(dchern.ResourceError):
        dchern.real_space_damping_matrix(dchern.Params(nx=60, ny=60))


def test_run_command(tmp_path):
    code, files, summary = dchern.run_command("verify", {"out": str(tmp_path)})
    assert code == 0
    assert "all" in summary and "passed" in summary
    with pytest.raises(dchern.ValidationError):
        dchern.run_command("spectrum", {"nx": "0", "out": str(tmp_path / "x")})
    assert not (tmp_path / "x").exists()


@pytest.mark.skipif("DCHERN_CLI" not in os.environ, reason="command-line tool not built")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["DCHERN_CLI"]
    ok = subprocess.run([cli, "spectrum", "--nx", "3", "--ny", "3", "--grid", "16", "--out", str(tmp_path)])
    assert ok.returncode == 0
    assert (tmp_path / "spectrum_open.csv").exists()
    bad = subprocess.run([cli, "spectrum", "--nx", "0", "--out", str(tmp_path / "no")], capture_output=True)
    assert bad.returncode == 1
