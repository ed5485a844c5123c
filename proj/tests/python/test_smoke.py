import math

import numpy as np
import pytest

import egdg


def test_problem_names():
    names = egdg.problem_names()
    assert "sine-gordon" in names and "manufactured-2d" in names


def test_pairwise_rate():
    assert egdg.pairwise_rate(0.5, 0.125, 100, 200) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        egdg.pairwise_rate(-1.0, 0.1, 100, 200)


def test_converge_rate():
    out = egdg.converge(problem="manufactured-1d", q=3, s=3, N=[40, 80], T=0.5)
    assert not out["aborted"]
    errs = [r["l2_error_u"] for r in out["records"]]
    assert errs[1] < errs[0]
    assert out["records"][1]["rate"] == pytest.approx(4.0, abs=0.6)


def test_discretization_energy_identity():
    d = egdg.Discretization(16, problem="sine-gordon", q=3, s=3, flux="sommerfeld", theta=0.3)
    y = d.project_initial()
    assert d.num_elements == 16 and d.dim == 1
    assert isinstance(y.u, np.ndarray) and y.u.size == 16 * 4
    chain, closed = d.energy_rate(y)
    assert chain == pytest.approx(closed, rel=1e-10, abs=1e-12)
    assert chain <= 1e-12
    rows = d.sample(y, 50)
    assert rows.shape == (50, 4)


def test_evolve_conserves_energy():
    out = egdg.evolve(problem="sine-gordon", theta=0, flux="central", q=3, s=3, N=[40], T=1.0, stride=10)
    assert not out["aborted"]
    E = [e["E"] for e in out["energy"]]
    assert E[0] == pytest.approx(16 * math.sqrt(0.75), rel=1e-3)
    assert out["max_rel_drift"] < 1e-6


def test_bad_key_raises():
    with pytest.raises(egdg.ConfigError):
        egdg.converge(no_such_key=1)


def test_verify_suites_pass():
    for suite in egdg.verify(seed=7, cases=5):
        assert suite["passed"], suite
