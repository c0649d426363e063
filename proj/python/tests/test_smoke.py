import math

import numpy as np
import pytest

import norbrack as nb

N = 256


def theta(n=N):
    return nb.grid_theta(n)


def test_circle_speed_and_curvature():
    c = nb.circle(N, 2.0)
    assert c.grid_n == N and c.ambient == "plane"
    assert np.max(np.abs(nb.speed(c) - 2.0)) < 1e-7
    assert np.max(np.abs(nb.curvature(c) - 0.5)) < 1e-6


def test_curve_from_xy_and_errors():
    t = theta(64)
    c = nb.Curve(np.column_stack([np.cos(t), np.sin(t)]))
    assert c.points.shape == (64, 3)
    with pytest.raises(nb.InvalidGrid):
        nb.circle(15)
    with pytest.raises(nb.Error):
        nb.Curve(np.zeros((16, 3)))


def test_deriv_theta_of_sine():
    t = theta()
    assert np.max(np.abs(nb.deriv_theta(np.sin(t)) - np.cos(t))) < 1e-7


def test_bracket_numeric_matches_closed_form():
    c = nb.ellipse(N, 2.0, 1.0)
    t = theta()
    a, b = np.cos(t), np.sin(2 * t)
    closed = nb.bracket_closed_form(c, a, b)
    numeric = nb.bracket_numeric(c, a, b, 1e-5)
    assert np.max(np.linalg.norm(closed - numeric, axis=1)) < 1e-3


def test_decompose_oneform_reconstructs():
    t = theta()
    alpha = 1.0 + 0.3 * np.cos(2 * t) - 0.2 * np.sin(5 * t)
    d = nb.decompose_oneform(alpha)
    assert 0 < len(d) <= 8
    assert nb.relative_l2_error(d, alpha) < 1e-5
    again = nb.ABDecomposition.from_json(d.to_json())
    assert np.allclose(again.reconstruct(N), d.reconstruct(N))


def test_spanning_circle_n16():
    r = nb.verify_spanning(nb.circle(16), 7)
    assert r["full"] and r["rank"] == 32
    with pytest.raises(nb.BasisTooLarge):
        nb.verify_spanning(nb.circle(16), 8)


def test_arc_flow_keeps_leaf():
    c0 = nb.random_fourier_curve(2, N)
    f = nb.Field.scaled_normal(0.5 * np.cos(3 * theta()))
    c1 = nb.flow_arc(c0, f, 0.3, 100)
    assert nb.leaf_invariant(c0, c1) < 1e-5
    h = nb.project_to_arc(c0, f(c0))
    assert nb.arc_defect(c0, h)[2] < 1e-6


def test_run_suite_records():
    records = nb.run_suite("bracket", '{"curves":["circle"]}')
    assert records and all(r["pass"] for r in records)
    assert set(records[0]) == {"suite", "case", "grid_n", "metric", "value", "tolerance", "pass"}
    assert "arc" in nb.suite_names()
    with pytest.raises(nb.ConfigInvalid):
        nb.run_suite("bracket", '{"grid_n":255}')
    assert math.isfinite(records[0]["value"])
