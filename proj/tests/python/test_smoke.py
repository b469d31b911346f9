import math

import pytest

import weylsums as ws


def test_weyl_sum_basics():
    assert ws.weyl_sum([0.0, 0.0], 100) == pytest.approx(100 + 0j)
    assert abs(ws.weyl_sum([0.5, 0.0], 10)) < 1e-9
    # quadratic Gauss sum mod 5
    assert abs(ws.weyl_sum([0.0, 0.2], 5, fast=False)) == pytest.approx(math.sqrt(5))


def test_fast_matches_direct():
    x = [0.3721, 0.0619, 0.777]
    assert ws.weyl_sum(x, 4096) == pytest.approx(ws.weyl_sum(x, 4096, fast=False), abs=1e-6)


def test_completed_sum_values():
    lit = ws.completed_sum([0.0, 0.0], 16, mode="literal")
    sym = ws.completed_sum([0.0, 0.0], 16, mode="symmetrized")
    assert lit["value"] == pytest.approx(1.0)
    assert sym["value"] == pytest.approx(16.0)
    assert len(sym["spectrum_norms"]) == 16
    assert sym["value"] >= lit["value"]


def test_spectrum_parseval():
    spec = ws.inner_spectrum([0.3, 0.17], 128)
    assert sum(v * v for v in spec) == pytest.approx(128**2, rel=1e-9)


def test_vinogradov_and_moment():
    assert ws.vinogradov_count(2, 3, 2) == 20
    assert ws.vinogradov_count(2, 3, 8) == 2744
    est = ws.mc_moment(2, 50, 1, samples=20000, seed=5)
    assert abs(est["mean"] - 50) <= 4 * est["stderr"]


def test_mc_moment_thread_determinism():
    a = ws.mc_moment(2, 16, 3, samples=30000, seed=9, threads=1)
    b = ws.mc_moment(2, 16, 3, samples=30000, seed=9, threads=4)
    assert a["mean"] == b["mean"]
    assert a["stderr"] == b["stderr"]


def test_dimension_bounds():
    rep = ws.dim_upper_bound(2, 0.75)
    assert rep["u"] == pytest.approx(4 / 3, abs=1e-12)
    assert rep["argmin_k"] == 1
    assert ws.critical_t(2, 0.75, 0) == pytest.approx(1.6, abs=1e-12)
    assert ws.asymptotic_constants(2) == (3.0, 8.0)
    assert ws.dim_bound_simplified(2, 0.75, "kd1") == pytest.approx(4 / 3, abs=1e-12)


def test_covering_pieces():
    spec = ws.box_side_lengths(2, 16, 0.5, 0.0)
    assert spec["reciprocals"] == [64, 1024]
    assert ws.dyadic_schedule(4, 6) == [16, 32, 64]
    grid = ws.count_superlevel_boxes(2, 8, 0.6, 0.05)
    assert grid["counted_lower"] <= grid["counted_upper"] <= grid["U"]
    rep = ws.stability_check([0.0, 0.0], 128, 0.8, 0.05, probes=100, seed=3)
    assert rep["violations"] == 0


def test_errors_surface_as_exceptions():
    with pytest.raises(ValueError):
        ws.dim_upper_bound(2, 1.5)
    with pytest.raises(RuntimeError):
        ws.vinogradov_count(2, 3, 100, tuple_cap=1e6)
