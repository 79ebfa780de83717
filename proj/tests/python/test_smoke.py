import math

import pytest

import tractrix_lab as tl

CIRCLE_2 = {"kind": "circle", "r": 2.0}


def test_curve_summary():
    s = tl.curve_summary({"kind": "ellipse", "a": 2, "b": 1})
    assert s["closed"]
    assert s["area"] == pytest.approx(2 * math.pi)


def test_rear_circle():
    tr = tl.trace(CIRCLE_2, 1.0, math.pi / 6)
    radii = [math.hypot(x, y) for x, y in tr["rear"]]
    assert max(abs(r - math.sqrt(3)) for r in radii) < 1e-6


def test_monodromy_classes():
    assert tl.monodromy(CIRCLE_2, 1.0)["class"] == "hyperbolic"
    assert tl.monodromy({"kind": "circle", "r": 0.5}, 1.0)["class"] == "elliptic"
    seg = {"kind": "segment", "points": [[0, 0], [1, 0]]}
    assert tl.monodromy(seg, 1.0)["trace"] == pytest.approx(2 * math.cosh(0.5), rel=1e-9)


def test_planimeter_and_menzin():
    r = tl.planimeter({"kind": "circle", "r": 1.0}, 10.0)
    assert r["estimate"] == pytest.approx(r["correction_estimate"], rel=2e-3)
    rep = tl.menzin({"kind": "circle", "r": 1.0})
    assert rep["passed"]
    assert rep["ell0"] == pytest.approx(1.0, abs=1e-5)


def test_curved_geometries():
    dev = tl.develop({"kind": "circle", "r": math.sqrt(3) / 2, "traversals": 2})
    assert dev["point_gap"] < 1e-4
    rep = tl.hpz({"kind": "geodesic-circle", "r": math.pi / 3, "geometry": "spherical"}, math.pi / 6)
    assert rep["class"] == "hyperbolic"


def test_loop_identity():
    n = 128
    s = [2 * math.pi * i / n for i in range(n + 1)]
    res = tl.loop_identity([math.cos(v) for v in s], [math.sin(v) for v in s], s, 0.5)
    assert res["lhs"] == pytest.approx(res["rhs"], abs=1e-9)


def test_errors():
    with pytest.raises(tl.ValidationError):
        tl.monodromy({"kind": "circle", "r": -1}, 1.0)
    with pytest.raises(ValueError):
        tl.curve_summary("not json")
    code, out, err = tl.run_cli("bogus")
    assert code == 2
    code, out, _ = tl.run_cli("menzin", "--input", "/nonexistent.json")
    assert code == 2
