import math

import numpy as np
import pytest

import hypersect as hs


def test_section_closed_form():
    s = hs.paraboloid([1.0, 1.0])
    r = hs.section(s, [1.0, 0.0], "vertical", 1.0)
    assert r["a_star"]["value"] == pytest.approx(math.sqrt(5) * math.pi, rel=1e-10)
    assert r["v_star"]["value"] == pytest.approx(math.pi / 2, rel=1e-10)
    assert r["v_loc"]["value"] == r["v_star"]["value"]


def test_archimedes_cap():
    s = hs.sphere(1.0)
    r = hs.section(s, [0.1, -0.05], "normal", 0.3)
    assert r["s_loc"]["value"] == pytest.approx(2 * math.pi * 0.3, rel=1e-9)


def test_point_data():
    p = hs.point_at(hs.paraboloid([1.0, 1.0]), np.array([1.0, 0.0]))
    assert p.w == pytest.approx(math.sqrt(5))
    assert p.det_hessian == pytest.approx(4.0)
    assert p.k_curv == pytest.approx(4.0 / 25.0)


def test_limits_sphere_surface():
    (est,) = hs.limits(hs.sphere(1.0), [0.0, 0.0], "S")
    assert est["extrapolated"] == pytest.approx(2 * math.pi, rel=1e-4)
    assert len(est["ladder"]) == 6


def test_scans():
    s = hs.paraboloid([1.0, 1.0])
    pts = [np.zeros(2), np.array([1.0, 0.0]), np.array([0.0, 2.0])]
    held = hs.scan(s, "Vstar", pts, [0.5, 1.0])
    assert held["verdict"] == "holds"
    assert held["inference"]["det_mean"] == pytest.approx(4.0, rel=1e-4)
    assert hs.scan(s, "Sstar", pts, [0.5, 1.0])["verdict"] == "fails"


def test_classify():
    assert hs.classify(hs.parse_surface("sphere:2"))["verdict"] == "sphere-like"
    assert hs.classify(hs.parse_surface("paraboloid:1,2"))["verdict"] == "paraboloid-like"


def test_mean_value_and_u():
    mv = hs.mean_value("affine", [], [np.zeros(2)], [0.5, 1.0])
    assert mv["harmonic_verdict"]
    u = hs.u_check([1.0, 3.0], [np.array([0.3, -0.2]), np.array([1.0, 0.5])])
    assert u["max_residual"] < 1e-6
    assert u["u_at_origin"] == 2.0


def test_custom_surface_matches_builtin():
    c = hs.custom(2, lambda x: float(x @ x), lambda x: 2 * x, lambda x: 2 * np.eye(2))
    r = hs.section(c, [0.5, 0.5], "vertical", 1.0)
    alpha = hs.paraboloid_alpha([1.0, 1.0])
    assert r["v_star"]["value"] == pytest.approx(alpha, rel=1e-10)


def test_errors_raise():
    with pytest.raises(hs.HypersectError, match="invalid-parameter"):
        hs.section(hs.paraboloid([1.0, 1.0]), [0.0, 0.0], "vertical", -1.0)
    with pytest.raises(hs.HypersectError, match="domain"):
        hs.point_at(hs.sphere(1.0), [2.0, 0.0])


def test_cli_roundtrip():
    code, out, err = hs.run_cli(["scan", "--surface", "paraboloid:1,1", "--condition", "Sstar",
                                 "--points", "0,0;1,0;0,2"])
    assert code == 2
    assert '"verdict": "fails"' in out
    code, _, err = hs.run_cli(["section", "--surface", "paraboloid:1,1"])
    assert code == 64
