import math

import pytest

import triqmc


def test_first_points():
    pts = triqmc.points("basu-owen", 4)
    expected = [(1 / 3, 1 / 3), (1 / 6, 1 / 6), (2 / 3, 1 / 6), (1 / 6, 2 / 3)]
    for (x, y), (ex, ey) in zip(pts, expected):
        assert math.isclose(x, ex, abs_tol=1e-15)
        assert math.isclose(y, ey, abs_tol=1e-15)


def test_points_stay_inside_custom_triangle():
    tri = ((-1.0, 0.0), (2.0, -0.5), (0.5, 3.0))
    for x, y in triqmc.points("pascal", 512, triangle=tri):
        # crude bounding-box sanity plus barycentric containment
        assert -1.0 - 1e-9 <= x <= 2.0 + 1e-9
        assert -0.5 - 1e-9 <= y <= 3.0 + 1e-9


def test_quality_tables():
    for m in range(1, 9):
        rep = triqmc.quality("basu-owen", m)
        expected_v = (m + 1) // 2 if m % 2 else m // 2 + 1
        assert rep["v_min"] == expected_v
        assert rep["t"] == (m + 1) // 2
        assert rep["bound_holds"]
    for m in range(1, 9):
        rep = triqmc.quality("pascal", m)
        assert rep["mu1_min"] == m + 1
        assert rep["t"] == 0


def test_qmc_hand_value():
    got = triqmc.qmc_integrate(lambda x, y: x * x, "basu-owen", 4)
    assert math.isclose(got, 11 / 72, abs_tol=1e-15)
    assert math.isclose(triqmc.monomial_integral(2, 0), 1 / 6, abs_tol=1e-16)


def test_walsh_coefficient():
    got = triqmc.walsh_coefficient(lambda x, y: x, 1, 1)
    assert math.isclose(got, 1 / 6, abs_tol=1e-12)


def test_convergence_rows():
    rows = triqmc.convergence_study("exp-sum", "basu-owen", 4, 10)
    assert [r["N"] for r in rows] == [2**m for m in range(4, 11)]
    errs = [r["abs_error"] for r in rows]
    assert errs[-1] < errs[0]
    assert math.isclose(rows[0]["exact"], 2.0, abs_tol=1e-15)


def test_bad_generator_rejected():
    with pytest.raises(ValueError):
        triqmc.points("sobol-qrng", 4)
