import pytest

from torsionlab import fox, sl2
from torsionlab.riley import RileyPoint, riley_residual, riley_roots
from torsionlab.surgery import (DegenerateFormulaError, Slope, extension_check, residual_scan,
                                rho_longitude, rho_wbar_pow, solve_surgery_reps,
                                torsion_surgery, torsion_surgery_dehn, trace_longitude)
from torsionlab.torsion import ParabolicError, representation

TWISTS = [-4, -3, -2, -1, 1, 2, 3, 4]


def longitude_word(n):
    return fox.parse_word("(a b^-1 a^-1 b)^n (b a^-1 b^-1 a)^n".replace("n", str(n)))


@pytest.mark.parametrize("n", TWISTS)
def test_longitude_matches_word(n, riley_sample):
    for pt in riley_sample(n, 3):
        ref = fox.evaluate_word(longitude_word(n), representation(pt))
        L = rho_longitude(n, pt)
        assert sl2.norm(L - ref) < 1e-9 * max(1, sl2.norm(ref))
        assert abs(trace_longitude(pt) - sl2.trace(ref)) < 1e-8 * max(1, abs(sl2.trace(ref)))
        A = representation(pt)["a"]
        assert sl2.norm(L @ A - A @ L) < 1e-8 * max(1, sl2.norm(L))


def test_wbar_power_off_the_variety():
    s, u = 0.9 - 0.4j, 1.3 + 0.2j
    rho = representation(RileyPoint(s, u))
    for n in (-3, 1, 5):
        ref = fox.evaluate_word(fox.parse_word(f"(a b^-1 a^-1 b)^{n}"), rho)
        assert sl2.norm(rho_wbar_pow(n, s, u) - ref) < 1e-10 * max(1, sl2.norm(ref))


def test_figure_eight_values(figure_eight_point):
    pt = figure_eight_point
    assert trace_longitude(pt) == pytest.approx(38, abs=1e-9)
    assert sl2.trace(rho_longitude(-1, pt)) == pytest.approx(38, abs=1e-9)
    assert torsion_surgery(-1, pt) == pytest.approx(1 / 9, abs=1e-12)
    assert torsion_surgery_dehn(-1, pt) == pytest.approx(1 / 9, abs=1e-12)


def test_trefoil_value():
    (pt,) = riley_roots(1, 2.0)
    assert torsion_surgery(1, pt) == pytest.approx(2 / 66.015625, rel=1e-12)
    assert torsion_surgery_dehn(1, pt) == pytest.approx(2 / 66.015625, rel=1e-12)


@pytest.mark.parametrize("n", TWISTS)
def test_two_routes_agree(n, riley_sample):
    for pt in riley_sample(n, 4):
        a, b = torsion_surgery(n, pt), torsion_surgery_dehn(n, pt)
        assert abs(a - b) < 1e-8 * max(1, abs(b))


def test_slope_validation():
    assert str(Slope(3, -2)) == "3/-2"
    with pytest.raises(ValueError):
        Slope(0, 0)
    with pytest.raises(ValueError):
        Slope(4, 2)


def test_hypotheses():
    (pt,) = riley_roots(1, 1j)  # x = 0
    with pytest.raises(ParabolicError):
        torsion_surgery(1, pt)
    # (u + 1)(c - 2) = u^2 with c = 4.25 at s = 2 and u = 3
    s = 2.0
    c = s * s + s ** -2
    u = ((c - 2) + ((c - 2) ** 2 + 4 * (c - 2)) ** 0.5) / 2
    with pytest.raises(DegenerateFormulaError):
        trace_longitude(RileyPoint(s, u))


def test_extension_rejects_generic_points(riley_sample):
    for pt in riley_sample(-1, 5):
        check = extension_check(-1, pt, Slope(1, 1))
        assert not check.accepted
        assert check.residual > 1e-3


@pytest.fixture(scope="module")
def figure_eight_reps():
    return solve_surgery_reps(-1, Slope(1, 1))


def test_solver_output(figure_eight_reps):
    reps = figure_eight_reps
    assert len(reps) >= 1
    keys = [(r.point.s.real, r.point.s.imag) for r in reps]
    assert keys == sorted(keys, key=lambda k: (round(k[0], 8), round(k[1], 8)))
    for r in reps:
        assert r.extension_residual < 1e-8
        assert riley_residual(-1, r.point.s, r.point.u) < 1e-10
        assert extension_check(-1, r.point, r.slope).accepted
        a, b = torsion_surgery(-1, r), torsion_surgery_dehn(-1, r)
        assert abs(a - b) < 1e-8 * max(1, abs(b))


def test_solver_is_deterministic(figure_eight_reps):
    again = solve_surgery_reps(-1, (1, 1))
    assert [(r.point.s, r.point.u) for r in again] == [(r.point.s, r.point.u) for r in figure_eight_reps]


def test_solver_threads_match_serial(monkeypatch):
    from torsionlab.surgery import start_points
    starts = start_points(-1)[:20]
    serial = solve_surgery_reps(-1, (1, 1), starts=starts)
    monkeypatch.setenv("TORSIONLAB_THREADS", "4")
    threaded = solve_surgery_reps(-1, (1, 1), starts=starts)
    assert [(r.point.s, r.point.u) for r in threaded] == [(r.point.s, r.point.u) for r in serial]


def test_residual_scan_shape():
    rows = residual_scan(-1, Slope(1, 1), [1.0], [0.5, 1.0])
    assert len(rows) == 4
    assert all(res >= 0 for _, _, res in rows)
