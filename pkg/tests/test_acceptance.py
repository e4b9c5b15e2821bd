"""Acceptance criteria. Each test prints a PASS/FAIL line in the terminal summary."""

import time

import numpy as np
import pytest

from torsionlab import checks, cli, sl2
from torsionlab.riley import random_riley_points, riley_roots
from torsionlab.surgery import (Slope, residual_scan, rho_longitude, solve_surgery_reps,
                                surgery_matrix, torsion_surgery, torsion_surgery_dehn,
                                trace_longitude)
from torsionlab.torsion import torsion_complement, torsion_fox

GOLDEN = (3 + 5 ** 0.5) / 2


def test_c1_trefoil_constant(record):
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    worst, count = 0.0, 0
    while count < 20:
        s = rng.uniform(0.3, 3.0) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        if abs(s + 1 / s - 2) < 1e-3:
            continue
        (pt,) = riley_roots(1, s)
        worst = max(worst, abs(torsion_complement(1, pt) - 2), abs(torsion_fox(1, pt) - 2))
        count += 1
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-9 and elapsed < 1.0
    record("C1 trefoil tau_E = 2", ok, f"20 s values, worst {worst:.2e}, {elapsed:.3f}s")
    assert worst < 1e-9
    assert elapsed < 1.0


def test_c2_figure_eight(record):
    t0 = time.perf_counter()
    u0 = 2 + 2 * 2 ** 0.5
    pt = min(riley_roots(-1, GOLDEN), key=lambda p: abs(p.u - u0))
    errs = {
        "tau_E closed": abs(torsion_complement(-1, pt) + 4),
        "tau_E fox": abs(torsion_fox(-1, pt) + 4),
        "tr lambda closed": abs(trace_longitude(pt) - 38),
        "tr lambda matrix": abs(sl2.trace(rho_longitude(-1, pt)) - 38),
        "tau_M closed": abs(torsion_surgery(-1, pt) - 1 / 9),
        "tau_M dehn": abs(torsion_surgery_dehn(-1, pt) - 1 / 9),
    }
    elapsed = time.perf_counter() - t0
    tols = {k: (1e-6 if "lambda" in k else 1e-8) for k in errs}
    ok = all(errs[k] < tols[k] for k in errs) and elapsed < 1.0 and abs(pt.u - u0) < 1e-12
    record("C2 figure-eight at x=3", ok, f"max err {max(errs.values()):.2e}, {elapsed:.3f}s")
    assert abs(pt.x - 3) < 1e-14 and abs(pt.u - u0) < 1e-12
    for k in errs:
        assert errs[k] < tols[k], k
    assert elapsed < 1.0


def test_c3_closed_form_vs_oracle(record):
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    worst = 0.0
    for n in (-5, -4, -3, -2, -1, 1, 2, 3, 4, 5):
        pts = random_riley_points(n, rng, 10)
        assert len(pts) >= 10
        for pt in pts:
            tau = torsion_complement(n, pt)
            worst = max(worst, abs(tau - torsion_fox(n, pt)) / (1 + abs(tau)))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-8 and elapsed < 30
    record("C3 closed form vs Fox oracle", ok, f"100 roots, worst rel {worst:.2e}, {elapsed:.2f}s")
    assert worst < 1e-8
    assert elapsed < 30


def test_c4_identity_suite(record):
    t0 = time.perf_counter()
    results = checks.run_all(seed=4, trials=200)
    elapsed = time.perf_counter() - t0
    failed = [r.line() for r in results if not r.passed]
    ok = not failed and elapsed < 30 and all(r.trials >= 200 for r in results)
    record("C4 identity suite", ok, f"{len(results)} checks x 200 trials, {elapsed:.2f}s")
    assert not failed, "\n".join(failed)
    assert all(r.trials >= 200 for r in results)
    assert elapsed < 30


def test_c5_surgery_closed_form(record):
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    worst = 0.0
    for n in (-2, -1, 1, 2):
        for pt in random_riley_points(n, rng, 5):
            tau_e = torsion_complement(n, pt)
            ref = tau_e / (2 - sl2.trace(rho_longitude(n, pt)))
            worst = max(worst, abs(torsion_surgery(n, pt) - ref) / abs(ref))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-8 and elapsed < 5
    record("C5 surgery torsion closed form", ok, f"20 roots, worst rel {worst:.2e}, {elapsed:.3f}s")
    assert worst < 1e-8
    assert elapsed < 5


def _real_branch_sign_change():
    # on real s below (sqrt5 - 1)/2 both n = -1 roots are real and a lambda is upper
    # triangular, so a sign change of its (1,1) entry minus 1 brackets a solution
    values = []
    for s in np.linspace(0.55, 0.615, 14):
        pt = min(riley_roots(-1, s), key=lambda p: p.u.real)
        assert abs(pt.u.imag) < 1e-12
        values.append((surgery_matrix(-1, pt, Slope(1, 1))[0, 0] - 1).real)
    return any(a * b < 0 for a, b in zip(values, values[1:]))


def test_c6_surgery_solver(record):
    t0 = time.perf_counter()
    slope = Slope(1, 1)
    rows = residual_scan(-1, slope, np.linspace(0.4, 1.8, 15), np.linspace(0, 2 * np.pi, 48, endpoint=False))
    res = np.array([r[2] for r in rows])
    assert res.min() < 0.05 * np.median(res), "grid scan shows no residual valley"
    assert _real_branch_sign_change(), "no sign change on the real branch"

    reps = solve_surgery_reps(-1, slope)
    worst_ext, worst_tau = 0.0, 0.0
    for rep in reps:
        worst_ext = max(worst_ext, rep.extension_residual)
        a, b = torsion_surgery(-1, rep), torsion_surgery_dehn(-1, rep)
        worst_tau = max(worst_tau, abs(a - b))
    elapsed = time.perf_counter() - t0
    ok = len(reps) >= 1 and worst_ext < 1e-8 and worst_tau < 1e-8 and elapsed < 60
    record("C6 solver n=-1 slope 1/1", ok,
           f"{len(reps)} reps, ext {worst_ext:.1e}, tau_M diff {worst_tau:.1e}, {elapsed:.2f}s")
    assert len(reps) >= 1
    assert worst_ext < 1e-8
    assert worst_tau < 1e-8
    assert elapsed < 60


def trefoil_example(x):
    return 2 / (x * x * (x * x - 3) ** 2)


def figure_eight_example(x):
    return (2 * x - 2) / (x * x * (x * x - 5))


@pytest.mark.parametrize("n, example", [(1, trefoil_example), (-1, figure_eight_example)])
def test_c7_table(n, example, record):
    t0 = time.perf_counter()
    code, report, _ = cli.run(["table", "--n", str(n), "--sweep-x", "2.1:4.0:20", "--tol", "1e-9"])
    elapsed = time.perf_counter() - t0
    rows = report["results"]
    assert {r["row"] for r in rows} == set(range(20))
    worst = 0.0
    for r in rows:
        x = r["x"]
        assert min(abs(x - c) for c in (0, 2, 3 ** 0.5, -(3 ** 0.5), 5 ** 0.5, -(5 ** 0.5))) > 1e-3
        v = example(x)
        worst = max(worst, abs(r["tau_M"] - v) / max(1.0, abs(v)))
    ok = code == 0 and worst < 1e-9 and elapsed < 5
    record(f"C7 table n={n}", ok, f"{len(rows)} rows, worst {worst:.2e}, {elapsed:.3f}s")
    assert code == 0 and not report["warnings"]
    assert worst < 1e-9
    assert elapsed < 5
