"""Dehn surgery on twist knots: longitude, extension condition, and torsion.

The p/q-surgered manifold M has group <a, b | w^n a = b w^n, a^p lambda^q = 1>
with lambda = wbar^n w^n, wbar being w spelled backwards.
"""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import sl2
from .chebyshev import s_cheb
from .riley import (RileyPoint, check_twist, polish_root, rho_a, rho_w_pow, riley_eval,
                    riley_residual, riley_roots, trace_w)
from .torsion import ParabolicError, torsion_complement

log = logging.getLogger(__name__)

X_TOL = 1e-8
TRACE_TOL = 1e-10


class DegenerateFormulaError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Slope:
    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 and self.q == 0:
            raise ValueError("slope (0, 0) is not a surgery")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"slope {self.p}/{self.q} is not in lowest terms")

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class SurgeryRep:
    n: int
    point: RileyPoint
    slope: Slope
    extension_residual: float


@dataclass(frozen=True)
class ExtensionCheck:
    accepted: bool
    residual: float


def rho_wbar_pow(n, s, u):
    """rho(wbar^n), wbar = a b^-1 a^-1 b, in closed form."""
    z = trace_w(s, u)
    sn, sn1 = s_cheb(n, z), s_cheb(n - 1, z)
    return sl2.mat2(
        sn - (1 - u / (s * s)) * sn1,
        (s - 1 / s - u / s) * sn1,
        ((1 / s - s) * u + u * u / s) * sn1,
        sn - (1 + (2 - s * s) * u + u * u) * sn1,
    )


def rho_longitude(n, pt):
    return rho_wbar_pow(n, pt.s, pt.u) @ rho_w_pow(n, pt.s, pt.u)


def trace_longitude(pt):
    """tr rho(lambda) from the closed form that holds on the Riley variety."""
    s, u = pt.s, pt.u
    c = s * s + s ** -2
    denom = (u + 1) * (c - 2) - u * u
    if abs(denom) < 1e-12:
        raise DegenerateFormulaError("longitude trace formula degenerate")
    return complex(2 + u * u * (c + 2) / denom)


def surgery_matrix(n, pt, slope):
    """rho(a)^p rho(lambda)^q."""
    return sl2.mat_pow(rho_a(pt.s), slope.p) @ sl2.mat_pow(rho_longitude(n, pt), slope.q, check=False)


def extension_check(n, pt, slope, tol=1e-8):
    res = sl2.norm(surgery_matrix(n, pt, slope) - sl2.identity())
    return ExtensionCheck(bool(res < tol), res)


def _torsion_surgery_hypotheses(n, pt):
    x = pt.x
    if abs(x) <= X_TOL or abs(x - 2) <= X_TOL:
        raise ParabolicError("surgery torsion formula needs meridian trace x not in {0, 2}")
    tr_l = sl2.trace(rho_longitude(n, pt))
    if abs(tr_l - 2) <= TRACE_TOL:
        raise DegenerateFormulaError("surgery torsion formula requires tr rho(lambda) != 2")
    return x, tr_l


def _point(rep):
    return rep.point if isinstance(rep, SurgeryRep) else rep


def torsion_surgery(n, rep):
    """Closed-form torsion of the surgered manifold at a Riley point."""
    n = check_twist(n)
    pt = _point(rep)
    x, _ = _torsion_surgery_hypotheses(n, pt)
    u = pt.u
    tau_e = torsion_complement(n, pt)
    return complex(-tau_e * (u ** -2 * (u + 1) * (x * x - 4) - 1) / (x * x))


def torsion_surgery_dehn(n, rep):
    """tau(E_K) / (2 - tr rho(lambda))."""
    n = check_twist(n)
    pt = _point(rep)
    _, tr_l = _torsion_surgery_hypotheses(n, pt)
    return complex(torsion_complement(n, pt) / (2 - tr_l))


# -- solver -------------------------------------------------------------------

def _residuals(n, slope, s, u):
    # second equation: (1,1) entry of a^p lambda^q minus 1; simple zero where tr - 2 has a double one
    pt = RileyPoint(s, u)
    f2 = surgery_matrix(n, pt, slope)[0, 0] - 1
    return np.array([riley_eval(n, s, u), f2])


def _jacobian(n, slope, v, rel_step=1e-7):
    J = np.empty((2, 2), dtype=complex)
    for j in range(2):
        h = rel_step * max(1.0, abs(v[j]))
        e = np.zeros(2, dtype=complex)
        e[j] = h
        J[:, j] = (_residuals(n, slope, *(v + e)) - _residuals(n, slope, *(v - e))) / (2 * h)
    return J


def damped_newton(n, slope, s0, u0, tol=1e-12, max_iter=100, max_halvings=20):
    """Newton on (phi_K, [a^p lambda^q]_11 - 1) over (s, u) in C^2.

    Returns (s, u, residual, status) with status 'converged', 'singular',
    'stalled' or 'max_iter'.
    """
    v = np.array([s0, u0], dtype=complex)
    f = _residuals(n, slope, *v)
    err = np.max(np.abs(f))
    for _ in range(max_iter):
        if err < tol:
            return v[0], v[1], err, "converged"
        J = _jacobian(n, slope, v)
        if not np.all(np.isfinite(J)) or np.linalg.cond(J) > 1e14:
            return v[0], v[1], err, "singular"
        step = np.linalg.solve(J, f)
        t = 1.0
        for _ in range(max_halvings + 1):
            trial = v - t * step
            if trial[0] != 0:
                f_trial = _residuals(n, slope, *trial)
                err_trial = np.max(np.abs(f_trial))
                if np.isfinite(err_trial) and err_trial < err:
                    break
            t /= 2
        else:
            return v[0], v[1], err, "stalled"
        v, f, err = trial, f_trial, err_trial
    status = "converged" if err < tol else "max_iter"
    return v[0], v[1], err, status


def start_points(n, seed=0, radii=None, n_angles=12):
    """(s, u) seeds: s on circles, u from the Riley roots over each s."""
    rng = np.random.default_rng(seed)
    radii = np.linspace(0.6, 1.8, 7) if radii is None else radii
    starts = []
    for r in radii:
        offset = rng.uniform(0, 2 * np.pi / n_angles)
        for k in range(n_angles):
            s = r * np.exp(1j * (offset + 2 * np.pi * k / n_angles))
            if abs(s + 1 / s - 2) < 1e-3:
                continue
            for p in riley_roots(n, s):
                starts.append((complex(s), p.u))
    return starts


def _thread_count():
    try:
        k = int(os.environ.get("TORSIONLAB_THREADS", "1"))
    except ValueError:
        k = 1
    if k == 0:
        return os.cpu_count() or 1
    return max(1, k)


def solve_surgery_reps(n, slope, starts=None, tol=1e-12, max_iter=100, seed=0,
                       ext_tol=1e-8, dedup_tol=1e-6, max_restarts=3):
    """Representations of the knot group that extend over the p/q-surgery.

    Multi-start damped Newton; every converged candidate must also pass the
    full matrix check a^p lambda^q = I. Results are sorted and include the
    s -> 1/s partner of each solution when it passes the same check.
    """
    n = check_twist(n)
    if not isinstance(slope, Slope):
        slope = Slope(*slope)
    if starts is None:
        starts = start_points(n, seed=seed)
    rng = np.random.default_rng(seed + 1)
    jitters = [rng.standard_normal((max_restarts, 2)) + 1j * rng.standard_normal((max_restarts, 2))
               for _ in starts]

    def run(i):
        s0, u0 = starts[i]
        for attempt in range(max_restarts + 1):
            s, u, err, status = damped_newton(n, slope, s0, u0, tol=tol, max_iter=max_iter)
            if status != "singular":
                return s, u, err, status
            d = 1e-2 * jitters[i][attempt % max_restarts]
            s0, u0 = starts[i][0] + d[0], starts[i][1] + d[1]
        return s, u, err, status

    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            outcomes = list(ex.map(run, range(len(starts))))
    else:
        outcomes = [run(i) for i in range(len(starts))]

    reps = []
    for s, u, err, status in outcomes:
        if status != "converged" or abs(u) < 1e-8 or s == 0:
            continue
        u, res, ok = polish_root(n, s, u, tol=1e-14)
        for cand in (RileyPoint(s, u, res), RileyPoint(1 / s, u, res)):
            if riley_residual(n, cand.s, cand.u) > 1e-10:
                continue
            check = extension_check(n, cand, slope, tol=ext_tol)
            if not check.accepted:
                continue
            if any(abs(cand.s - r.point.s) < dedup_tol and abs(cand.u - r.point.u) < dedup_tol
                   for r in reps):
                continue
            reps.append(SurgeryRep(n, cand, slope, check.residual))
    if not reps:
        log.warning("no representation found for n=%d, slope %s", n, slope)
    reps.sort(key=lambda r: (round(r.point.s.real, 8), round(r.point.s.imag, 8),
                             round(r.point.u.real, 8), round(r.point.u.imag, 8)))
    return reps


def residual_scan(n, slope, radii, angles):
    """Coarse grid of extension residuals over the Riley variety.

    Returns rows (s, u, residual) for every Riley root over every grid s.
    """
    rows = []
    for r in radii:
        for th in angles:
            s = r * np.exp(1j * th)
            for p in riley_roots(n, s):
                rows.append((p.s, p.u, extension_check(n, p, slope).residual))
    return rows
