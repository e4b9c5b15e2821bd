"""Randomized identity checks across all modules.

Each check draws its own trials from a seeded generator and returns a
CheckResult holding the worst normalized error seen. ``run_all`` is what
the ``verify`` command executes.
"""

from dataclasses import dataclass

import numpy as np

from . import fox, sl2
from .chebyshev import det_sum_ratio, p_cheb, s_cheb
from .riley import random_riley_points, relation_residual, rho_a, rho_b, rho_w
from .surgery import rho_longitude, torsion_surgery, torsion_surgery_dehn, trace_longitude
from .torsion import (omega_det, omega_matrix, omega_trace, torsion_complement, torsion_fox)

TWISTS = (-5, -4, -3, -2, -1, 1, 2, 3, 4, 5)


@dataclass
class CheckResult:
    name: str
    trials: int
    worst: float
    tol: float

    @property
    def passed(self):
        return self.trials > 0 and self.worst < self.tol

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name:<28} trials={self.trials:<5} worst={self.worst:.3e} tol={self.tol:.0e}"


def _annulus(rng, lo=0.1, hi=10.0):
    r = rng.uniform(lo, hi)
    return r * np.exp(1j * rng.uniform(0, 2 * np.pi))


def _rel(err, scale):
    return abs(err) / max(1.0, abs(scale))


def _riley_points(rng, count, twists=TWISTS):
    pts = []
    per = -(-count // len(twists))
    for n in twists:
        pts.extend((n, p) for p in random_riley_points(n, rng, per))
    return pts[:count]


def _sl2_near_parabolic(rng, delta):
    a = 1 + complex(*rng.normal(size=2)) * 0.3
    d = 2 + delta - a
    b = complex(*rng.normal(size=2))
    c = (a * d - 1) / b
    return sl2.mat2(a, b, c, d)


# -- chebyshev ----------------------------------------------------------------

def check_chebyshev_determinant(rng, trials=200):
    worst = 0.0
    for _ in range(trials):
        z = _annulus(rng)
        for k in range(-25, 26):
            sk, sk1 = s_cheb(k, z), s_cheb(k - 1, z)
            err = sk * sk - z * sk * sk1 + sk1 * sk1 - 1
            worst = max(worst, abs(err) / (1 + abs(sk) ** 2))
    return CheckResult("S_k^2 - z S_k S_k-1 + S_k-1^2", trials, worst, 1e-10)


def check_partial_sum(rng, trials=200):
    worst = 0.0
    done = 0
    while done < trials:
        z = _annulus(rng)
        if abs(z - 2) <= 1e-3:
            continue
        done += 1
        for k in range(26):
            p = p_cheb(k, z)
            q = (s_cheb(k + 1, z) - s_cheb(k, z) - 1) / (z - 2)
            worst = max(worst, _rel(p - q, p))
    return CheckResult("P_k division form", trials, worst, 1e-9)


def check_partial_sum_quadratic(rng, trials=200):
    worst = 0.0
    for _ in range(trials):
        z = _annulus(rng)
        for k in range(1, 26):
            pk, pk1 = p_cheb(k, z), p_cheb(k - 1, z)
            err = pk * pk + pk1 * pk1 - z * pk * pk1 - (pk + pk1)
            scale = abs(pk) ** 2 + abs(pk1) ** 2 + abs(z * pk * pk1) + 1
            worst = max(worst, abs(err) / scale)
    return CheckResult("P_k quadratic identity", trials, worst, 1e-9)


# -- sl2 ----------------------------------------------------------------------

def check_matrix_power(rng, trials=200):
    worst = 0.0
    for _ in range(trials):
        V = sl2.random_sl2(rng, scale=0.7)
        k = int(rng.integers(-20, 21))
        ref = np.linalg.matrix_power(V if k >= 0 else sl2.inverse(V), abs(k))
        worst = max(worst, sl2.norm(sl2.mat_pow(V, k) - ref) / max(1.0, sl2.norm(ref)))
        back = sl2.mat_pow(V, k) @ sl2.mat_pow(V, -k)
        worst = max(worst, sl2.norm(back - sl2.identity()) / max(1.0, sl2.norm(sl2.mat_pow(V, k)) ** 2))
        t = sl2.trace(V)
        ch = sl2.mat_pow(V, k) - t * sl2.mat_pow(V, k - 1) + sl2.mat_pow(V, k - 2)
        worst = max(worst, sl2.norm(ch) / max(1.0, abs(t) * sl2.norm(sl2.mat_pow(V, k - 1))))
    return CheckResult("matrix power closed form", trials, worst, 1e-10)


def check_geometric_sum(rng, trials=200):
    worst = 0.0
    for _ in range(trials):
        V = sl2.random_sl2(rng, scale=0.7)
        k = int(rng.integers(0, 21))
        ref = sum(np.linalg.matrix_power(V, i) for i in range(k + 1))
        worst = max(worst, sl2.norm(sl2.geom_sum(V, k) - ref) / max(1.0, sl2.norm(ref)))
    return CheckResult("geometric sum closed form", trials, worst, 1e-10)


def check_geometric_sum_det(rng, trials=200):
    worst = 0.0
    for i in range(trials):
        V = sl2.random_sl2(rng) if i % 2 else _sl2_near_parabolic(rng, 1e-6 * rng.uniform(-1, 1))
        k = int(rng.integers(0, 21))
        G = sl2.geom_sum(V, k)
        rhs = det_sum_ratio(k, sl2.trace(V))
        # a 2x2 determinant is only known to eps * (|ad| + |bc|)
        scale = abs(G[0, 0] * G[1, 1]) + abs(G[0, 1] * G[1, 0])
        worst = max(worst, abs(sl2.det(G) - rhs) / max(1.0, abs(rhs), scale))
    return CheckResult("det of geometric sum", trials, worst, 1e-9)


# -- riley / torsion / surgery --------------------------------------------------

def check_relation(rng, trials=200):
    worst = 0.0
    for n, p in _riley_points(rng, trials):
        worst = max(worst, relation_residual(n, p))
    return CheckResult("relation w^n a = b w^n", trials, worst, 1e-9)


def check_square_of_s(rng, trials=200):
    worst = 0.0
    for n, p in _riley_points(rng, trials):
        s, u = p.s, p.u
        c = s * s + s ** -2
        val = s_cheb(n - 1, p.z) ** 2 * (u + 2 - c) * (u * u - (c - 2) * (u + 1))
        worst = max(worst, abs(val - 1))
    return CheckResult("S_{n-1}^2 at Riley roots", trials, worst, 1e-8)


def check_longitude(rng, trials=200):
    worst = 0.0
    for n, p in _riley_points(rng, trials):
        s, u = p.s, p.u
        c = s * s + s ** -2
        L = rho_longitude(n, p)
        tr_matrix = sl2.trace(L)
        inner = 2 + u * u * (c + 2) * (c - 2 - u) * s_cheb(n - 1, p.z) ** 2
        closed = trace_longitude(p)
        A = rho_a(s)
        worst = max(worst,
                    _rel(closed - tr_matrix, tr_matrix),
                    _rel(inner - tr_matrix, tr_matrix),
                    sl2.norm(L @ A - A @ L) / max(1.0, sl2.norm(L)),
                    abs(sl2.det(L) - 1))
    return CheckResult("longitude trace", trials, worst, 1e-8)


def check_omega(rng, trials=200):
    worst = 0.0
    for n, p in _riley_points(rng, trials):
        Om = omega_matrix(n, p)
        d, t = omega_det(n, p), omega_trace(n, p)
        full = sl2.det(sl2.identity() + Om)
        worst = max(worst,
                    _rel(d - sl2.det(Om), d),
                    _rel(t - sl2.trace(Om), t),
                    _rel(1 + d + t - full, full))
    return CheckResult("det and trace of Omega", trials, worst, 1e-9)


def _random_word(rng, length):
    letters = [(("a", "b")[rng.integers(2)], (1, -1)[rng.integers(2)]) for _ in range(length)]
    return fox.Word(tuple(letters))


def check_fox_identity(rng, trials=200):
    worst = 0.0
    for _ in range(trials):
        A, B = sl2.random_sl2(rng, 0.6), sl2.random_sl2(rng, 0.6)
        v = _random_word(rng, int(rng.integers(0, 31)))
        rho = {"a": A, "b": B}
        da = fox.evaluate(fox.fox_derivative(v, "a"), rho)
        db = fox.evaluate(fox.fox_derivative(v, "b"), rho)
        lhs = fox.evaluate_word(v, rho) - sl2.identity()
        rhs = da @ (A - sl2.identity()) + db @ (B - sl2.identity())
        scale = 1 + sl2.norm(lhs) + sl2.norm(da) * sl2.norm(A) + sl2.norm(db) * sl2.norm(B)
        worst = max(worst, sl2.norm(lhs - rhs) / scale)
    return CheckResult("fundamental Fox identity", trials, worst, 1e-9)


def check_torsion_oracle(rng, trials=200):
    worst = 0.0
    for n, p in _riley_points(rng, trials):
        tau = torsion_complement(n, p)
        worst = max(worst, abs(tau - torsion_fox(n, p)) / (1 + abs(tau)))
    return CheckResult("closed torsion vs Fox oracle", trials, worst, 1e-8)


def check_dehn(rng, trials=200):
    worst = 0.0
    for n, p in _riley_points(rng, trials, twists=(-4, -3, -2, -1, 1, 2, 3, 4)):
        a, b = torsion_surgery(n, p), torsion_surgery_dehn(n, p)
        worst = max(worst, _rel(a - b, b))
    return CheckResult("surgery torsion two routes", trials, worst, 1e-8)


def check_shifted_chebyshev(rng, trials=200):
    worst = 0.0
    for n, p in _riley_points(rng, trials):
        s, u = p.s, p.u
        lhs = s_cheb(n - 2, p.z)
        rhs = (s * s + s ** -2 - 1 - u) * s_cheb(n - 1, p.z)
        worst = max(worst, _rel(lhs - rhs, lhs))
    return CheckResult("S_{n-2} at Riley roots", trials, worst, 1e-8)


def check_rho_w(rng, trials=200):
    worst = 0.0
    for n, p in _riley_points(rng, trials):
        A, B = rho_a(p.s), rho_b(p.s, p.u)
        direct = B @ sl2.inverse(A) @ sl2.inverse(B) @ A
        worst = max(worst, sl2.norm(direct - rho_w(p.s, p.u)) / max(1.0, sl2.norm(direct)))
    return CheckResult("rho(w) closed form", trials, worst, 1e-12)


ALL_CHECKS = (
    check_chebyshev_determinant,
    check_partial_sum,
    check_partial_sum_quadratic,
    check_matrix_power,
    check_geometric_sum,
    check_geometric_sum_det,
    check_rho_w,
    check_relation,
    check_square_of_s,
    check_longitude,
    check_omega,
    check_shifted_chebyshev,
    check_fox_identity,
    check_torsion_oracle,
    check_dehn,
)


def run_all(seed=0, trials=200):
    rng = np.random.default_rng(seed)
    return [check(rng, trials) for check in ALL_CHECKS]
