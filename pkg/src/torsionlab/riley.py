"""Nonabelian SL2(C) representations of the twist knot group.

The knot group of J(2, 2n) is <a, b | w^n a = b w^n> with w = b a^-1 b^-1 a.
Up to conjugation a nonabelian representation sends

    a -> [[s, 1], [0, 1/s]],    b -> [[s, 0], [-u, 1/s]]

with (s, u) a zero of the Riley polynomial and u != 0.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from . import sl2
from .chebyshev import s_cheb

log = logging.getLogger(__name__)

TRIM_TOL = 1e-12
ZERO_U_TOL = 1e-10
DEDUP_TOL = 1e-8


class RileyError(ValueError):
    pass


def check_twist(n):
    n = int(n)
    if n == 0:
        raise RileyError("twist knot J(2,2n) needs n != 0")
    return n


def _check_s(s):
    if s == 0:
        raise RileyError("s must be nonzero")
    return complex(s)


@dataclass(frozen=True)
class RileyPoint:
    s: complex
    u: complex
    residual: float = 0.0
    converged: bool = True

    @property
    def x(self):
        """Meridian trace s + 1/s."""
        return self.s + 1 / self.s

    @property
    def z(self):
        """Trace of rho(w)."""
        s, u = self.s, self.u
        return 2 + (2 - s * s - s ** -2) * u + u * u

    def mirror(self):
        """The same representation class seen through s -> 1/s."""
        return RileyPoint(1 / self.s, self.u, self.residual, self.converged)


def trace_w(s, u):
    return 2 + (2 - s * s - s ** -2) * u + u * u


# -- matrices -----------------------------------------------------------------

def rho_a(s):
    s = _check_s(s)
    return sl2.mat2(s, 1, 0, 1 / s)


def rho_b(s, u):
    s = _check_s(s)
    return sl2.mat2(s, 0, -u, 1 / s)


def rho_w(s, u):
    """rho(b a^-1 b^-1 a) in closed form."""
    s = _check_s(s)
    return sl2.mat2(
        1 - s * s * u,
        1 / s - s - s * u,
        (s - 1 / s) * u + s * u * u,
        1 + (2 - s ** -2) * u + u * u,
    )


def rho_w_pow(n, s, u):
    """rho(w^n) in closed form, any integer n."""
    s = _check_s(s)
    z = trace_w(s, u)
    sn, sn1 = s_cheb(n, z), s_cheb(n - 1, z)
    return sl2.mat2(
        sn - (1 + (2 - s ** -2) * u + u * u) * sn1,
        (1 / s - s - s * u) * sn1,
        ((s - 1 / s) * u + s * u * u) * sn1,
        sn - (1 - s * s * u) * sn1,
    )


# -- Riley polynomial ---------------------------------------------------------

def _riley_factor(s, u):
    c = s * s + s ** -2
    return u * u - (u + 1) * (c - 3)


def riley_eval(n, s, u):
    """phi_K(s, u) = S_n(z) - (u^2 - (u+1)(s^2 + s^-2 - 3)) S_{n-1}(z)."""
    s = _check_s(s)
    z = trace_w(s, u)
    return s_cheb(n, z) - _riley_factor(s, u) * s_cheb(n - 1, z)


def _riley_with_derivative(n, s, u):
    """(phi, dphi/du, scale) where scale bounds the size of the summands."""
    c = s * s + s ** -2
    z = 2 + (2 - c) * u + u * u
    dz = (2 - c) + 2 * u
    sn, dsn = _s_and_derivative(n, z)
    sn1, dsn1 = _s_and_derivative(n - 1, z)
    q = u * u - (u + 1) * (c - 3)
    dq = 2 * u - (c - 3)
    phi = sn - q * sn1
    dphi = dsn * dz - dq * sn1 - q * dsn1 * dz
    return phi, dphi, abs(sn) + abs(q * sn1)


def _s_and_derivative(k, z):
    # differentiate the three-term recurrence alongside the values
    if k >= 0:
        s_prev, s_cur, d_prev, d_cur = 0j, 1.0 + 0j, 0j, 0j  # S_-1, S_0
        for _ in range(k):
            s_prev, s_cur, d_prev, d_cur = (
                s_cur, z * s_cur - s_prev, d_cur, s_cur + z * d_cur - d_prev)
        return s_cur, d_cur
    s_next, s_cur, d_next, d_cur = z, 1.0 + 0j, 1.0 + 0j, 0j  # S_1, S_0
    for _ in range(-k):
        s_next, s_cur, d_next, d_cur = (
            s_cur, z * s_cur - s_next, d_cur, s_cur + z * d_cur - d_next)
    return s_cur, d_cur


@dataclass
class PolyC:
    """Univariate complex polynomial, coefficients in ascending degree."""

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(1, dtype=complex))

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        self.coeffs = c if c.size else np.zeros(1, dtype=complex)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, u):
        return np.polynomial.polynomial.polyval(u, self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        m = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(m, dtype=complex)
        out[: len(self.coeffs)] += self.coeffs
        out[: len(other.coeffs)] += other.coeffs
        return PolyC(out)

    __radd__ = __add__

    def __neg__(self):
        return PolyC(-self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        return PolyC(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def trimmed(self, rel_tol=TRIM_TOL):
        """Drop leading coefficients below rel_tol times the largest one."""
        c = self.coeffs
        big = np.max(np.abs(c))
        if big == 0:
            return PolyC([0j])
        keep = len(c)
        while keep > 1 and abs(c[keep - 1]) < rel_tol * big:
            keep -= 1
        return PolyC(c[:keep])

    def is_zero(self):
        return not np.any(self.coeffs)

    def roots(self, max_iter=500, tol=1e-14):
        """All complex roots by Durand-Kerner (Weierstrass) iteration."""
        return durand_kerner(self.coeffs, max_iter=max_iter, tol=tol)


def _as_poly(p):
    return p if isinstance(p, PolyC) else PolyC([p])


def durand_kerner(coeffs, max_iter=500, tol=1e-14):
    """Roots of sum coeffs[i] u^i. Leading coefficient must be nonzero."""
    c = np.asarray(coeffs, dtype=complex)
    deg = len(c) - 1
    if deg < 1:
        return np.zeros(0, dtype=complex)
    monic = c / c[-1]
    if deg == 1:
        return np.array([-monic[0]])
    radius = 1 + np.max(np.abs(monic[:-1]))
    # off-axis start angle keeps the initial guesses away from symmetric configurations
    roots = radius * np.exp(1j * (2 * np.pi * np.arange(deg) / deg + 0.4))
    for _ in range(max_iter):
        values = np.polynomial.polynomial.polyval(roots, monic)
        diffs = roots[:, None] - roots[None, :]
        np.fill_diagonal(diffs, 1)
        step = values / np.prod(diffs, axis=1)
        roots = roots - step
        if np.max(np.abs(step)) <= tol * max(1.0, np.max(np.abs(roots))):
            break
    return roots


def _cheb_poly(k, zpoly):
    """S_k(z(u)) as a PolyC in u."""
    one = PolyC([1])
    if k >= 0:
        prev, cur = PolyC([0]), one
        for _ in range(k):
            prev, cur = cur, zpoly * cur - prev
        return cur
    nxt, cur = zpoly, one
    for _ in range(-k):
        nxt, cur = cur, zpoly * cur - nxt
    return cur


def riley_poly_in_u(n, s):
    """phi_K(s, .) expanded as a polynomial in u, leading zeros trimmed."""
    n = check_twist(n)
    s = _check_s(s)
    c = s * s + s ** -2
    zpoly = PolyC([2, 2 - c, 1])
    factor = PolyC([-(c - 3), -(c - 3), 1])
    phi = (_cheb_poly(n, zpoly) - factor * _cheb_poly(n - 1, zpoly)).trimmed()
    if phi.degree == 0 and abs(phi.coeffs[0]) == 0:
        raise RileyError(f"Riley polynomial vanishes identically at s={s}")
    return phi


def riley_residual(n, s, u):
    """|phi_K(s, u)| relative to max(1, |S_n| + |q S_{n-1}|)."""
    phi, _, scale = _riley_with_derivative(n, s, u)
    return abs(phi) / max(1.0, scale)


def polish_root(n, s, u, tol=1e-12, max_iter=50):
    """Newton on u -> phi_K(s, u). Returns (u, relative residual, converged).

    Iterates past tol until the step reaches rounding level, since a small
    residual alone still leaves u off by residual/|phi'|.
    """
    best_u, best_res = u, np.inf
    for _ in range(max_iter):
        phi, dphi, scale = _riley_with_derivative(n, s, u)
        res = abs(phi) / max(1.0, scale)
        if res < best_res:
            best_u, best_res = u, res
        if res == 0 or dphi == 0:
            break
        step = phi / dphi
        u = u - step
        if abs(step) <= 4 * np.finfo(float).eps * max(1.0, abs(u)):
            phi, _, scale = _riley_with_derivative(n, s, u)
            res = abs(phi) / max(1.0, scale)
            if res <= best_res:
                best_u, best_res = u, res
            break
    return best_u, best_res, best_res < tol


def riley_roots(n, s, tol=1e-12, max_iter=500):
    """All nonabelian Riley points over a fixed s.

    Residuals are measured relative to max(1, |S_n| + |q S_{n-1}|), the size
    of the two summands of phi_K.
    """
    n = check_twist(n)
    s = _check_s(s)
    poly = riley_poly_in_u(n, s)
    points = []
    for u0 in poly.roots(max_iter=max_iter):
        u, res, ok = polish_root(n, s, complex(u0), tol=tol)
        if abs(u) <= ZERO_U_TOL:
            log.info("dropping abelian root u=%r at s=%r", u, s)
            continue
        if not ok:
            log.warning("root u=%r at s=%r did not converge (residual %.3g)", u, s, res)
        if any(abs(u - p.u) < DEDUP_TOL for p in points):
            continue
        points.append(RileyPoint(s, complex(u), float(res), bool(ok)))
    points.sort(key=lambda p: (round(p.u.real, 10), round(p.u.imag, 10)))
    return points


def relation_residual(n, pt):
    """max-modulus of rho(w^n a) - rho(b w^n), built by plain matrix products."""
    A, B = rho_a(pt.s), rho_b(pt.s, pt.u)
    W = B @ sl2.inverse(A) @ sl2.inverse(B) @ A
    Wn = np.linalg.matrix_power(W, n) if n >= 0 else np.linalg.matrix_power(sl2.inverse(W), -n)
    return sl2.norm(Wn @ A - B @ Wn)


def random_riley_points(n, rng, count, s_min=0.5, s_max=2.0, x_margin=1e-3):
    """Draw random s in an annulus and collect Riley roots until count are found.

    The default annulus is closed under s -> 1/s; beyond it |z|^|n| grows fast
    enough that the double-precision identity checks lose their margin.
    """
    n = check_twist(n)
    out = []
    while len(out) < count:
        r = rng.uniform(s_min, s_max)
        s = r * np.exp(1j * rng.uniform(0, 2 * np.pi))
        x = s + 1 / s
        if abs(x - 2) < x_margin or abs(x) < x_margin:
            continue
        roots = [p for p in riley_roots(n, s) if p.converged]
        if roots:
            out.append(roots[rng.integers(len(roots))])
    return out
