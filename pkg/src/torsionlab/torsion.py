"""Reidemeister torsion of twist knot complements.

The closed form in the meridian trace x and z = tr rho(w),

    tau = (2 - x) (S_n - S_{n-2} - 2)/(z - 2) + x S_{n-1}(z),

is checked against Johnson's Fox-calculus determinant on the same point.
"""

from dataclasses import dataclass, field

from . import fox, sl2
from .chebyshev import s_cheb, twist_ratio
from .riley import RileyPoint, check_twist, rho_a, rho_b, rho_w, riley_residual

X_TOL = 1e-8
ROOT_TOL = 1e-8


class ParabolicError(ValueError):
    pass


class NotARootError(ValueError):
    pass


@dataclass
class TorsionReport:
    value: complex
    method: str
    n: int
    point: RileyPoint
    warnings: list = field(default_factory=list)
    oracle: complex = None

    @property
    def discrepancy(self):
        if self.oracle is None:
            return None
        return abs(self.value - self.oracle)


def root_residual(n, pt):
    return riley_residual(n, pt.s, pt.u)


def require_root(n, pt, tol=ROOT_TOL):
    res = root_residual(n, pt)
    if not res < tol:
        raise NotARootError(f"(s, u) = ({pt.s}, {pt.u}) is not a Riley root for n={n}: residual {res:.3g}")
    return res


def torsion_complement(n, pt, check_root=True):
    n = check_twist(n)
    x, z = pt.x, pt.z
    if abs(x - 2) <= X_TOL:
        raise ParabolicError("torsion formula needs meridian trace x != 2 (parabolic point)")
    if check_root:
        require_root(n, pt)
    return complex((2 - x) * twist_ratio(n, z) + x * s_cheb(n - 1, z))


def representation(pt):
    return {"a": rho_a(pt.s), "b": rho_b(pt.s, pt.u)}


def torsion_fox(n, pt, removed_generator="b"):
    """Fox-calculus oracle; removing b's column is the canonical choice."""
    n = check_twist(n)
    return fox.johnson_torsion(fox.twist_relator(n), representation(pt), removed_generator)


def torsion_report(n, pt, verify=False, tol=1e-8):
    rep = TorsionReport(torsion_complement(n, pt), "closed_form", n, pt)
    if verify:
        rep.oracle = torsion_fox(n, pt)
        if rep.discrepancy > tol * (1 + abs(rep.value)):
            rep.warnings.append(f"closed form and Fox oracle differ by {rep.discrepancy:.3g}")
    return rep


def omega_det(n, pt):
    x = pt.x
    return complex((2 - x) ** 2 * twist_ratio(n, pt.z))


def omega_trace(n, pt):
    """Closed form of tr Omega; only valid at Riley roots."""
    x = pt.x
    return complex(x * (2 - x) * s_cheb(n - 1, pt.z) - 1)


def delta_matrix(n, pt):
    """rho(1 + w^-1 + ... + w^-(n-1)) for n > 0; -(w + ... + w^|n|) for n < 0."""
    n = check_twist(n)
    W = rho_w(pt.s, pt.u)
    if n > 0:
        return sl2.geom_sum(sl2.inverse(W), n - 1)
    return -W @ sl2.geom_sum(W, -n - 1)


def omega_matrix(n, pt):
    """Omega = rho(a^-1 (1 - b)(1 - a)) Delta, built from matrices."""
    A, B = rho_a(pt.s), rho_b(pt.s, pt.u)
    I = sl2.identity()
    return sl2.inverse(A) @ (I - B) @ (I - A) @ delta_matrix(n, pt)


def fox_da_closed(n, pt):
    """rho(dr/da) = rho(w^n) (I + (I - a) Delta a^-1 (I - b))."""
    A, B = rho_a(pt.s), rho_b(pt.s, pt.u)
    I = sl2.identity()
    Wn = sl2.mat_pow(rho_w(pt.s, pt.u), n)
    return Wn @ (I + (I - A) @ delta_matrix(n, pt) @ sl2.inverse(A) @ (I - B))


def sign_agreement(n, pt):
    """Fox torsion from both column deletions: (tau removing b, tau removing a)."""
    return torsion_fox(n, pt, "b"), torsion_fox(n, pt, "a")


__all__ = [
    "TorsionReport",
    "ParabolicError",
    "NotARootError",
    "torsion_complement",
    "torsion_fox",
    "torsion_report",
    "omega_det",
    "omega_trace",
    "omega_matrix",
    "delta_matrix",
    "fox_da_closed",
    "sign_agreement",
    "root_residual",
]
