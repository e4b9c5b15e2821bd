"""2x2 complex matrices and Cayley-Hamilton closed forms for SL2 powers.

A Mat2 here is a plain ``numpy`` array of shape (2, 2) and complex dtype.
"""

import numpy as np

from .chebyshev import p_cheb, s_cheb

# absolute tolerance on |det - 1| for "is in SL2"; module-level so callers can tune it
SL2_TOL = 1e-9


class NotSL2Error(ValueError):
    pass


def mat2(a11, a12, a21, a22, sl2=False):
    """Build a 2x2 complex matrix, optionally checking det = 1."""
    m = np.array([[a11, a12], [a21, a22]], dtype=complex)
    if sl2:
        check_sl2(m)
    return m


def identity():
    return np.eye(2, dtype=complex)


def mul(A, B):
    return A @ B


def det(A):
    return A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]


def trace(A):
    return A[0, 0] + A[1, 1]


def inverse(A):
    d = det(A)
    return np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]], dtype=complex) / d


def norm(A):
    """Entrywise max-modulus norm."""
    return float(np.max(np.abs(A)))


def is_sl2(A, tol=None):
    tol = SL2_TOL if tol is None else tol
    return abs(det(A) - 1) < tol


def check_sl2(A, tol=None):
    if not is_sl2(A, tol):
        raise NotSL2Error(f"matrix is not in SL2: det = {det(A)!r}")
    return A


def mat_pow(V, k, check=True):
    """V^k for V in SL2 and any integer k, via V^k = S_k(t) I - S_{k-1}(t) V^{-1}.

    Pass check=False for matrices that are products of SL2 factors by
    construction but whose computed determinant has drifted.
    """
    if check:
        check_sl2(V)
    (a, b), (c, d) = V
    t = a + d
    sk, sk1 = s_cheb(k, t), s_cheb(k - 1, t)
    return np.array([[sk - d * sk1, b * sk1], [c * sk1, sk - a * sk1]], dtype=complex)


def geom_sum(V, k):
    """I + V + ... + V^k for V in SL2 and k >= 0."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got k={k}")
    check_sl2(V)
    (a, b), (c, d) = V
    t = a + d
    pk, pk1 = p_cheb(k, t), p_cheb(k - 1, t)
    return np.array([[pk - d * pk1, b * pk1], [c * pk1, pk - a * pk1]], dtype=complex)


def random_sl2(rng, scale=1.0):
    """A random SL2 matrix: Gaussian entries, first row rescaled to make det = 1."""
    while True:
        m = scale * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        d = det(m)
        if abs(d) > 1e-3:
            m[0] /= d
            return m
