"""Chebyshev polynomials of the second kind, evaluated numerically.

S_0 = 1, S_1 = z, S_k = z S_{k-1} - S_{k-2} for every integer k, and the
partial sums P_k = S_0 + ... + S_k.
"""


def s_cheb(k, z):
    """Return S_k(z) for any integer k.

    Negative indices run the recurrence backward, S_{k-2} = z S_{k-1} - S_k,
    which gives S_{-1} = 0 and S_{-k} = -S_{k-2}.
    """
    k = int(k)
    if k == 0:
        return 1.0 + 0 * z
    if k > 0:
        prev, cur = 1.0 + 0 * z, z
        for _ in range(k - 1):
            prev, cur = cur, z * cur - prev
        return cur
    # cur = S_j, nxt = S_{j+1}, stepping j downward from 0
    cur, nxt = 1.0 + 0 * z, z
    for _ in range(-k):
        cur, nxt = z * cur - nxt, cur
    return cur


def s_pair(k, z):
    """Return (S_k(z), S_{k-1}(z)) with a single recurrence pass."""
    return s_cheb(k, z), s_cheb(k - 1, z)


def p_cheb(k, z):
    """Partial sum P_k(z) = S_0(z) + ... + S_k(z), with P_{-1} = 0.

    Computed by summation, so z = 2 needs no special treatment.
    """
    k = int(k)
    if k < -1:
        raise ValueError(f"P_k is defined for k >= -1, got k={k}")
    total = 0.0 * z
    prev, cur = 0.0 * z, 1.0 + 0 * z  # S_{-1}, S_0
    for _ in range(k + 1):
        total = total + cur
        prev, cur = cur, z * cur - prev
    return total


def det_sum_ratio(k, z):
    """det(I + V + ... + V^k) for V in SL2 with trace z.

    Equals (S_{k+1} - S_{k-1} - 2)/(z - 2) away from z = 2; evaluated as
    P_k + P_{k-1}, which has no singularity.
    """
    k = int(k)
    if k < 0:
        raise ValueError(f"k must be non-negative, got k={k}")
    return p_cheb(k, z) + p_cheb(k - 1, z)


def twist_ratio(n, z):
    """The polynomial (S_n(z) - S_{n-2}(z) - 2)/(z - 2) for any integer n.

    The expression is even in n (use S_{-k} = -S_{k-2}), and for n >= 1 it
    is det_sum_ratio(n - 1, z).
    """
    n = int(n)
    if n == 0:
        return 0.0 * z
    return det_sum_ratio(abs(n) - 1, z)
