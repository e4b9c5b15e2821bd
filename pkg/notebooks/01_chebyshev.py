# %% [markdown]
# # Chebyshev polynomials and SL2 powers
#
# `s_cheb(k, z)` runs the recurrence S_{k+1} = z S_k - S_{k-1} in either
# direction, so negative indices come for free.

# %%
import numpy as np

from torsionlab import geom_sum, mat_pow, p_cheb, s_cheb
from torsionlab.sl2 import random_sl2

z = 0.8 + 0.3j
for k in range(-4, 5):
    print(f"S_{k:+d}({z}) = {s_cheb(k, z):.6f}")

# %% [markdown]
# Powers of an SL2 matrix only need two Chebyshev values of its trace.
# Compare with repeated multiplication:

# %%
rng = np.random.default_rng(0)
V = random_sl2(rng, 0.7)
for k in (5, -5, 17):
    brute = np.linalg.matrix_power(V if k > 0 else np.linalg.inv(V), abs(k))
    print(k, np.max(np.abs(mat_pow(V, k) - brute)))

# %% [markdown]
# Same idea for I + V + ... + V^k, with partial sums P_k in place of S_k.

# %%
brute = sum(np.linalg.matrix_power(V, i) for i in range(11))
print("geom sum error:", np.max(np.abs(geom_sum(V, 10) - brute)))
print("P_10 at z=2:", p_cheb(10, 2.0))
