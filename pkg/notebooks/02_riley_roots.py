# %% [markdown]
# # Riley roots
#
# Fix the meridian eigenvalue s. The nonabelian representations of the twist
# knot group are then the nonzero roots u of a polynomial. For n = -1 and
# s + 1/s = 3 they are u = 2 +- 2 sqrt 2.

# %%
import numpy as np

from torsionlab import riley_poly_in_u, riley_roots
from torsionlab.riley import relation_residual

s = (3 + 5 ** 0.5) / 2
for pt in riley_roots(-1, s):
    print(f"u = {pt.u.real:.15f}   x = {pt.x.real:.3f}   z = {pt.z.real:.6f}")
print("2 + 2 sqrt 2 =", 2 + 2 * 2 ** 0.5)

# %% [markdown]
# Degree grows with |n|. Each root is checked against the group relation
# with plain matrix products.

# %%
s = 1.1 + 0.5j
for n in (-4, -1, 1, 3, 6):
    pts = riley_roots(n, s)
    worst = max(relation_residual(n, p) for p in pts)
    print(f"n={n:+d}  degree={riley_poly_in_u(n, s).degree:2d}  roots={len(pts):2d}  "
          f"relation residual={worst:.1e}")

# %% [markdown]
# Durand-Kerner versus numpy's companion-matrix roots on the same polynomial:

# %%
poly = riley_poly_in_u(5, s)
ours = np.sort_complex(poly.roots())
ref = np.sort_complex(np.roots(poly.coeffs[::-1]))
print("max gap:", max(np.min(np.abs(ref - r)) for r in ours))
