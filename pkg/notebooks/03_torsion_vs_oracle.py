# %% [markdown]
# # Torsion of the knot complement, two ways
#
# `torsion_complement` is a closed form in x and z. `torsion_fox` rebuilds
# the relator as a free-group word, takes its Fox derivative, and evaluates
# a determinant. They share nothing but the representation.

# %%
import numpy as np

from torsionlab import torsion_complement, torsion_fox
from torsionlab.riley import random_riley_points, riley_roots

(pt,) = riley_roots(1, 0.7 + 1.2j)
print("trefoil:", torsion_complement(1, pt), torsion_fox(1, pt))

# %%
rng = np.random.default_rng(7)
for n in (-5, -2, 2, 5):
    gaps = []
    for p in random_riley_points(n, rng, 10):
        tau = torsion_complement(n, p)
        gaps.append(abs(tau - torsion_fox(n, p)) / (1 + abs(tau)))
    print(f"n={n:+d}  worst relative gap over 10 roots: {max(gaps):.1e}")

# %% [markdown]
# Deleting a's column instead of b's gives the same number, sign included.

# %%
from torsionlab.torsion import sign_agreement

p = random_riley_points(3, rng, 1)[0]
print(sign_agreement(3, p))
