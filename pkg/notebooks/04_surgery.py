# %% [markdown]
# # Representations that survive 1/1 surgery on the figure-eight
#
# A Riley point extends over p/q surgery when rho(a)^p rho(lambda)^q = I.
# First a coarse look at the residual over a grid of s values:

# %%
import numpy as np

from torsionlab import Slope, solve_surgery_reps, torsion_surgery, torsion_surgery_dehn
from torsionlab.surgery import residual_scan

slope = Slope(1, 1)
rows = residual_scan(-1, slope, np.linspace(0.4, 1.8, 15), np.linspace(0, 2 * np.pi, 48, endpoint=False))
res = np.array([r[2] for r in rows])
best = rows[int(res.argmin())]
print(f"grid min {res.min():.3f} (median {np.median(res):.2f}) near s={best[0]:.3f}, u={best[1]:.3f}")

# %% [markdown]
# Multi-start Newton, then the full matrix check on every candidate:

# %%
reps = solve_surgery_reps(-1, slope)
for r in reps:
    p = r.point
    print(f"s={p.s:.4f}  u={p.u:.4f}  ext={r.extension_residual:.1e}  "
          f"tau_M={torsion_surgery(-1, r):.6f}  via Dehn={torsion_surgery_dehn(-1, r):.6f}")
