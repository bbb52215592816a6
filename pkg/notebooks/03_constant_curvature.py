# %% [markdown]
# # Constant curvature on the hyperbolic-space group
#
# After normalizing a metric to k<,> its sectional curvature is constant:
# -1, 0 or 3 for lam = 0, 1, 2 (with eps_1 = +1, eps_n = -1).  Scaling by k
# then lets every real number occur.

# %%
import numpy as np

from pseudomilnor import (
    curvature_tensor,
    levi_civita,
    milnor_frame,
    normalized_constant,
    realize_constant_curvature,
    rhn,
    sample_sectional,
)
from pseudomilnor.sampling import random_metric

rng = np.random.default_rng(3)
alg = rhn(4)

# %%
for _ in range(6):
    a = random_metric(2, 2, rng)
    frame = milnor_frame(alg, a)
    g = frame.k * a
    ks = sample_sectional(g, curvature_tensor(levi_civita(alg, g), alg), samples=200)
    print(f"lam={frame.lam}  K in [{ks.min():+.10f}, {ks.max():+.10f}]"
          f"  predicted {normalized_constant(frame.lam, 2, 2):+.1f}")

# %% [markdown]
# The Riemannian metric has curvature -1, as real hyperbolic space should.

# %%
ks = sample_sectional(np.eye(4), curvature_tensor(levi_civita(alg, np.eye(4)), alg), samples=50)
print("Riemannian:", ks.min(), ks.max())

# %% [markdown]
# Any target curvature: pick the orbit by the sign, then the scale.

# %%
for target in (-7.0, 0.0, 0.5, 100.0):
    lam, scale, a = realize_constant_curvature(target, 2, 2)
    ks = sample_sectional(a, curvature_tensor(levi_civita(alg, a), alg), samples=100)
    print(f"K*={target:+7.2f}  lam={lam}  scale={scale:.4g}  measured {ks.mean():+.10f}")
