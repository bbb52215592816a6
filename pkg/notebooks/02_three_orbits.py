# %% [markdown]
# # Three orbits on the hyperbolic-space algebra
#
# On rhn(n), [e_1, e_j] = e_j, every inner product of signature (p, q) with
# p, q >= 1 is isometric up to scaling to exactly one of three model metrics,
# labelled lam = 0, 1, 2.  The reduction finds the label constructively.

# %%
from collections import Counter

import numpy as np

from pseudomilnor import milnor_frame, reduce_metric, rhn, synthesize_metric, verify_frame
from pseudomilnor.sampling import random_automorphism, random_metric

rng = np.random.default_rng(7)

# %% [markdown]
# Random metrics hit lam = 0 and lam = 2 with positive probability; lam = 1
# is the null boundary between them.

# %%
alg = rhn(5)
labels = Counter(reduce_metric(alg, random_metric(3, 2, rng)).lam for _ in range(500))
print("labels over 500 random (3,2) metrics:", dict(labels))

# %% [markdown]
# Each model metric comes back with its own label, also after pulling it back
# by a scaled automorphism c*phi.

# %%
for lam in (0, 1, 2):
    a = synthesize_metric(alg, lam, 3, 2, scale=2.0)
    h = -1.7 * random_automorphism(alg, rng)
    hinv = np.linalg.inv(h)
    moved = hinv.T @ a @ hinv
    moved = 0.5 * (moved + moved.T)
    print(lam, "->", reduce_metric(alg, a).lam, reduce_metric(alg, moved).lam)

# %% [markdown]
# The reduction also yields a Milnor frame: a basis that is pseudo-orthonormal
# for k<,> and whose brackets depend only on lam.

# %%
a = random_metric(3, 2, rng)
frame = milnor_frame(alg, a)
check = verify_frame(frame)
print("lam =", frame.lam, " k =", frame.k)
print("orthonormality residual", check.orthonormality, " bracket residual", check.brackets)
print("[x1, x5] in frame coordinates:", np.round(frame.bracket_coordinates()[0, 4], 12))
