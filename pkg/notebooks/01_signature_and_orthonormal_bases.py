# %% [markdown]
# # Signatures and pseudo-orthonormal bases
#
# An inner product on R^n is stored as its Gram matrix A.  Sylvester's law
# says the counts of positive and negative eigenvalues do not change under
# congruence, and a pseudo-orthonormal basis turns A into I_{p,q}.

# %%
import numpy as np

from pseudomilnor import ipq, jacobi_eigh, pseudo_orthonormalize, signature, symmetric_eigen
from pseudomilnor.sampling import random_gl, random_metric

rng = np.random.default_rng(1)

# %%
a = np.array([[0.0, 1.0], [1.0, 0.0]])
w, q = symmetric_eigen(a)
print("eigenvalues of the swap matrix:", w)
print("signature:", signature(a))

# %% [markdown]
# The hand-rolled Jacobi solver and LAPACK agree; LAPACK is the default
# because it is faster, Jacobi stays around as a cross-check.

# %%
b = random_metric(3, 2, rng)
print("lapack:", symmetric_eigen(b)[0])
print("jacobi:", jacobi_eigh(b)[0])

# %%
g = pseudo_orthonormalize(b)
print("g^T A g =")
print(np.round(g.T @ b @ g, 12))

# %% [markdown]
# Congruence by any invertible matrix keeps the signature.

# %%
for _ in range(5):
    h = random_gl(5, rng)
    print(signature(h.T @ b @ h), end=" ")
print()
print("I_{2,3}:", np.diag(ipq(2, 3)))
