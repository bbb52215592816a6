"""Seeded random generators for metrics, group elements and Lie algebras.

Every function takes an explicit :class:`numpy.random.Generator`.
"""
from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from .forms import ipq
from .lie import LieAlgebra, derivation_space

__all__ = [
    "random_symmetric",
    "random_gl",
    "random_metric",
    "random_orthogonal",
    "boost",
    "random_O_pq",
    "random_q1",
    "random_q1_transpose",
    "random_automorphism",
    "random_scalar",
    "random_lie_algebra_3",
]


def random_symmetric(n: int, rng: np.random.Generator, bound: float = 5.0) -> np.ndarray:
    a = rng.uniform(-bound, bound, (n, n))
    return np.triu(a) + np.triu(a, 1).T


def random_gl(n: int, rng: np.random.Generator, bound: float = 5.0, max_cond: float = 1e4) -> np.ndarray:
    while True:
        g = rng.uniform(-bound, bound, (n, n))
        if np.linalg.cond(g) <= max_cond:
            return g


def random_metric(p: int, q: int, rng: np.random.Generator, bound: float = 5.0,
                  max_cond: float = 1e4) -> np.ndarray:
    """``M^T I_{p,q} M`` for a random well-conditioned ``M``; exactly symmetric."""
    m = random_gl(p + q, rng, bound=bound, max_cond=max_cond)
    a = m.T @ ipq(p, q) @ m
    return np.triu(a) + np.triu(a, 1).T


def random_orthogonal(m: int, rng: np.random.Generator) -> np.ndarray:
    if m == 0:
        return np.zeros((0, 0))
    z = rng.standard_normal((m, m))
    qm, r = np.linalg.qr(z)
    return qm * np.sign(np.diag(r))


def boost(n: int, i: int, j: int, t: float) -> np.ndarray:
    """Hyperbolic rotation in the plane of a spacelike ``e_i`` and a timelike ``e_j``."""
    b = np.eye(n)
    ch, sh = np.cosh(t), np.sinh(t)
    b[i, i] = b[j, j] = ch
    b[i, j] = b[j, i] = sh
    return b


def random_O_pq(p: int, q: int, rng: np.random.Generator, boosts: int = 2,
                rapidity: float = 1.5) -> np.ndarray:
    n = p + q
    g = np.eye(n)

    def block():
        h = np.zeros((n, n))
        h[:p, :p] = random_orthogonal(p, rng)
        h[p:, p:] = random_orthogonal(q, rng)
        return h

    g = block()
    if p and q:
        for _ in range(boosts):
            i = int(rng.integers(0, p))
            j = int(rng.integers(p, n))
            g = g @ boost(n, i, j, rng.uniform(-rapidity, rapidity)) @ block()
    return g


def random_scalar(rng: np.random.Generator, low: float = 0.2, high: float = 5.0) -> float:
    return float(rng.choice([-1.0, 1.0]) * rng.uniform(low, high))


def random_q1(n: int, rng: np.random.Generator) -> np.ndarray:
    g = np.zeros((n, n))
    g[0, 0] = random_scalar(rng)
    g[1:, 0] = rng.uniform(-3, 3, n - 1)
    g[1:, 1:] = random_gl(n - 1, rng, bound=3.0, max_cond=1e3) if n > 1 else 0.0
    return g


def random_q1_transpose(n: int, rng: np.random.Generator) -> np.ndarray:
    return random_q1(n, rng).T


def random_automorphism(alg: LieAlgebra, rng: np.random.Generator) -> np.ndarray:
    """A random automorphism; explicit patterns for the two families, ``exp(D)`` otherwise."""
    n = alg.dim
    family = alg.family
    if family == "rhn":
        g = random_q1(n, rng)
        g[0, 0] = 1.0
        return g
    if family == "heisenberg3":
        b = random_gl(2, rng, bound=3.0, max_cond=1e3)
        g = np.zeros((3, 3))
        g[0, 0] = np.linalg.det(b)
        g[0, 1:] = rng.uniform(-3, 3, 2)
        g[1:, 1:] = b
        return g
    ders = derivation_space(alg)
    d = sum(rng.standard_normal() * di for di in ders) if ders else np.zeros((n, n))
    return expm(0.5 * d)


def random_lie_algebra_3(rng: np.random.Generator) -> LieAlgebra:
    """Random three-dimensional Lie algebra in a random basis.

    Built from the Bianchi form ``[e_i, e_j] = eps_ijl N_lk e_k + a_i e_j - a_j e_i``
    with ``N`` symmetric and ``N a = 0``.
    """
    a = rng.standard_normal(3) if rng.random() < 0.5 else np.zeros(3)
    s = random_symmetric(3, rng, bound=2.0)
    if np.any(a):
        proj = np.eye(3) - np.outer(a, a) / (a @ a)
        s = proj @ s @ proj
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    c = np.einsum("ijl,lk->ijk", eps, s)
    e = np.eye(3)
    c += np.einsum("i,jk->ijk", a, e) - np.einsum("j,ik->ijk", a, e)
    alg = LieAlgebra(c, name="random3")
    return alg.change_basis(random_gl(3, rng, bound=2.0, max_cond=1e2))
