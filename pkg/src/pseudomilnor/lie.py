"""Lie algebras given by structure constants on a fixed basis e_1, ..., e_n.

Indices are 0-based in code.  The 1-based convention of the file format
lives in :mod:`pseudomilnor.io`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import InvalidAlgebra, SingularMatrix
from .forms import DEFAULT_TOL, is_in_O_pq

__all__ = [
    "LieAlgebra",
    "GroupElementWitness",
    "bracket",
    "jacobi_check",
    "jacobi_residual",
    "automorphism_residual",
    "derivation_residual",
    "rhn",
    "heisenberg3",
    "abelian",
    "is_automorphism",
    "is_in_q1",
    "is_in_q1_transpose",
    "derivation_space",
    "is_derivation",
]

JACOBI_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants ``c[i, j, k]`` with ``[e_i, e_j] = sum_k c[i, j, k] e_k``.

    Only the ``i < j`` part is taken from the input; the array is then
    antisymmetrized so ``[e_j, e_i] = -[e_i, e_j]`` holds by construction.
    """

    structure: np.ndarray
    name: Optional[str] = None

    def __post_init__(self):
        c = np.asarray(self.structure, dtype=float)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]) or c.shape[0] == 0:
            raise InvalidAlgebra(f"structure constants must have shape (n, n, n), got {c.shape}")
        n = c.shape[0]
        upper = np.triu(np.ones((n, n), dtype=bool), k=1)[:, :, None]
        c = np.where(upper, c, 0.0)
        c = c - c.transpose(1, 0, 2)
        c.setflags(write=False)
        object.__setattr__(self, "structure", c)

    @classmethod
    def from_brackets(cls, dim: int, brackets: Iterable, name: Optional[str] = None,
                      validate: bool = True) -> "LieAlgebra":
        """Build from ``(i, j, k, c)`` tuples meaning ``[e_i, e_j] += c e_k`` (0-based, i < j)."""
        c = np.zeros((dim, dim, dim))
        for i, j, k, val in brackets:
            if not (0 <= i < j < dim and 0 <= k < dim):
                raise InvalidAlgebra(f"bad bracket index ({i}, {j}, {k}) for dimension {dim}")
            c[i, j, k] += val
        alg = cls(c, name=name)
        if validate and not jacobi_check(alg):
            raise InvalidAlgebra("structure constants violate the Jacobi identity")
        return alg

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def bracket(self, x, y) -> np.ndarray:
        return bracket(self, x, y)

    def ad(self, x) -> np.ndarray:
        """Matrix of ``ad_x = [x, .]``."""
        x = np.asarray(x, dtype=float)
        return np.einsum("i,ijk->kj", x, self.structure)

    def change_basis(self, basis) -> "LieAlgebra":
        """Structure constants with respect to the columns of ``basis``."""
        b = np.asarray(basis, dtype=float)
        binv = np.linalg.inv(b)
        c = np.einsum("ai,bj,abk,lk->ijl", b, b, self.structure, binv)
        return LieAlgebra(c, name=self.name)

    @property
    def family(self) -> Optional[str]:
        """``"rhn"`` or ``"heisenberg3"`` when the constants match a built-in family."""
        n = self.dim
        if n >= 2 and np.array_equal(self.structure, rhn(n).structure):
            return "rhn"
        if n == 3 and np.array_equal(self.structure, heisenberg3().structure):
            return "heisenberg3"
        return None

    def brackets(self) -> list[tuple[int, int, int, float]]:
        n = self.dim
        return [
            (i, j, k, float(self.structure[i, j, k]))
            for i in range(n) for j in range(i + 1, n) for k in range(n)
            if self.structure[i, j, k] != 0.0
        ]


def bracket(alg: LieAlgebra, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = alg.dim
    if x.shape[0] != n or y.shape[0] != n:
        raise ValueError(f"vectors must have length {n}")
    return np.einsum("i...,j...,ijk->k...", x, y, alg.structure)


def jacobi_residual(alg: LieAlgebra) -> float:
    c = alg.structure
    # [[e_i, e_j], e_l] = c_ij^m c_ml^k
    t = np.einsum("ijm,mlk->ijlk", c, c)
    jac = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
    return float(np.abs(jac).max(initial=0.0))


def jacobi_check(alg: LieAlgebra, tol: float = JACOBI_TOL) -> bool:
    """Jacobi identity on all basis triples, ``tol`` scaled by ``max(1, |c|^2)``."""
    scale = max(1.0, float(np.abs(alg.structure).max(initial=0.0)) ** 2)
    return jacobi_residual(alg) <= tol * scale


def rhn(n: int) -> LieAlgebra:
    """Lie algebra of real hyperbolic space: ``[e_1, e_j] = e_j`` for j >= 2."""
    if n < 2:
        raise ValueError("rhn(n) needs n >= 2")
    c = np.zeros((n, n, n))
    for j in range(1, n):
        c[0, j, j] = 1.0
    return LieAlgebra(c, name=f"rhn({n})")


def heisenberg3() -> LieAlgebra:
    """Three-dimensional Heisenberg algebra, ``[e_2, e_3] = e_1``."""
    c = np.zeros((3, 3, 3))
    c[1, 2, 0] = 1.0
    return LieAlgebra(c, name="heisenberg3")


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(np.zeros((n, n, n)), name=f"abelian({n})")


def _check_invertible(g, tol):
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError("expected a square matrix")
    if not _invertible(g):
        raise SingularMatrix("matrix is singular")
    return g


def _invertible(g) -> bool:
    return bool(np.all(np.isfinite(g)) and np.linalg.cond(g) < 1e14)


def automorphism_residual(alg: LieAlgebra, g) -> float:
    g = np.asarray(g, dtype=float)
    c = alg.structure
    lhs = np.einsum("ijl,kl->ijk", c, g)
    rhs = np.einsum("ai,bj,abk->ijk", g, g, c)
    return float(np.abs(lhs - rhs).max(initial=0.0))


def is_automorphism(alg: LieAlgebra, g, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``g[e_i, e_j] = [g e_i, g e_j]`` for all i < j.

    The residual is compared against ``tol`` scaled by ``max(1, |g|^2)``.
    """
    g = _check_invertible(g, tol)
    scale = max(1.0, float(np.abs(g).max()) ** 2)
    return automorphism_residual(alg, g) <= tol * scale


def is_in_q1(g, tol: float = DEFAULT_TOL) -> bool:
    """Block lower triangular with (1, n-1) blocks: first row is ``(*, 0, ..., 0)``."""
    g = np.asarray(g, dtype=float)
    return bool(np.abs(g[0, 1:]).max(initial=0.0) <= tol) and _invertible(g)


def is_in_q1_transpose(g, tol: float = DEFAULT_TOL) -> bool:
    return is_in_q1(np.asarray(g, dtype=float).T, tol=tol)


def _derivation_constraints(alg: LieAlgebra) -> np.ndarray:
    """Matrix of the linear map ``D -> D[e_i,e_j] - [De_i,e_j] - [e_i,De_j]`` on vec(D)."""
    n = alg.dim
    c = alg.structure
    iu, ju = np.triu_indices(n, k=1)
    cols = []
    for a in range(n):
        for b in range(n):
            d = np.zeros((n, n))
            d[a, b] = 1.0
            first = np.einsum("ijl,kl->ijk", c, d)
            second = np.einsum("mi,mjk->ijk", d, c)
            third = np.einsum("mj,imk->ijk", d, c)
            cols.append((first - second - third)[iu, ju].ravel())
    if not cols[0].size:
        return np.zeros((0, n * n))
    return np.array(cols).T


def derivation_space(alg: LieAlgebra, rtol: float = 1e-9) -> list[np.ndarray]:
    """Frobenius-orthonormal basis of the derivation algebra Der(L)."""
    n = alg.dim
    m = _derivation_constraints(alg)
    if m.shape[0] == 0:
        return [e.reshape(n, n) for e in np.eye(n * n)]
    _, s, vt = np.linalg.svd(m, full_matrices=True)
    smax = s[0] if s.size else 0.0
    rank = int(np.count_nonzero(s > rtol * smax)) if smax > 0 else 0
    return [row.reshape(n, n) for row in vt[rank:]]


def derivation_residual(alg: LieAlgebra, d) -> float:
    d = np.asarray(d, dtype=float)
    c = alg.structure
    first = np.einsum("ijl,kl->ijk", c, d)
    second = np.einsum("mi,mjk->ijk", d, c)
    third = np.einsum("mj,imk->ijk", d, c)
    return float(np.abs(first - second - third).max(initial=0.0))


def is_derivation(alg: LieAlgebra, d, tol: float = DEFAULT_TOL) -> bool:
    return derivation_residual(alg, d) <= tol * max(1.0, float(np.abs(d).max()))


GROUPS = ("Q1", "Q1_transpose", "O_pq", "Aut", "RtimesAut")


@dataclass(frozen=True)
class GroupElementWitness:
    """A matrix together with the group it is claimed to belong to."""

    matrix: np.ndarray
    claimed_group: str

    def __post_init__(self):
        if self.claimed_group not in GROUPS:
            raise ValueError(f"unknown group {self.claimed_group!r}")
        m = np.asarray(self.matrix, dtype=float)
        if not _invertible(m):
            raise SingularMatrix("witness matrix is singular")
        object.__setattr__(self, "matrix", m)

    def holds(self, algebra: Optional[LieAlgebra] = None, p: Optional[int] = None,
              q: Optional[int] = None, tol: float = DEFAULT_TOL) -> bool:
        g = self.matrix
        if self.claimed_group == "Q1":
            return is_in_q1(g, tol)
        if self.claimed_group == "Q1_transpose":
            return is_in_q1_transpose(g, tol)
        if self.claimed_group == "O_pq":
            return is_in_O_pq(g, p, q, tol)
        if algebra is None:
            raise ValueError(f"{self.claimed_group} membership needs an algebra")
        if self.claimed_group == "Aut":
            return is_automorphism(algebra, g, tol)
        # c*phi: c^2 is recovered from the bracket scaling on any nonzero bracket
        return _is_scaled_automorphism(algebra, g, tol)


def _is_scaled_automorphism(alg: LieAlgebra, g, tol: float) -> bool:
    # (c phi)[x, y] = c [phi x, phi y] and [c phi x, c phi y] = c^2 [phi x, phi y],
    # so g[x, y] * c = [g x, g y] for the unknown scalar c.
    c = alg.structure
    lhs = np.einsum("ijl,kl->ijk", c, g)
    rhs = np.einsum("ai,bj,abk->ijk", g, g, c)
    denom = float(np.sum(lhs * lhs))
    if denom == 0.0:
        return bool(np.abs(rhs).max(initial=0.0) <= tol)
    scalar = float(np.sum(lhs * rhs)) / denom
    if abs(scalar) <= tol:
        return False
    return bool(np.abs(scalar * lhs - rhs).max() <= tol * max(1.0, float(np.abs(g).max()) ** 3))
