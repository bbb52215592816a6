"""Double-coset reduction of GL_n under Q_1 x O(p,q) and its transpose.

An inner product ``<,> = g.<,>_0`` lies in the orbit of ``g0.<,>_0`` under a
group ``H`` exactly when ``g0 in H g O(p,q)``.  The routines here produce
``g0`` together with explicit factors ``left in H`` and ``right in O(p,q)``
such that ``left @ g @ right == g0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SingularMatrix, UnsupportedAlgebra, UnsupportedSignature, ZeroPair
from .forms import DEFAULT_TOL, MetricTensor, ipq, is_in_O_pq, pseudo_orthonormalize
from .lie import LieAlgebra, is_in_q1, is_in_q1_transpose

__all__ = [
    "O11Normalization",
    "ReductionResult",
    "o11_normalize",
    "q1_reduce",
    "dual_reduce",
    "reduce_metric",
    "representative",
    "dual_representative",
    "synthesize_metric",
]


@dataclass(frozen=True)
class O11Normalization:
    """``(x, y) @ g == (a, lam * a)`` with ``g`` in O(1,1) and ``a > 0``."""

    a: float
    lam: int
    g: np.ndarray
    boundary: bool = False

    def residuals(self, x: float, y: float) -> tuple[float, float]:
        j = ipq(1, 1)
        membership = float(np.abs(self.g.T @ j @ self.g - j).max())
        image = np.array([x, y]) @ self.g
        mapping = float(np.abs(image - np.array([self.a, self.lam * self.a])).max())
        return membership, mapping


def o11_normalize(x: float, y: float, tol: float = DEFAULT_TOL) -> O11Normalization:
    """Bring a nonzero row ``(x, y)`` to ``(a, lam a)`` with an element of O(1,1).

    ``x^2 > y^2`` gives ``lam = 0``, ``x^2 < y^2`` gives ``lam = 2`` and the
    null case ``x^2 = y^2`` gives ``lam = 1``.  The null case is detected with
    the relative test ``|x^2 - y^2| <= tol (x^2 + y^2)`` and flagged.
    """
    x = float(x)
    y = float(y)
    if x == 0.0 and y == 0.0:
        raise ZeroPair("cannot normalize the zero pair (0, 0)")
    # the normalization is homogeneous in (x, y): work on the unit-max pair so squares cannot underflow
    m = max(abs(x), abs(y))
    u, v = x / m, y / m
    diff = u * u - v * v
    if abs(diff) <= tol * (u * u + v * v):
        g = np.diag([np.copysign(1.0, x), np.copysign(1.0, y)])
        exact = x * x == y * y
        return O11Normalization(abs(x), 1, g, boundary=not exact)
    if diff > 0:
        a = np.sqrt(diff)
        g = np.array([[u, -v], [-v, u]]) / a
        return O11Normalization(float(a * m), 0, g)
    a = np.sqrt(-diff / 3.0)
    g = np.array([[2 * v - u, v - 2 * u], [v - 2 * u, 2 * v - u]]) / (3.0 * a)
    return O11Normalization(float(a * m), 2, g)


@dataclass(frozen=True)
class ReductionResult:
    """Witness that ``left_factor @ g @ right_factor == g0``."""

    lam: int
    g0: np.ndarray
    left_factor: np.ndarray
    right_factor: np.ndarray
    signature: tuple[int, int]
    group: str = "Q1"
    boundary: bool = False
    source: np.ndarray = field(default=None, repr=False)

    def residual(self, g=None) -> float:
        g = self.source if g is None else np.asarray(g, dtype=float)
        return float(np.abs(self.left_factor @ g @ self.right_factor - self.g0).max())

    def check(self, tol: float = 1e-8) -> bool:
        p, q = self.signature
        in_group = is_in_q1 if self.group == "Q1" else is_in_q1_transpose
        return (
            self.residual() <= tol
            and in_group(self.left_factor, tol)
            and is_in_O_pq(self.right_factor, p, q, tol)
        )


def representative(n: int, lam: int) -> np.ndarray:
    """``I_n + lam E_{1,n}``."""
    g0 = np.eye(n)
    g0[0, n - 1] += lam
    return g0


def dual_representative(n: int, lam: int) -> np.ndarray:
    """``I_n - lam E_{n,1}``, the inverse transpose of :func:`representative`."""
    g0 = np.eye(n)
    g0[n - 1, 0] -= lam
    return g0


def _householder_to(v: np.ndarray, target: int) -> np.ndarray:
    """Symmetric orthogonal ``h`` with ``v @ h = |v| e_target`` (identity if v is already there)."""
    m = v.size
    norm = np.linalg.norm(v)
    h = np.eye(m)
    if norm == 0.0:
        return h
    u = v.copy()
    u[target] -= norm
    unorm2 = u @ u
    if unorm2 <= (1e-15 * norm) ** 2:
        return h
    return h - 2.0 * np.outer(u, u) / unorm2


def _check_signature(n: int, p: int, q: int):
    if p < 1 or q < 1:
        raise UnsupportedSignature(f"reduction needs p, q >= 1, got ({p}, {q})")
    if p + q != n:
        raise ValueError(f"signature ({p}, {q}) does not match dimension {n}")


def q1_reduce(g, p: int, q: int, tol: float = DEFAULT_TOL) -> ReductionResult:
    """Reduce ``g`` in GL_n to ``I + lam E_{1,n}`` inside the double coset ``Q_1 g O(p,q)``."""
    g = np.asarray(g, dtype=float)
    n = g.shape[0]
    _check_signature(n, p, q)
    if g.shape != (n, n) or not np.all(np.isfinite(g)) or np.linalg.cond(g) > 1e14:
        raise SingularMatrix("cannot reduce a singular matrix")

    # compress the positive part of the first row onto e_1 and the negative part onto e_n
    right = np.eye(n)
    right[:p, :p] = _householder_to(g[0, :p], 0)
    right[p:, p:] = _householder_to(g[0, p:], q - 1)
    g1 = g @ right
    x, y = g1[0, 0], g1[0, n - 1]

    norm = o11_normalize(x, y, tol=tol)
    k = np.eye(n)
    idx = np.ix_([0, n - 1], [0, n - 1])
    k[idx] = norm.g
    right = right @ k
    g2 = g1 @ k
    a = norm.a
    lam = norm.lam

    left = np.zeros((n, n))
    left[0, 0] = 1.0 / a
    left[1:, 0] = -g2[1:, 0]
    left[1:, 1:] = a * np.eye(n - 1)
    g3 = left @ g2
    alpha = g3[1:, 1:]
    fix = np.eye(n)
    fix[1:, 1:] = np.linalg.inv(alpha)
    left = fix @ left
    return ReductionResult(
        lam=lam,
        g0=representative(n, lam),
        left_factor=left,
        right_factor=right,
        signature=(p, q),
        group="Q1",
        boundary=norm.boundary,
        source=g,
    )


def dual_reduce(g, p: int, q: int, tol: float = DEFAULT_TOL) -> ReductionResult:
    """Reduce under the transposed group ``Q_1^T`` to ``I - lam E_{n,1}``."""
    g = np.asarray(g, dtype=float)
    r = q1_reduce(np.linalg.inv(g).T, p, q, tol=tol)
    n = g.shape[0]
    return ReductionResult(
        lam=r.lam,
        g0=dual_representative(n, r.lam),
        left_factor=np.linalg.inv(r.left_factor).T,
        right_factor=np.linalg.inv(r.right_factor).T,
        signature=(p, q),
        group="Q1_transpose",
        boundary=r.boundary,
        source=g,
    )


def reduce_metric(alg: LieAlgebra, metric, tol: float = DEFAULT_TOL) -> ReductionResult:
    """Orbit label of an inner product under ``R^x Aut(L)`` for the two wired families.

    For ``rhn(n)`` the acting group is ``Q_1``; for the Heisenberg algebra it
    is ``Q_1^T``.  The returned factors satisfy ``left @ g @ right = g0``
    where ``g = pseudo_orthonormalize(A)``.
    """
    a = MetricTensor.from_any(metric, tol=tol)
    family = alg.family
    if family is None:
        raise UnsupportedAlgebra(f"no representative set wired for {alg.name or 'custom algebra'}")
    if a.dim != alg.dim:
        raise ValueError(f"metric dimension {a.dim} does not match algebra dimension {alg.dim}")
    p, q = a.signature
    g = pseudo_orthonormalize(a.entries, tol=tol)
    if family == "rhn":
        return q1_reduce(g, p, q, tol=tol)
    if (p, q) != (2, 1):
        raise UnsupportedSignature(f"heisenberg3 reduction needs signature (2, 1), got ({p}, {q})")
    return dual_reduce(g, p, q, tol=tol)


def synthesize_metric(alg: LieAlgebra, lam: int, p: int, q: int, scale: float = 1.0) -> np.ndarray:
    """Gram matrix of ``scale * g0.<,>_0`` for the family's representative ``g0``."""
    if lam not in (0, 1, 2):
        raise ValueError("lambda must be 0, 1 or 2")
    n = alg.dim
    if p + q != n:
        raise ValueError(f"signature ({p}, {q}) does not match dimension {n}")
    family = alg.family
    if family == "rhn":
        g0 = representative(n, lam)
    elif family == "heisenberg3":
        g0 = dual_representative(n, lam)
    else:
        raise UnsupportedAlgebra(f"no representative set wired for {alg.name or 'custom algebra'}")
    ginv = np.linalg.inv(g0)
    return scale * (ginv.T @ ipq(p, q) @ ginv)
