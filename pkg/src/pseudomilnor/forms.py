"""Symmetric bilinear forms: eigendecomposition, signature and O(p,q).

An inner product on R^n is stored as its Gram matrix ``A`` so that
``<x, y> = x^T A y``.  ``GL_n`` acts on inner products by
``g.<x, y> = <g^{-1} x, g^{-1} y>``, i.e. ``A -> g^{-T} A g^{-1}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateMetric, NotSymmetric

DEFAULT_TOL = 1e-9

__all__ = [
    "DEFAULT_TOL",
    "MetricTensor",
    "SignatureMatrix",
    "ipq",
    "epsilons",
    "jacobi_eigh",
    "symmetric_eigen",
    "signature",
    "pseudo_orthonormalize",
    "is_in_O_pq",
    "act_on_metric",
]


def ipq(p: int, q: int) -> np.ndarray:
    """The diagonal matrix ``diag(1,...,1, -1,...,-1)`` with p plus and q minus signs."""
    return np.diag(np.concatenate([np.ones(p), -np.ones(q)]))


def epsilons(p: int, q: int) -> np.ndarray:
    return np.concatenate([np.ones(p), -np.ones(q)])


@dataclass(frozen=True)
class SignatureMatrix:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("signature entries must be nonnegative")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def matrix(self) -> np.ndarray:
        return ipq(self.p, self.q)

    @property
    def eps(self) -> np.ndarray:
        return epsilons(self.p, self.q)


@dataclass(frozen=True, eq=False)
class MetricTensor:
    """A nondegenerate symmetric bilinear form on R^n.

    Symmetry is enforced exactly at construction; nondegeneracy is checked
    the first time the signature is requested.
    """

    entries: np.ndarray
    tol: float = DEFAULT_TOL
    _signature: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ValueError(f"metric must be a nonempty square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise NotSymmetric("metric matrix is not symmetric")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def from_any(cls, a, tol: float = DEFAULT_TOL) -> "MetricTensor":
        if isinstance(a, MetricTensor):
            return a
        return cls(np.asarray(a, dtype=float), tol=tol)

    @classmethod
    def canonical(cls, p: int, q: int) -> "MetricTensor":
        return cls(ipq(p, q))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def signature(self) -> tuple[int, int]:
        if not self._signature:
            self._signature.append(signature(self.entries, tol=self.tol))
        return self._signature[0]

    def inner(self, x, y) -> float:
        return float(np.asarray(x) @ self.entries @ np.asarray(y))

    def scaled(self, s: float) -> "MetricTensor":
        return MetricTensor(s * self.entries, tol=self.tol)

    def pullback(self, g) -> "MetricTensor":
        """Return ``g.<,>``, the form ``(x, y) -> <g^{-1} x, g^{-1} y>``."""
        return MetricTensor(act_on_metric(g, self.entries), tol=self.tol)


def _as_symmetric(a) -> np.ndarray:
    if isinstance(a, MetricTensor):
        return a.entries
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(a).max(initial=0.0))):
        raise NotSymmetric("matrix is not symmetric")
    return 0.5 * (a + a.T)


def jacobi_eigh(a, max_sweeps: int = 50) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for a small dense symmetric matrix.

    Returns eigenvalues in descending order and the orthogonal matrix of
    eigenvectors (columns).  Rotations are applied until the off-diagonal
    mass is below machine precision relative to the Frobenius norm.
    """
    a = np.array(_as_symmetric(a), dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v
    eps = np.finfo(float).eps
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(a[offdiag] ** 2))
        if off <= eps * scale:
            break
        for i in range(n - 1):
            for j in range(i + 1, n):
                aij = a[i, j]
                if abs(aij) <= eps * eps * scale:
                    continue
                theta = (a[j, j] - a[i, i]) / (2.0 * aij)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ai = a[:, i].copy()
                aj = a[:, j].copy()
                a[:, i] = c * ai - s * aj
                a[:, j] = s * ai + c * aj
                ai = a[i, :].copy()
                aj = a[j, :].copy()
                a[i, :] = c * ai - s * aj
                a[j, :] = s * ai + c * aj
                a[i, j] = a[j, i] = 0.0
                vi = v[:, i].copy()
                vj = v[:, j].copy()
                v[:, i] = c * vi - s * vj
                v[:, j] = s * vi + c * vj
    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def symmetric_eigen(a, method: str = "lapack") -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors of a symmetric matrix.

    ``method="lapack"`` calls :func:`numpy.linalg.eigh`; ``method="jacobi"``
    uses :func:`jacobi_eigh`.  Both satisfy ``A = Q diag(w) Q^T``.
    """
    if method == "jacobi":
        return jacobi_eigh(a)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    w, q = np.linalg.eigh(_as_symmetric(a))
    return w[::-1].copy(), q[:, ::-1].copy()


def _checked_eigen(a, tol: float, method: str = "lapack"):
    w, q = symmetric_eigen(a, method=method)
    scale = max(1.0, float(np.abs(w).max(initial=0.0)))
    small = np.abs(w) <= tol * scale
    if np.any(small):
        raise DegenerateMetric(
            f"degenerate metric: eigenvalue {w[small][0]:.3e} within tolerance of zero"
        )
    return w, q


def signature(a, tol: float = DEFAULT_TOL) -> tuple[int, int]:
    """Sylvester signature ``(p, q)`` of a nondegenerate symmetric matrix."""
    w, _ = _checked_eigen(a, tol)
    p = int(np.count_nonzero(w > 0))
    return p, w.size - p


def pseudo_orthonormalize(a, tol: float = DEFAULT_TOL, method: str = "lapack",
                          refine: bool = True) -> np.ndarray:
    """Return ``g`` with ``g^T A g = I_{p,q}``.

    ``g = Q |D|^{-1/2}``, with the eigenvalues sorted descending so that the
    positive directions come first.  Equivalently ``A = g.<,>_0``.

    Eigenvectors of small eigenvalues carry an error of order ``cond(A) eps``.
    With ``refine`` one step ``g <- g (I - J E / 2)``, ``E = g^T A g - J``, is
    taken with ``E`` accumulated in extended precision, which brings the
    residual down to roughly ``sqrt(cond(A)) eps``.
    """
    w, q = _checked_eigen(a, tol, method=method)
    g = q / np.sqrt(np.abs(w))
    if not refine:
        return g
    j = np.diag(np.sign(w)).astype(np.longdouble)
    gl = g.astype(np.longdouble)
    e = gl.T @ _as_symmetric(a).astype(np.longdouble) @ gl - j
    return (gl - 0.5 * gl @ (j @ e)).astype(float)


def is_in_O_pq(g, p: int, q: int, tol: float = DEFAULT_TOL) -> bool:
    g = np.asarray(g, dtype=float)
    if g.shape != (p + q, p + q):
        return False
    j = ipq(p, q)
    return bool(np.abs(g.T @ j @ g - j).max() <= tol)


def act_on_metric(g, a) -> np.ndarray:
    """Gram matrix of ``g.<,>``: ``g^{-T} A g^{-1}``."""
    a = a.entries if isinstance(a, MetricTensor) else np.asarray(a, dtype=float)
    ginv = np.linalg.inv(np.asarray(g, dtype=float))
    out = ginv.T @ a @ ginv
    return 0.5 * (out + out.T)
