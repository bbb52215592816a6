"""Curvature of left-invariant pseudo-Riemannian metrics.

Everything is expressed in a fixed basis ``b_1, ..., b_n`` of the Lie
algebra, with structure constants from :class:`LieAlgebra` and Gram matrix
``G[i, j] = <b_i, b_j>``.  Sign conventions:

* ``R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y]``
* ``K(X, Y) = <R(X, Y) Y, X> / (<X, X><Y, Y> - <X, Y>^2)``
* ``Ric(X, Y) = tr(Z -> R(Z, X) Y)``

With these, a space of constant curvature ``K`` has ``R(X, Y) = K X^Y`` and
``Ric = (n - 1) K G``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DegenerateMetric, DegeneratePlane
from .forms import DEFAULT_TOL, MetricTensor
from .lie import LieAlgebra, derivation_space

__all__ = [
    "ConnectionTable",
    "CurvatureTensor",
    "CurvatureReport",
    "SolitonFit",
    "u_operator",
    "u_table",
    "levi_civita",
    "levi_civita_koszul",
    "curvature_tensor",
    "wedge",
    "wedge_table",
    "sectional",
    "sample_sectional",
    "ricci",
    "ricci_operator",
    "scalar_curvature",
    "einstein_residual",
    "soliton_fit",
    "classify_curvature",
    "closed_form_residual",
]

SAMPLES = 200
CONSTANT_RTOL = 1e-6
FLAT_TOL = 1e-9
EINSTEIN_TOL = 1e-8
SOLITON_TOL = 1e-6


def _gram(g) -> np.ndarray:
    g = g.entries if isinstance(g, MetricTensor) else np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError("Gram matrix must be square")
    if np.linalg.cond(g) > 1e13:
        raise DegenerateMetric("degenerate metric: Gram matrix is numerically singular")
    return g


@dataclass(frozen=True)
class ConnectionTable:
    """``nabla_{b_i} b_j = sum_k gamma[i, j, k] b_k``."""

    gamma: np.ndarray
    gram: np.ndarray
    basis: Optional[np.ndarray] = None

    def nabla(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.gamma)

    def operators(self) -> np.ndarray:
        """``N[i]`` is the matrix of ``nabla_{b_i}``."""
        return self.gamma.transpose(0, 2, 1)

    def torsion_residual(self, alg: LieAlgebra) -> float:
        t = self.gamma - self.gamma.transpose(1, 0, 2) - alg.structure
        return float(np.abs(t).max(initial=0.0))

    def compatibility_residual(self) -> float:
        # <nabla_i b_j, b_k> + <b_j, nabla_i b_k>
        low = np.einsum("ijl,lk->ijk", self.gamma, self.gram)
        return float(np.abs(low + low.transpose(0, 2, 1)).max(initial=0.0))


def u_table(alg: LieAlgebra, gram) -> np.ndarray:
    """``U[i, j, :]`` = coordinates of ``U(b_i, b_j)``.

    ``2 <U(X, Y), Z> = <[Z, X], Y> + <X, [Z, Y]>``; the right-hand side is
    assembled against ``Z = b_k`` and solved with ``G``.
    """
    g = _gram(gram)
    c = alg.structure
    # <[b_k, b_i], b_j> = c[k, i, m] G[m, j]
    t = np.einsum("kim,mj->kij", c, g)
    rhs = t + t.transpose(0, 2, 1)           # indexed [k, i, j]
    rhs = rhs.transpose(1, 2, 0)             # [i, j, k]
    return 0.5 * np.linalg.solve(g, rhs.reshape(-1, g.shape[0]).T).T.reshape(rhs.shape)


def u_operator(alg: LieAlgebra, gram, x, y) -> np.ndarray:
    return np.einsum("i,j,ijk->k", np.asarray(x, float), np.asarray(y, float), u_table(alg, gram))


def levi_civita(alg: LieAlgebra, gram) -> ConnectionTable:
    """``nabla_X Y = [X, Y] / 2 + U(X, Y)``."""
    g = _gram(gram)
    return ConnectionTable(0.5 * alg.structure + u_table(alg, g), g)


def levi_civita_koszul(alg: LieAlgebra, gram) -> ConnectionTable:
    """Koszul formula for left-invariant fields.

    ``2 <nabla_X Y, Z> = <[X, Y], Z> - <[Y, Z], X> + <[Z, X], Y>``.
    """
    g = _gram(gram)
    c = alg.structure
    n = g.shape[0]
    low = np.empty((n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                low[i, j, k] = 0.5 * (c[i, j] @ g[:, k] - c[j, k] @ g[:, i] + c[k, i] @ g[:, j])
    gamma = np.empty_like(low)
    for i in range(n):
        for j in range(n):
            gamma[i, j] = np.linalg.solve(g, low[i, j])
    return ConnectionTable(gamma, g)


@dataclass(frozen=True)
class CurvatureTensor:
    """``r[i, j]`` is the matrix of ``R(b_i, b_j)``; column k is ``R(b_i, b_j) b_k``."""

    r: np.ndarray
    convention: str = "R(X,Y)=[nabla_X,nabla_Y]-nabla_[X,Y]"

    def apply(self, x, y, z) -> np.ndarray:
        return np.einsum("i,j,ijab,b->a", x, y, self.r, z)

    def operator(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijab->ab", x, y, self.r)

    def antisymmetry_residual(self) -> float:
        return float(np.abs(self.r + self.r.transpose(1, 0, 2, 3)).max(initial=0.0))

    def bianchi_residual(self) -> float:
        # R(b_i, b_j) b_k + cyclic, component a
        t = self.r.transpose(0, 1, 3, 2)  # [i, j, k, a]
        s = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
        return float(np.abs(s).max(initial=0.0))

    def lowered(self, gram) -> np.ndarray:
        """``Rl[i, j, k, l] = <R(b_i, b_j) b_k, b_l>``."""
        return np.einsum("ijak,al->ijkl", self.r, np.asarray(gram, float))

    def pair_symmetry_residual(self, gram) -> float:
        rl = self.lowered(gram)
        return float(np.abs(rl - rl.transpose(2, 3, 0, 1)).max(initial=0.0))

    def max_abs(self) -> float:
        return float(np.abs(self.r).max(initial=0.0))


def curvature_tensor(conn: ConnectionTable, alg: LieAlgebra) -> CurvatureTensor:
    nb = conn.operators()
    comp = np.einsum("iab,jbc->ijac", nb, nb)
    r = comp - comp.transpose(1, 0, 2, 3) - np.einsum("ijk,kab->ijab", alg.structure, nb)
    return CurvatureTensor(r)


def wedge(gram, x, y) -> np.ndarray:
    """Matrix of ``(X ^ Y) Z = <Y, Z> X - <X, Z> Y``."""
    g = np.asarray(gram, float)
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    return np.outer(x, g @ y) - np.outer(y, g @ x)


def wedge_table(gram) -> np.ndarray:
    """``W[i, j]`` = matrix of ``b_i ^ b_j``."""
    g = np.asarray(gram, float)
    n = g.shape[0]
    e = np.eye(n)
    w = np.einsum("ai,jb->ijab", e, g) - np.einsum("aj,ib->ijab", e, g)
    return w


def _plane_denominator(g, x, y):
    return (x @ g @ x) * (y @ g @ y) - (x @ g @ y) ** 2


def sectional(gram, curv: CurvatureTensor, x, y, tol: float = DEFAULT_TOL) -> float:
    g = np.asarray(gram, float)
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    den = _plane_denominator(g, x, y)
    scale = max(1.0, float(abs(x @ g @ x) * abs(y @ g @ y)), float((x @ x) * (y @ y)))
    if abs(den) <= tol * scale:
        raise DegeneratePlane("plane is degenerate for this metric")
    num = curv.apply(x, y, y) @ g @ x
    return float(num / den)


def sample_sectional(gram, curv: CurvatureTensor, samples: int = SAMPLES, seed: int = 0,
                     tol: float = DEFAULT_TOL) -> np.ndarray:
    """Sectional curvature over random nondegenerate planes (rejection sampled)."""
    g = np.asarray(gram, float)
    n = g.shape[0]
    if n < 2:
        return np.empty(0)
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(1000):
        if len(out) >= samples:
            break
        batch = max(2 * (samples - len(out)), 8)
        x = rng.standard_normal((batch, n))
        y = rng.standard_normal((batch, n))
        xx = np.einsum("bi,ij,bj->b", x, g, x)
        yy = np.einsum("bi,ij,bj->b", y, g, y)
        xy = np.einsum("bi,ij,bj->b", x, g, y)
        den = xx * yy - xy * xy
        # reject planes where the Gram determinant is mostly cancellation
        ok = np.abs(den) > 1e-3 * (np.abs(xx * yy) + xy * xy)
        x, y, den = x[ok], y[ok], den[ok]
        # <R(x, y) y, x>, contracted one index at a time
        low = np.einsum("ijac,ad->ijdc", curv.r, g).reshape(n * n, n * n)
        xy_ = np.einsum("bi,bj->bij", x, y).reshape(-1, n * n)
        yx_ = np.einsum("bd,bc->bdc", x, y).reshape(-1, n * n)
        num = np.einsum("bk,bk->b", xy_ @ low, yx_)
        out.extend((num / den).tolist())
    else:
        if len(out) < samples:
            raise DegeneratePlane("could not sample enough nondegenerate planes")
    return np.array(out[:samples])


def ricci(gram, curv: CurvatureTensor) -> np.ndarray:
    """``Ric[a, b] = tr(Z -> R(Z, b_a) b_b)``."""
    ric = np.einsum("kakb->ab", curv.r)
    return 0.5 * (ric + ric.T)


def ricci_operator(gram, ric) -> np.ndarray:
    """``Ric(X, Y) = <Ric_op X, Y>``, i.e. ``Ric_op = G^{-1} Ric``."""
    return np.linalg.solve(np.asarray(gram, float), np.asarray(ric, float))


def scalar_curvature(gram, ric) -> float:
    return float(np.trace(ricci_operator(gram, ric)))


def einstein_residual(gram, ric) -> float:
    g = np.asarray(gram, float)
    n = g.shape[0]
    s = scalar_curvature(g, ric)
    return float(np.abs(ric - (s / n) * g).max())


@dataclass(frozen=True)
class SolitonFit:
    """Least-squares fit ``Ric_op = c Id + D`` with ``D`` a derivation."""

    c: float
    derivation: np.ndarray
    residual: float


def soliton_fit(alg: LieAlgebra, gram, ric) -> SolitonFit:
    op = ricci_operator(gram, ric)
    n = op.shape[0]
    ders = derivation_space(alg)
    cols = [np.eye(n).ravel()] + [d.ravel() for d in ders]
    m = np.array(cols).T
    coef, *_ = np.linalg.lstsq(m, op.ravel(), rcond=None)
    fitted = (m @ coef).reshape(n, n)
    d = fitted - coef[0] * np.eye(n)
    return SolitonFit(float(coef[0]), d, float(np.abs(fitted - op).max()))


def closed_form_residual(gram, curv: CurvatureTensor, constant: float) -> float:
    """``max |R(b_i, b_j) - K b_i ^ b_j|`` over all basis pairs."""
    return float(np.abs(curv.r - constant * wedge_table(gram)).max())


def _wedge_fit(gram, curv: CurvatureTensor) -> tuple[float, float]:
    """Best ``K`` with ``R ~ K ^`` and the entrywise residual of that fit."""
    w = wedge_table(gram)
    ww = float(np.sum(w * w))
    if ww == 0.0:
        return 0.0, curv.max_abs()
    k = float(np.sum(curv.r * w) / ww)
    return k, float(np.abs(curv.r - k * w).max())


@dataclass
class CurvatureReport:
    connection: ConnectionTable
    riemann: CurvatureTensor
    ricci: np.ndarray
    scalar: float
    flat: bool
    constant_K: Optional[float]
    einstein: Optional[float]
    algebraic_soliton: Optional[SolitonFit]
    sectional_samples: np.ndarray = field(repr=False, default=None)
    wedge_K: Optional[float] = None
    residuals: dict = field(default_factory=dict)

    def flags(self) -> dict:
        return {
            "flat": self.flat,
            "constant_K": self.constant_K,
            "einstein": self.einstein,
            "algebraic_soliton": None if self.algebraic_soliton is None else {
                "c": self.algebraic_soliton.c,
                "residual": self.algebraic_soliton.residual,
            },
        }


def classify_curvature(alg: LieAlgebra, gram, samples: int = SAMPLES, seed: int = 0,
                       tol: float = DEFAULT_TOL) -> CurvatureReport:
    """Connection, curvature, Ricci data and the flat / constant-K / Einstein / soliton flags."""
    g = _gram(gram)
    conn = levi_civita(alg, g)
    curv = curvature_tensor(conn, alg)
    ric = ricci(g, curv)
    scal = scalar_curvature(g, ric)
    rscale = max(1.0, curv.max_abs())

    flat = curv.max_abs() <= FLAT_TOL
    ks = sample_sectional(g, curv, samples=samples, seed=seed, tol=tol)
    wedge_k, wedge_res = _wedge_fit(g, curv)
    if flat:
        constant = 0.0
        wedge_const = 0.0
    else:
        constant = None
        if ks.size and ks.max() - ks.min() <= CONSTANT_RTOL * (1.0 + abs(ks.mean())):
            constant = float(ks.mean())
        wedge_const = wedge_k if wedge_res <= 1e-8 * rscale else None
        if constant is not None and wedge_const is None:
            constant = None

    ein_res = einstein_residual(g, ric)
    einstein = scal / g.shape[0] if (flat or ein_res <= EINSTEIN_TOL) else None
    if flat:
        fit = SolitonFit(0.0, np.zeros_like(g), 0.0)
    else:
        fit = soliton_fit(alg, g, ric)
    soliton = fit if fit.residual <= SOLITON_TOL else None

    return CurvatureReport(
        connection=conn,
        riemann=curv,
        ricci=ric,
        scalar=scal,
        flat=bool(flat),
        constant_K=constant,
        einstein=einstein,
        algebraic_soliton=soliton,
        sectional_samples=ks,
        wedge_K=wedge_const,
        residuals={
            "torsion": conn.torsion_residual(alg),
            "metric_compatibility": conn.compatibility_residual(),
            "bianchi": curv.bianchi_residual(),
            "pair_symmetry": curv.pair_symmetry_residual(g),
            "einstein": ein_res,
            "soliton": fit.residual,
            "wedge_fit": wedge_res,
            "sectional_spread": float(ks.max() - ks.min()) if ks.size else 0.0,
        },
    )
