"""Milnor-type frames for the hyperbolic-space algebra and the Heisenberg algebra.

A reduction ``left @ g @ right = g0`` of ``<,> = g.<,>_0`` gives
``left^{-1} = c phi`` with ``phi`` an automorphism.  The frame
``x_i = phi g0 e_i`` is then pseudo-orthonormal for ``k <,>`` with
``k = c^2``, and its bracket table depends on ``lam`` alone.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalConsistencyError, UnsupportedAlgebra, UnsupportedSignature
from .forms import DEFAULT_TOL, MetricTensor, epsilons
from .lie import LieAlgebra, automorphism_residual, heisenberg3, is_automorphism, rhn
from .reduction import ReductionResult, reduce_metric

__all__ = [
    "MilnorFrame",
    "FrameCheck",
    "RahmaniForm",
    "canonical_table",
    "milnor_frame",
    "milnor_frame_rhn",
    "milnor_frame_h3",
    "verify_frame",
    "rahmani_form",
]

FRAME_TOL = 1e-8


def canonical_table(family: str, n: int, lam: int) -> np.ndarray:
    """Structure constants ``T[i, j, k]`` with ``[x_i, x_j] = sum_k T[i, j, k] x_k``."""
    t = np.zeros((n, n, n))
    if family == "rhn":
        last = n - 1
        for i in range(1, last):
            t[0, i, i] = 1.0            # [x1, xi] = xi
            t[i, last, i] = -lam        # [xi, xn] = -lam xi
        t[0, last, 0] = -lam            # [x1, xn] = -lam x1 + xn
        t[0, last, last] = 1.0
    elif family == "heisenberg3":
        t[0, 1, 0] = lam                # [x1, x2] = lam (x1 + lam x3)
        t[0, 1, 2] = lam * lam
        t[1, 2, 0] = 1.0                # [x2, x3] = x1 + lam x3
        t[1, 2, 2] = lam
    else:
        raise UnsupportedAlgebra(f"no canonical table for {family!r}")
    return t - t.transpose(1, 0, 2)


@dataclass(frozen=True)
class MilnorFrame:
    algebra: LieAlgebra
    metric: MetricTensor
    vectors: np.ndarray  # columns x_1, ..., x_n in the e-basis
    k: float
    lam: int
    phi: np.ndarray
    g0: np.ndarray
    c: float = 1.0
    boundary: bool = False

    @property
    def family(self) -> str:
        return self.algebra.family

    @property
    def signature(self) -> tuple[int, int]:
        return self.metric.signature

    @property
    def eps(self) -> np.ndarray:
        return epsilons(*self.signature)

    def gram(self) -> np.ndarray:
        """``k <x_i, x_j>``."""
        x = self.vectors
        return self.k * (x.T @ self.metric.entries @ x)

    def bracket_coordinates(self) -> np.ndarray:
        """``B[i, j, :]`` = coordinates of ``[x_i, x_j]`` in the frame."""
        return self.algebra.change_basis(self.vectors).structure

    def canonical_table(self) -> np.ndarray:
        return canonical_table(self.family, self.algebra.dim, self.lam)


@dataclass(frozen=True)
class FrameCheck:
    orthonormality: float
    brackets: float
    automorphism: float
    tol: float = FRAME_TOL

    @property
    def passed(self) -> bool:
        return max(self.orthonormality, self.brackets, self.automorphism) <= self.tol


def _split_scalar(family: str, m: np.ndarray) -> float:
    """Scalar ``c`` with ``m = c phi``, ``phi`` an automorphism of the family."""
    if family == "rhn":
        # automorphisms of rhn have phi_11 = 1
        c = m[0, 0]
    else:
        # Heisenberg automorphisms have phi_11 = det(lower block), so m_11 c = det(m_lower)
        c = np.linalg.det(m[1:, 1:]) / m[0, 0]
    return float(c)


def _frame_from_reduction(alg: LieAlgebra, metric: MetricTensor, red: ReductionResult,
                          tol: float) -> MilnorFrame:
    m = np.linalg.inv(red.left_factor)
    family = alg.family
    c = _split_scalar(family, m)
    if c == 0.0 or not np.isfinite(c):
        raise InternalConsistencyError("acting-group element has no scalar part")
    phi = m / c
    if not is_automorphism(alg, phi, tol=max(tol, 1e-9)):
        raise InternalConsistencyError("recovered phi is not an automorphism")
    return MilnorFrame(
        algebra=alg,
        metric=metric,
        vectors=phi @ red.g0,
        k=c * c,
        lam=red.lam,
        phi=phi,
        g0=red.g0,
        c=c,
        boundary=red.boundary,
    )


def milnor_frame_rhn(metric, n: int | None = None, tol: float = DEFAULT_TOL) -> MilnorFrame:
    a = MetricTensor.from_any(metric, tol=tol)
    alg = rhn(a.dim if n is None else n)
    p, q = a.signature
    if p < 1 or q < 1:
        raise UnsupportedSignature(f"rhn frames need p, q >= 1, got ({p}, {q})")
    return _frame_from_reduction(alg, a, reduce_metric(alg, a, tol=tol), tol)


def milnor_frame_h3(metric, tol: float = DEFAULT_TOL) -> MilnorFrame:
    a = MetricTensor.from_any(metric, tol=tol)
    alg = heisenberg3()
    if a.dim != 3 or a.signature != (2, 1):
        raise UnsupportedSignature(f"heisenberg3 frames need signature (2, 1), got {a.signature}")
    return _frame_from_reduction(alg, a, reduce_metric(alg, a, tol=tol), tol)


def milnor_frame(alg: LieAlgebra, metric, tol: float = DEFAULT_TOL) -> MilnorFrame:
    family = alg.family
    if family == "rhn":
        return milnor_frame_rhn(metric, n=alg.dim, tol=tol)
    if family == "heisenberg3":
        return milnor_frame_h3(metric, tol=tol)
    raise UnsupportedAlgebra(f"no representative set wired for {alg.name or 'custom algebra'}")


def verify_frame(frame: MilnorFrame, tol: float = FRAME_TOL) -> FrameCheck:
    """Residuals of pseudo-orthonormality, the canonical bracket table and ``phi in Aut``.

    Bracket residuals are measured on the vectors themselves,
    ``[x_i, x_j] - sum_k T_ijk x_k``, scaled by ``max(1, |x|^2)``.
    """
    x = frame.vectors
    gram = frame.gram()
    ortho = float(np.abs(gram - np.diag(frame.eps)).max())
    c = frame.algebra.structure
    actual = np.einsum("ai,bj,abk->ijk", x, x, c)
    expected = np.einsum("ijl,kl->ijk", frame.canonical_table(), x)
    scale = max(1.0, float(np.abs(x).max()) ** 2)
    brackets = float(np.abs(actual - expected).max()) / scale
    aut = automorphism_residual(frame.algebra, frame.phi) / max(1.0, float(np.abs(frame.phi).max()) ** 2)
    return FrameCheck(ortho, brackets, aut, tol)


@dataclass(frozen=True)
class RahmaniForm:
    case: int
    basis: np.ndarray  # columns f_1, f_2, f_3 in the e-basis
    parameter: float | None
    residual: float


def rahmani_table(case: int, parameter: float | None) -> np.ndarray:
    """Bracket table of Rahmani's three Lorentzian Heisenberg types in the f-basis."""
    t = np.zeros((3, 3, 3))
    if case == 1:
        t[1, 2, 0] = parameter              # [f2, f3] = alpha f1
    elif case == 2:
        t[1, 0, 2] = parameter              # [f2, f1] = gamma f3
    elif case == 3:
        t[2, 0, 1], t[2, 0, 2] = 1.0, -1.0  # [f3, f1] = f2 - f3
        t[1, 0, 1], t[1, 0, 2] = 1.0, -1.0  # [f2, f1] = f2 - f3
    else:
        raise ValueError("case must be 1, 2 or 3")
    return t - t.transpose(1, 0, 2)


def rahmani_form(frame: MilnorFrame) -> RahmaniForm:
    """Map a Heisenberg Milnor frame to Rahmani's classification basis."""
    if frame.family != "heisenberg3":
        raise UnsupportedAlgebra("Rahmani's classification applies to heisenberg3 frames only")
    x1, x2, x3 = frame.vectors.T
    if frame.lam == 0:
        case, f, param = 1, (x1, x2, x3), 1.0
    elif frame.lam == 1:
        case, f, param = 3, (x2, -x1, x3), None
    else:
        r = 3.0 ** -0.5
        case, f, param = 2, (x2, r * (2 * x1 + x3), r * (x1 + 2 * x3)), 3.0
    basis = np.column_stack(f)
    c = frame.algebra.structure
    actual = np.einsum("ai,bj,abk->ijk", basis, basis, c)
    expected = np.einsum("ijl,kl->ijk", rahmani_table(case, param), basis)
    scale = max(1.0, float(np.abs(basis).max()) ** 2)
    gram = frame.k * (basis.T @ frame.metric.entries @ basis)
    residual = max(
        float(np.abs(actual - expected).max()) / scale,
        float(np.abs(gram - np.diag([1.0, 1.0, -1.0])).max()),
    )
    return RahmaniForm(case, basis, param, residual)
