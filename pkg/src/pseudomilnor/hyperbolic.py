"""Constant curvature of left-invariant metrics on the hyperbolic-space group."""
from __future__ import annotations

import numpy as np

from .lie import rhn
from .reduction import synthesize_metric


def normalized_constant(lam: int, p: int, q: int) -> float:
    """Sectional curvature of the Milnor-frame metric ``k <,>``: ``-(lam^2 eps_n + eps_1)``."""
    eps_1 = 1.0 if p >= 1 else -1.0
    eps_n = -1.0 if q >= 1 else 1.0
    return -(lam * lam * eps_n + eps_1)


def predicted_constant(lam: int, k: float, p: int, q: int) -> float:
    """Sectional curvature of ``<,>`` itself.

    ``k <,>`` has curvature ``normalized_constant``; scaling a metric by
    ``s`` divides sectional curvature by ``s``, so ``<,>`` has ``k`` times it.
    """
    return k * normalized_constant(lam, p, q)


def realize_constant_curvature(target: float, p: int, q: int) -> tuple[int, float, np.ndarray]:
    """A signature-(p, q) metric on ``rhn(p + q)`` with constant curvature ``target``.

    Returns ``(lam, scale, A)`` where ``A = scale * g0.<,>_0``.  The orbit is
    picked by the sign of the target; ``scale = |normalized / target|``.
    """
    if p < 1 or q < 1:
        raise ValueError("arbitrary curvature needs p, q >= 1")
    if target < 0:
        lam = 0
    elif target > 0:
        lam = 2
    else:
        lam = 1
    base = normalized_constant(lam, p, q)
    scale = 1.0 if target == 0 else abs(base / target)
    return lam, scale, synthesize_metric(rhn(p + q), lam, p, q, scale=scale)
