"""Randomized invariant suites run by ``pseudomilnor selftest``.

Each suite draws ``samples`` seeded cases and records the largest residual.
Thresholds are written as multiples of ``tol`` (default 1e-9) so that a
tighter ``tol`` tightens every suite at once.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import forms, lie, reduction
from .curvature import (
    classify_curvature,
    closed_form_residual,
    curvature_tensor,
    levi_civita,
    levi_civita_koszul,
    sample_sectional,
)
from .errors import DegenerateMetric
from .frames import milnor_frame, verify_frame
from .hyperbolic import normalized_constant
from .sampling import (
    random_automorphism,
    random_gl,
    random_lie_algebra_3,
    random_metric,
    random_O_pq,
    random_q1,
    random_scalar,
    random_symmetric,
)

__all__ = ["SuiteResult", "SUITES", "run_suites"]


@dataclass
class SuiteResult:
    name: str
    threshold: float
    max_residual: float = 0.0
    cases: int = 0
    failures: list = field(default_factory=list)

    def record(self, residual: float, case: Callable[[], dict], ok: bool = True):
        self.cases += 1
        residual = float(residual)
        if not np.isfinite(residual):
            residual = float("inf")
        self.max_residual = max(self.max_residual, residual)
        if not ok or residual > self.threshold:
            if len(self.failures) < 3:
                self.failures.append({"residual": residual, "case": case()})

    @property
    def passed(self) -> bool:
        return not self.failures


def _dims(rng, low=2, high=8):
    n = int(rng.integers(low, high + 1))
    p = int(rng.integers(1, n))
    return n, p, n - p


def _nondegenerate_symmetric(rng, n):
    while True:
        a = random_symmetric(n, rng)
        if np.abs(np.linalg.eigvalsh(a)).min() > 1e-3:
            return a


def suite_pseudo_orthonormalize(rng, samples, tol):
    res = SuiteResult("forms.pseudo_orthonormalize", tol)
    for _ in range(samples):
        n = int(rng.integers(1, 9))
        a = _nondegenerate_symmetric(rng, n)
        try:
            g = forms.pseudo_orthonormalize(a, tol=tol)
            p, q = forms.signature(a, tol=tol)
            r = float(np.abs(g.T @ a @ g - forms.ipq(p, q)).max())
        except DegenerateMetric:
            r = float("inf")
        res.record(r, lambda: {"A": a})
    return res


def suite_signature_congruence(rng, samples, tol):
    res = SuiteResult("forms.signature_congruence", 0.0)
    for _ in range(samples):
        n = int(rng.integers(1, 9))
        a = _nondegenerate_symmetric(rng, n)
        g = random_gl(n, rng, max_cond=1e3)
        b = g.T @ a @ g
        b = np.triu(b) + np.triu(b, 1).T
        try:
            same = forms.signature(a, tol=tol) == forms.signature(b, tol=tol)
        except DegenerateMetric:
            same = False
        res.record(0.0 if same else 1.0, lambda: {"A": a, "g": g})
    return res


def suite_eigen_reconstruction(rng, samples, tol):
    res = SuiteResult("forms.symmetric_eigen", 0.1 * tol)
    for _ in range(samples):
        n = int(rng.integers(1, 9))
        a = random_symmetric(n, rng)
        worst = 0.0
        for method in ("lapack", "jacobi"):
            w, q = forms.symmetric_eigen(a, method=method)
            rec = np.abs(a - q @ np.diag(w) @ q.T).max() / max(np.abs(a).max(), 1e-300)
            orth = np.abs(q.T @ q - np.eye(n)).max() * 1e-2
            order = 0.0 if np.all(np.diff(w) <= 0) else 1.0
            worst = max(worst, rec, orth, order)
        res.record(worst, lambda: {"A": a})
    return res


def _algebras(rng):
    choice = int(rng.integers(0, 3))
    if choice == 0:
        return lie.rhn(int(rng.integers(2, 7)))
    if choice == 1:
        return lie.heisenberg3()
    return random_lie_algebra_3(rng)


def suite_derivations(rng, samples, tol):
    res = SuiteResult("lie.derivation_space", 10 * tol)
    cache = {}
    for _ in range(samples):
        alg = _algebras(rng)
        key = alg.structure.tobytes()
        if key not in cache:
            cache[key] = lie.derivation_space(alg)
        worst = 0.0
        for d in cache[key]:
            x, y = rng.standard_normal((2, alg.dim))
            lhs = d @ alg.bracket(x, y)
            rhs = alg.bracket(d @ x, y) + alg.bracket(x, d @ y)
            worst = max(worst, float(np.abs(lhs - rhs).max()))
        res.record(worst, lambda: {"structure": alg.structure})
    return res


def suite_automorphism_patterns(rng, samples, tol):
    res = SuiteResult("lie.automorphism_patterns", 0.0)
    for _ in range(samples):
        if rng.random() < 0.5:
            n = int(rng.integers(2, 9))
            alg = lie.rhn(n)
            g = random_q1(n, rng)
            if rng.random() < 0.5:
                g[0, 0] = 1.0
            if rng.random() < 0.3:
                g[0, 1:] = rng.uniform(-1, 1, n - 1)
            expect = abs(g[0, 0] - 1.0) == 0.0 and not np.any(g[0, 1:])
        else:
            alg = lie.heisenberg3()
            g = random_gl(3, rng, bound=2.0, max_cond=1e3)
            if rng.random() < 0.6:
                g[1:, 0] = 0.0
                if rng.random() < 0.7:
                    g[0, 0] = np.linalg.det(g[1:, 1:])
            expect = not np.any(g[1:, 0]) and g[0, 0] == np.linalg.det(g[1:, 1:])
        if abs(np.linalg.det(g)) < 1e-6:
            continue
        got = lie.is_automorphism(alg, g, tol=tol)
        res.record(0.0 if got == expect else 1.0, lambda: {"structure": alg.structure, "g": g})
    return res


def suite_exp_derivation(rng, samples, tol):
    from scipy.linalg import expm

    res = SuiteResult("lie.exp_derivation", 100 * tol)
    for _ in range(samples):
        alg = _algebras(rng)
        ders = lie.derivation_space(alg)
        d = sum(rng.standard_normal() * di for di in ders)
        g = expm(0.5 * d)
        r = lie.automorphism_residual(alg, g) / max(1.0, float(np.abs(g).max()) ** 2)
        res.record(r, lambda: {"structure": alg.structure, "D": d})
    return res


def suite_o11(rng, samples, tol):
    res = SuiteResult("reduction.o11_normalize", tol)
    for _ in range(samples):
        x, y = rng.uniform(-10, 10, 2)
        if rng.random() < 0.1:
            y = float(rng.choice([-1.0, 1.0]) * x)
        norm = reduction.o11_normalize(x, y, tol=tol)
        member, mapping = norm.residuals(x, y)
        d = y * y - x * x
        boundary = abs(d) <= tol * (x * x + y * y)
        expect = 1 if boundary else (2 if d > 0 else 0)
        ok = norm.lam == expect and norm.a > 0
        res.record(max(member, mapping / (abs(x) + abs(y))), lambda: {"x": x, "y": y}, ok)
    return res


def suite_factorization(rng, samples, tol):
    res = SuiteResult("reduction.factorization", 10 * tol)
    for _ in range(samples):
        n, p, q = _dims(rng)
        g = random_gl(n, rng)
        for fn, pattern in ((reduction.q1_reduce, lie.is_in_q1),
                            (reduction.dual_reduce, lie.is_in_q1_transpose)):
            r = fn(g, p, q, tol=tol)
            ok = pattern(r.left_factor, 10 * tol) and forms.is_in_O_pq(r.right_factor, p, q, 10 * tol)
            res.record(r.residual(), lambda: {"g": g, "p": p, "q": q, "op": fn.__name__}, ok)
    return res


def suite_orbit_invariance(rng, samples, tol):
    res = SuiteResult("reduction.orbit_invariance", 0.0)
    for _ in range(samples):
        n, p, q = _dims(rng)
        lam = int(rng.integers(0, 3))
        g = reduction.representative(n, lam) if rng.random() < 0.5 else random_gl(n, rng)
        base = reduction.q1_reduce(g, p, q, tol=tol).lam
        h = random_q1(n, rng)
        o = random_O_pq(p, q, rng)
        moved = reduction.q1_reduce(h @ g @ o, p, q, tol=tol).lam
        res.record(0.0 if base == moved else 1.0, lambda: {"g": g, "h": h, "o": o, "p": p, "q": q})
    return res


def _family_metric(rng, max_cond: float = 1e6):
    """A metric on rhn(n) or heisenberg3: random, or a pulled-back orbit representative."""
    if rng.random() < 0.5:
        n, p, q = _dims(rng)
        alg = lie.rhn(n)
    else:
        alg, p, q = lie.heisenberg3(), 2, 1
    while True:
        if rng.random() < 0.5:
            a = random_metric(p, q, rng)
        else:
            lam = int(rng.integers(0, 3))
            a = reduction.synthesize_metric(alg, lam, p, q, scale=rng.uniform(0.2, 5.0))
            phi = random_automorphism(alg, rng)
            a = forms.act_on_metric(random_scalar(rng) * phi, a)
            a = np.triu(a) + np.triu(a, 1).T
        if np.linalg.cond(a) <= max_cond:
            return alg, a, p, q


def suite_metric_invariance(rng, samples, tol):
    res = SuiteResult("reduction.metric_invariance", 0.0)
    for _ in range(samples):
        alg, a, p, q = _family_metric(rng)
        base = reduction.reduce_metric(alg, a, tol=tol).lam
        cphi = random_scalar(rng) * random_automorphism(alg, rng)
        b = forms.act_on_metric(cphi, a)
        b = np.triu(b) + np.triu(b, 1).T
        moved = reduction.reduce_metric(alg, b, tol=tol).lam
        res.record(0.0 if base == moved else 1.0, lambda: {"structure": alg.structure, "A": a, "cphi": cphi})
    return res


def suite_choice_independence(rng, samples, tol):
    res = SuiteResult("reduction.choice_independence", 0.0)
    for _ in range(samples):
        n, p, q = _dims(rng)
        a = random_metric(p, q, rng)
        g = forms.pseudo_orthonormalize(a, tol=tol)
        o = random_O_pq(p, q, rng)
        same = reduction.q1_reduce(g, p, q, tol=tol).lam == reduction.q1_reduce(g @ o, p, q, tol=tol).lam
        res.record(0.0 if same else 1.0, lambda: {"A": a, "o": o})
    return res


def suite_frames(rng, samples, tol):
    res = SuiteResult("frames.verify_frame", 10 * tol)
    for _ in range(samples):
        alg, a, p, q = _family_metric(rng)
        f = milnor_frame(alg, a, tol=tol)
        chk = verify_frame(f, tol=10 * tol)
        s = rng.uniform(0.1, 10.0)
        scaled = milnor_frame(alg, s * a, tol=tol)
        ok = scaled.lam == f.lam
        r = max(chk.orthonormality, chk.brackets, chk.automorphism)
        res.record(r, lambda: {"structure": alg.structure, "A": a, "scale": s}, ok)
    return res


def suite_connection_oracle(rng, samples, tol):
    res = SuiteResult("curvature.connection_oracle", 1e-3 * tol)
    for _ in range(samples):
        choice = int(rng.integers(0, 3))
        if choice == 0:
            alg = lie.rhn(int(rng.integers(2, 9)))
        elif choice == 1:
            alg = lie.heisenberg3()
        else:
            alg = random_lie_algebra_3(rng)
        n = alg.dim
        p = int(rng.integers(0, n + 1))
        gram = random_metric(p, n - p, rng, bound=2.0, max_cond=1e2)
        a = levi_civita(alg, gram)
        b = levi_civita_koszul(alg, gram)
        # scale-relative: both routes round at the size of the largest symbol
        diff = float(np.abs(a.gamma - b.gamma).max()) / max(1.0, float(np.abs(a.gamma).max()))
        inv = max(a.torsion_residual(alg), a.compatibility_residual())
        ok = inv <= tol * max(1.0, float(np.abs(gram).max()) * float(np.abs(a.gamma).max()))
        res.record(diff, lambda: {"structure": alg.structure, "G": gram}, ok)
    return res


def suite_tensor_symmetries(rng, samples, tol):
    res = SuiteResult("curvature.tensor_symmetries", 10 * tol)
    for _ in range(samples):
        alg = _algebras(rng)
        n = alg.dim
        p = int(rng.integers(0, n + 1))
        gram = random_metric(p, n - p, rng, bound=2.0, max_cond=1e2)
        curv = curvature_tensor(levi_civita(alg, gram), alg)
        scale = max(1.0, curv.max_abs() * float(np.abs(gram).max()))
        r = max(curv.antisymmetry_residual(), curv.bianchi_residual(),
                curv.pair_symmetry_residual(gram)) / scale
        res.record(r, lambda: {"structure": alg.structure, "G": gram})
    return res


def suite_closed_form(rng, samples, tol):
    res = SuiteResult("curvature.closed_form", 10 * tol)
    for _ in range(samples):
        n, p, q = _dims(rng)
        a = random_metric(p, q, rng)
        f = milnor_frame(lie.rhn(n), a, tol=tol)
        framed = f.algebra.change_basis(f.vectors)
        gram = forms.ipq(p, q)
        curv = curvature_tensor(levi_civita(framed, gram), framed)
        r = closed_form_residual(gram, curv, normalized_constant(f.lam, p, q))
        res.record(r, lambda: {"A": a, "p": p, "q": q})
    return res


def suite_scaling_law(rng, samples, tol):
    res = SuiteResult("curvature.scaling_law", 100 * tol)
    for _ in range(samples):
        alg = _algebras(rng)
        n = alg.dim
        p = int(rng.integers(0, n + 1))
        gram = random_metric(p, n - p, rng, bound=2.0, max_cond=1e2)
        s = rng.uniform(0.2, 5.0)
        c1 = curvature_tensor(levi_civita(alg, gram), alg)
        c2 = curvature_tensor(levi_civita(alg, s * gram), alg)
        seed = int(rng.integers(0, 2**31))
        k1 = sample_sectional(gram, c1, samples=5, seed=seed)
        k2 = sample_sectional(s * gram, c2, samples=5, seed=seed)
        r = float(np.abs(k2 - k1 / s).max()) / max(1.0, float(np.abs(k1).max()))
        res.record(r, lambda: {"structure": alg.structure, "G": gram, "s": s})
    return res


def suite_constant_detection(rng, samples, tol):
    res = SuiteResult("curvature.constant_detection", 0.0)
    for _ in range(samples):
        if rng.random() < 0.5:
            n, p, q = _dims(rng, high=5)
            alg = lie.rhn(n)
        else:
            alg = _algebras(rng)
            n = alg.dim
            p = int(rng.integers(0, n + 1))
            q = n - p
        gram = random_metric(p, q, rng, bound=2.0, max_cond=1e2)
        rep = classify_curvature(alg, gram, samples=50, seed=int(rng.integers(0, 2**31)), tol=tol)
        agree = (rep.constant_K is None) == (rep.wedge_K is None)
        res.record(0.0 if agree else 1.0, lambda: {"structure": alg.structure, "G": gram})
    return res


SUITES = [
    suite_eigen_reconstruction,
    suite_pseudo_orthonormalize,
    suite_signature_congruence,
    suite_derivations,
    suite_automorphism_patterns,
    suite_exp_derivation,
    suite_o11,
    suite_factorization,
    suite_orbit_invariance,
    suite_metric_invariance,
    suite_choice_independence,
    suite_frames,
    suite_connection_oracle,
    suite_tensor_symmetries,
    suite_closed_form,
    suite_scaling_law,
    suite_constant_detection,
]


def run_suites(seed: int = 0, samples: int = 50, tol: float = forms.DEFAULT_TOL) -> list[SuiteResult]:
    """Run every suite with its own child generator; results do not depend on suite order."""
    children = np.random.SeedSequence(seed).spawn(len(SUITES))
    out = []
    for suite, child in zip(SUITES, children):
        rng = np.random.default_rng(child)
        try:
            out.append(suite(rng, samples, tol))
        except Exception as exc:  # a crash is a failure of that suite, not of the run
            r = SuiteResult(suite.__name__.removeprefix("suite_"), float("nan"))
            r.failures.append({"error": f"{type(exc).__name__}: {exc}"})
            out.append(r)
    return out
