"""Acceptance gate: the eight headline claims, each checked at its stated tolerance.

Every test prints one ``PASS``/``FAIL`` line.  Run directly with
``python tests/test_acceptance.py`` for the summary without pytest.
"""
import sys
import time

import numpy as np
import pytest

from pseudomilnor.curvature import (
    curvature_tensor,
    einstein_residual,
    levi_civita,
    levi_civita_koszul,
    ricci,
    sample_sectional,
    soliton_fit,
    wedge,
)
from pseudomilnor.forms import epsilons, ipq
from pseudomilnor.frames import canonical_table, milnor_frame, rahmani_form
from pseudomilnor.hyperbolic import normalized_constant, realize_constant_curvature
from pseudomilnor.lie import heisenberg3, rhn
from pseudomilnor.reduction import o11_normalize, reduce_metric, synthesize_metric
from pseudomilnor.sampling import (
    random_automorphism,
    random_lie_algebra_3,
    random_metric,
    random_scalar,
)

SEED = 20240
METRICS_PER_CASE = 200
PLANES = 200


def _emit(request, line):
    reporter = request.config.pluginmanager.getplugin("terminalreporter") if request else None
    if reporter is not None:
        reporter.write_line(line)
    else:
        print(line)


def _verdict(request, number, ok, detail):
    _emit(request, f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    assert ok, detail


def _cases():
    for n in range(2, 9):
        for p in range(1, n):
            yield n, p, n - p


def _pulled_back(alg, a, rng):
    h = random_scalar(rng) * random_automorphism(alg, rng)
    hinv = np.linalg.inv(h)
    out = hinv.T @ a @ hinv
    return 0.5 * (out + out.T)


def _case_metrics():
    """The metrics of criterion 1: 200 random ones per case plus the three representatives."""
    rng = np.random.default_rng(SEED)
    for n, p, q in _cases():
        alg = rhn(n)
        for _ in range(METRICS_PER_CASE):
            yield alg, p, q, random_metric(p, q, rng), None
        for lam in (0, 1, 2):
            yield alg, p, q, synthesize_metric(alg, lam, p, q, scale=abs(random_scalar(rng))), lam
            yield alg, p, q, _pulled_back(alg, synthesize_metric(alg, lam, p, q), rng), lam


def check_three_orbits():
    labels = {0: 0, 1: 0, 2: 0}
    wrong_label = bad_round_trip = 0
    t0 = time.perf_counter()
    for alg, p, q, a, lam in _case_metrics():
        got = reduce_metric(alg, a).lam
        if got not in labels:
            wrong_label += 1
            continue
        labels[got] += 1
        if lam is not None and got != lam:
            bad_round_trip += 1
    elapsed = time.perf_counter() - t0
    ok = wrong_label == 0 and bad_round_trip == 0 and elapsed < 10.0
    detail = (f"{sum(labels.values())} metrics, label counts {labels}, "
              f"{bad_round_trip} round-trip mismatches, {elapsed:.2f} s (limit 10 s)")
    return ok, detail


def check_constant_curvature():
    worst = 0.0
    t0 = time.perf_counter()
    count = 0
    for alg, p, q, a, _ in _case_metrics():
        frame = milnor_frame(alg, a)
        g = frame.k * a
        curv = curvature_tensor(levi_civita(alg, g), alg)
        ks = sample_sectional(g, curv, samples=PLANES, seed=count)
        target = normalized_constant(frame.lam, p, q)
        worst = max(worst, float(np.abs(ks - target).max()))
        count += 1
    for n in range(2, 9):
        curv = curvature_tensor(levi_civita(rhn(n), np.eye(n)), rhn(n))
        ks = sample_sectional(np.eye(n), curv, samples=PLANES, seed=n)
        worst = max(worst, float(np.abs(ks + 1.0).max()))
        count += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and elapsed < 30.0
    return ok, (f"{count} metrics x {PLANES} planes, max |K - predicted| = {worst:.2e} "
                f"(tol 1e-6), {elapsed:.2f} s (limit 30 s)")


def check_realization():
    worst = 0.0
    count = 0
    for target in (-7.0, -1.0, 0.0, 0.5, 3.0, 100.0):
        for n, p, q in _cases():
            lam, scale, a = realize_constant_curvature(target, p, q)
            expected_lam = 0 if target < 0 else (2 if target > 0 else 1)
            if lam != expected_lam or reduce_metric(rhn(n), a).lam != lam:
                return False, f"wrong orbit for K* = {target} in signature ({p}, {q})"
            if target != 0.0 and abs(scale - abs(normalized_constant(lam, p, q) / target)) > 1e-15 * scale:
                return False, f"scale formula violated for K* = {target}"
            curv = curvature_tensor(levi_civita(rhn(n), a), rhn(n))
            ks = sample_sectional(a, curv, samples=PLANES, seed=count)
            worst = max(worst, float(np.abs(ks - target).max()))
            count += 1
    return worst <= 1e-8, f"{count} constructions, max |K - K*| = {worst:.2e} (tol 1e-8)"


def check_closed_form():
    worst = 0.0
    count = 0
    for alg, p, q, a, _ in _case_metrics():
        frame = milnor_frame(alg, a)
        # curvature of k<,> written in the frame basis
        alg_f = alg.change_basis(frame.vectors)
        g_f = frame.gram()
        curv = curvature_tensor(levi_civita(alg_f, g_f), alg_f)
        constant = normalized_constant(frame.lam, p, q)
        x = np.eye(alg.dim)
        for i in range(alg.dim):
            for j in range(i + 1, alg.dim):
                diff = curv.operator(x[i], x[j]) - constant * wedge(g_f, x[i], x[j])
                worst = max(worst, float(np.abs(diff).max()))
        count += 1
    return worst <= 1e-8, f"{count} frames, max entrywise |R - K X^Y| = {worst:.2e} (tol 1e-8)"


def check_heisenberg():
    h = heisenberg3()
    rng = np.random.default_rng(SEED + 5)
    worst_rel = worst_flat = worst_sol = worst_rahmani = 0.0
    min_einstein = np.inf
    cases = {0: (1, 1.0), 1: (3, None), 2: (2, 3.0)}
    for lam in (0, 1, 2):
        metrics = [synthesize_metric(h, lam, 2, 1)]
        metrics += [_pulled_back(h, synthesize_metric(h, lam, 2, 1), rng) for _ in range(20)]
        for a in metrics:
            frame = milnor_frame(h, a)
            if frame.lam != lam:
                return False, f"round-trip lambda={lam} came back as {frame.lam}"
            rel = max(float(np.abs(frame.bracket_coordinates() - canonical_table("heisenberg3", 3, lam)).max()),
                      float(np.abs(frame.gram() - np.diag(epsilons(2, 1))).max()))
            worst_rel = max(worst_rel, rel)
            r = rahmani_form(frame)
            if (r.case, r.parameter) != cases[lam]:
                return False, f"lambda={lam} gave Rahmani case {r.case} with parameter {r.parameter}"
            worst_rahmani = max(worst_rahmani, r.residual)
            curv = curvature_tensor(levi_civita(h, a), h)
            if lam == 1:
                worst_flat = max(worst_flat, curv.max_abs())
                continue
            ric = ricci(a, curv)
            min_einstein = min(min_einstein, einstein_residual(a, ric))
            worst_sol = max(worst_sol, soliton_fit(h, a, ric).residual)
    ok = (worst_rel <= 1e-9 and worst_flat <= 1e-9 and min_einstein > 1e-2
          and worst_sol <= 1e-6 and worst_rahmani <= 1e-9)
    return ok, (f"relations {worst_rel:.1e}, flat |R| {worst_flat:.1e}, min Einstein residual "
                f"{min_einstein:.3f}, soliton {worst_sol:.1e}, Rahmani {worst_rahmani:.1e}")


def check_connection_oracle():
    rng = np.random.default_rng(SEED + 6)
    worst_scaled = worst_abs = 0.0
    kinds = {"rhn": 0, "heisenberg3": 0, "random3": 0}
    for i in range(500):
        kind = ("rhn", "heisenberg3", "random3")[i % 3]
        kinds[kind] += 1
        alg = {"rhn": lambda: rhn(int(rng.integers(2, 9))), "heisenberg3": heisenberg3,
               "random3": lambda: random_lie_algebra_3(rng)}[kind]()
        n = alg.dim
        p = int(rng.integers(0, n + 1))
        g = random_metric(p, n - p, rng, bound=2.0, max_cond=1e2)
        a, b = levi_civita(alg, g), levi_civita_koszul(alg, g)
        diff = float(np.abs(a.gamma - b.gamma).max())
        worst_abs = max(worst_abs, diff)
        worst_scaled = max(worst_scaled, diff / max(1.0, float(np.abs(a.gamma).max())))
    return worst_scaled <= 1e-12, (f"500 instances {kinds}, max |dGamma| / max(1, |Gamma|) = "
                                   f"{worst_scaled:.1e} (tol 1e-12), absolute {worst_abs:.1e}")


def check_orbit_invariance():
    rng = np.random.default_rng(SEED + 7)
    changed = 0
    for family in ("rhn", "heisenberg3"):
        for _ in range(200):
            if family == "rhn":
                n = int(rng.integers(2, 9))
                p = int(rng.integers(1, n))
                alg, a = rhn(n), random_metric(p, n - p, rng)
            else:
                alg, a = heisenberg3(), random_metric(2, 1, rng)
            if reduce_metric(alg, a).lam != reduce_metric(alg, _pulled_back(alg, a, rng)).lam:
                changed += 1
    return changed == 0, f"400 (metric, c, phi) triples, {changed} label changes"


def check_o11():
    rng = np.random.default_rng(SEED + 8)
    worst_member = worst_map = 0.0
    mismatches = 0
    pairs = rng.standard_normal((10_000, 2)) * 10.0 ** rng.uniform(-3, 3, (10_000, 1))
    pairs[:100, 1] = pairs[:100, 0] * rng.choice([-1.0, 1.0], 100)  # exactly null pairs
    for x, y in pairs:
        r = o11_normalize(x, y)
        member, mapping = r.residuals(x, y)
        worst_member = max(worst_member, member)
        worst_map = max(worst_map, mapping / (abs(x) + abs(y)))
        expected = 1 + int(np.sign(y * y - x * x))
        mismatches += r.lam != expected
    ok = worst_member <= 1e-9 and worst_map <= 1e-9 and mismatches == 0
    return ok, (f"10000 pairs, O(1,1) residual {worst_member:.1e}, mapping residual "
                f"{worst_map:.1e} x (|x|+|y|), {mismatches} lambda mismatches")


CHECKS = [
    (1, check_three_orbits),
    (2, check_constant_curvature),
    (3, check_realization),
    (4, check_closed_form),
    (5, check_heisenberg),
    (6, check_connection_oracle),
    (7, check_orbit_invariance),
    (8, check_o11),
]


@pytest.mark.parametrize("number, check", CHECKS, ids=[f"criterion_{n}" for n, _ in CHECKS])
def test_acceptance(request, number, check):
    ok, detail = check()
    _verdict(request, number, ok, detail)


if __name__ == "__main__":
    failed = 0
    for number, check in CHECKS:
        ok, detail = check()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    sys.exit(1 if failed else 0)
