import numpy as np
import pytest

from pseudomilnor.curvature import (
    classify_curvature,
    curvature_tensor,
    einstein_residual,
    levi_civita,
    levi_civita_koszul,
    ricci,
    sample_sectional,
    sectional,
    soliton_fit,
    u_operator,
    wedge,
)
from pseudomilnor.errors import DegenerateMetric, DegeneratePlane
from pseudomilnor.forms import epsilons, ipq
from pseudomilnor.frames import canonical_table
from pseudomilnor.lie import LieAlgebra, abelian, heisenberg3, rhn
from pseudomilnor.reduction import synthesize_metric
from pseudomilnor.sampling import random_lie_algebra_3, random_metric


def frame_algebra(n, lam):
    """The rhn bracket table written in a Milnor frame, with its diagonal Gram matrix."""
    return LieAlgebra(canonical_table("rhn", n, lam)), ipq(n - 1, 1)


@pytest.mark.parametrize("lam", [0, 1, 2])
def test_u_operator_in_frame(lam):
    n = 4
    alg, g = frame_algebra(n, lam)
    eps = epsilons(n - 1, 1)
    x = np.eye(n)
    assert np.allclose(u_operator(alg, g, x[0], x[0]), lam * eps[0] * eps[-1] * x[-1], atol=1e-14)
    for i in range(1, n - 1):
        assert np.allclose(u_operator(alg, g, x[0], x[i]), -0.5 * x[i], atol=1e-14)
    y = np.array([0.3, -1.0, 2.0, 0.7])
    z = np.array([1.5, 0.2, -0.4, 1.0])
    assert np.allclose(u_operator(alg, g, y, z), u_operator(alg, g, z, y), atol=1e-14)


def test_u_vanishes_on_abelian():
    g = random_metric(2, 1, np.random.default_rng(0))
    assert np.abs(levi_civita(abelian(3), g).gamma).max() == 0.0
    assert np.abs(levi_civita_koszul(abelian(3), g).gamma).max() == 0.0


@pytest.mark.parametrize("lam", [0, 1, 2])
def test_connection_in_frame(lam):
    n = 4
    alg, g = frame_algebra(n, lam)
    eps = epsilons(n - 1, 1)
    conn = levi_civita(alg, g)
    x = np.eye(n)
    for i in range(1, n - 1):
        assert np.allclose(conn.nabla(x[i], x[0]), -x[i], atol=1e-14)
        assert np.allclose(conn.nabla(x[0], x[i]), 0.0, atol=1e-14)
    assert np.allclose(conn.nabla(x[-1], x[-1]), eps[0] * eps[-1] * x[0], atol=1e-14)


@pytest.mark.parametrize("lam", [0, 1, 2])
def test_curvature_in_frame(lam):
    n = 4
    alg, g = frame_algebra(n, lam)
    eps = epsilons(n - 1, 1)
    curv = curvature_tensor(levi_civita(alg, g), alg)
    x = np.eye(n)
    c = lam * lam * eps[-1] + eps[0]
    for i in range(1, n - 1):
        assert np.allclose(curv.apply(x[0], x[i], x[0]), c * eps[0] * x[i], atol=1e-13)
        assert np.allclose(curv.apply(x[0], x[i], x[-1]), 0.0, atol=1e-13)
    # R(X, Y) = -(lam^2 eps_n + eps_1) X ^ Y on every pair of frame vectors
    for i in range(n):
        for j in range(n):
            assert np.abs(curv.operator(x[i], x[j]) + c * wedge(g, x[i], x[j])).max() <= 1e-12


def test_wedge_examples():
    g = ipq(1, 1)
    e = np.eye(2)
    assert np.array_equal(wedge(g, e[0], e[0]), np.zeros((2, 2)))
    assert np.allclose(wedge(g, e[0], e[1]) @ e[1], -e[0])


@pytest.mark.parametrize("lam, expected", [(0, -1.0), (1, 0.0), (2, 3.0)])
def test_sectional_constants(lam, expected):
    alg, g = frame_algebra(5, lam)
    curv = curvature_tensor(levi_civita(alg, g), alg)
    ks = sample_sectional(g, curv, samples=200, seed=lam)
    assert np.abs(ks - expected).max() <= 1e-9


def test_riemannian_hyperbolic_space():
    alg = rhn(4)
    curv = curvature_tensor(levi_civita(alg, np.eye(4)), alg)
    assert np.abs(sample_sectional(np.eye(4), curv, samples=100) + 1.0).max() <= 1e-12


def test_degenerate_plane_and_metric():
    alg = rhn(2)
    g = ipq(1, 1)
    curv = curvature_tensor(levi_civita(alg, g), alg)
    with pytest.raises(DegeneratePlane):
        sectional(g, curv, np.array([1.0, 1.0]), np.array([2.0, 2.0]))
    with pytest.raises(DegenerateMetric):
        levi_civita(alg, np.array([[1.0, 1.0], [1.0, 1.0]]))


def test_constant_curvature_ricci():
    g = synthesize_metric(rhn(4), 2, 2, 2, scale=0.8)
    report = classify_curvature(rhn(4), g)
    assert report.constant_K is not None
    assert np.abs(report.ricci - 3 * report.constant_K * g).max() <= 1e-10


@pytest.mark.parametrize("seed", range(25))
def test_koszul_oracle(seed):
    rng = np.random.default_rng(seed)
    alg = [rhn(int(rng.integers(2, 9))), heisenberg3(), random_lie_algebra_3(rng)][seed % 3]
    n = alg.dim
    p = int(rng.integers(0, n + 1))
    g = random_metric(p, n - p, rng, bound=2.0, max_cond=1e2)
    a, b = levi_civita(alg, g), levi_civita_koszul(alg, g)
    assert np.abs(a.gamma - b.gamma).max() <= 1e-12 * max(1.0, np.abs(a.gamma).max())
    assert a.torsion_residual(alg) <= 1e-12 * max(1.0, np.abs(a.gamma).max())


def test_heisenberg_trichotomy():
    h = heisenberg3()
    flat = classify_curvature(h, synthesize_metric(h, 1, 2, 1))
    assert flat.flat and flat.constant_K == 0.0
    assert np.abs(flat.ricci).max() <= 1e-12
    for lam in (0, 2):
        g = synthesize_metric(h, lam, 2, 1)
        report = classify_curvature(h, g)
        assert not report.flat
        assert report.einstein is None
        assert report.residuals["einstein"] > 0.1
        assert report.algebraic_soliton is not None
        fit = soliton_fit(h, g, ricci(g, report.riemann))
        assert fit.residual <= 1e-6


def test_flags_for_abelian():
    report = classify_curvature(abelian(3), random_metric(2, 1, np.random.default_rng(1)))
    flags = report.flags()
    assert flags["flat"] and flags["constant_K"] == 0.0 and flags["einstein"] == 0.0


def test_einstein_residual_zero_for_canonical_rhn():
    g = ipq(2, 2)
    report = classify_curvature(rhn(4), g)
    assert report.constant_K == pytest.approx(-1.0, abs=1e-12)
    assert einstein_residual(g, report.ricci) <= 1e-12
