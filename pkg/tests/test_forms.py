import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pseudomilnor.errors import DegenerateMetric, NotSymmetric
from pseudomilnor.forms import (
    MetricTensor,
    act_on_metric,
    ipq,
    is_in_O_pq,
    jacobi_eigh,
    pseudo_orthonormalize,
    signature,
    symmetric_eigen,
)
from pseudomilnor.sampling import random_gl, random_metric, random_O_pq


def test_swap_matrix_eigen_by_hand():
    # [[0,1],[1,0]] has eigenvalues +1, -1 with eigenvectors (1,1)/sqrt2, (1,-1)/sqrt2
    for method in ("lapack", "jacobi"):
        w, q = symmetric_eigen([[0.0, 1.0], [1.0, 0.0]], method=method)
        assert np.allclose(w, [1.0, -1.0], atol=1e-15)
        assert abs(abs(q[0, 0]) - 2 ** -0.5) < 1e-15
        assert abs(q[0, 1] * q[1, 1] + 0.5) < 1e-15


@pytest.mark.parametrize("seed", range(10))
def test_jacobi_matches_lapack(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    a = rng.uniform(-5, 5, (n, n))
    a = a + a.T
    wj, qj = jacobi_eigh(a)
    wl, _ = symmetric_eigen(a)
    assert np.allclose(wj, wl, atol=1e-12)
    assert np.abs(qj @ np.diag(wj) @ qj.T - a).max() < 1e-12
    assert np.abs(qj.T @ qj - np.eye(n)).max() < 1e-13


def test_signature_examples():
    assert signature(ipq(2, 1)) == (2, 1)
    assert signature(np.diag([1.0, 1.0, -4.0])) == (2, 1)
    assert signature([[0.0, 1.0], [1.0, 0.0]]) == (1, 1)
    with pytest.raises(DegenerateMetric):
        signature(np.diag([1.0, 0.0, -1.0]))


def test_metric_tensor_rejects_asymmetry():
    with pytest.raises(NotSymmetric):
        MetricTensor([[1.0, 2.0], [2.000001, 1.0]])
    m = MetricTensor(ipq(1, 2))
    assert m.signature == (1, 2)
    assert m.inner([1, 0, 0], [1, 0, 0]) == 1.0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 4), st.integers(0, 4))
def test_pseudo_orthonormalize_property(seed, p, q):
    if p + q == 0:
        return
    rng = np.random.default_rng(seed)
    a = random_metric(p, q, rng)
    g = pseudo_orthonormalize(a)
    scale = max(1.0, np.abs(a).max())
    assert np.abs(g.T @ a @ g - ipq(p, q)).max() <= 1e-9 * scale
    assert signature(a) == (p, q)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_signature_congruence_invariant(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    p = int(rng.integers(0, n + 1))
    # cond(a) <= 1e4 and cond(h)^2 <= 1e4 keep h^T a h clear of the 1e-9 degeneracy cutoff
    a = random_metric(p, n - p, rng, max_cond=1e2)
    h = random_gl(n, rng, max_cond=1e2)
    assert signature(h.T @ a @ h) == (p, n - p)


def test_action_is_a_left_action():
    rng = np.random.default_rng(3)
    a = random_metric(2, 2, rng)
    g, h = random_gl(4, rng), random_gl(4, rng)
    lhs = act_on_metric(g @ h, a)
    rhs = act_on_metric(g, act_on_metric(h, a))
    assert np.abs(lhs - rhs).max() < 1e-9 * np.abs(lhs).max()


def test_action_fixes_canonical_form_under_O_pq():
    rng = np.random.default_rng(4)
    g = random_O_pq(2, 3, rng)
    assert is_in_O_pq(g, 2, 3, tol=1e-9)
    assert np.abs(act_on_metric(g, ipq(2, 3)) - ipq(2, 3)).max() < 1e-9
