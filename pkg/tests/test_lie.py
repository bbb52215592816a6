import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm, null_space

from pseudomilnor.errors import InvalidAlgebra, SingularMatrix
from pseudomilnor.lie import (
    GroupElementWitness,
    LieAlgebra,
    abelian,
    derivation_space,
    heisenberg3,
    is_automorphism,
    is_derivation,
    is_in_q1,
    jacobi_check,
    rhn,
)
from pseudomilnor.sampling import random_automorphism, random_lie_algebra_3


def brute_force_der_dim(alg):
    # independent oracle: build the constraint system entry by entry from brackets of basis vectors
    n = alg.dim
    rows = []
    e = np.eye(n)
    for i, j in itertools.combinations(range(n), 2):
        for out in range(n):
            row = np.zeros(n * n)
            for a in range(n):
                for b in range(n):
                    d = np.zeros((n, n))
                    d[a, b] = 1.0
                    val = (d @ alg.bracket(e[i], e[j]) - alg.bracket(d @ e[i], e[j])
                           - alg.bracket(e[i], d @ e[j]))[out]
                    row[a * n + b] = val
            rows.append(row)
    return null_space(np.array(rows)).shape[1] if rows else n * n


def test_rhn_brackets():
    g = rhn(4)
    e = np.eye(4)
    assert np.array_equal(g.bracket(e[0], e[2]), e[2])
    assert np.array_equal(g.bracket(e[2], e[0]), -e[2])
    assert np.array_equal(g.bracket(e[1], e[2]), np.zeros(4))


def test_heisenberg_bracket():
    e = np.eye(3)
    assert np.array_equal(heisenberg3().bracket(e[1], e[2]), e[0])


def test_jacobi_counterexample_rejected():
    # [e1,e2]=e3, [e1,e3]=e2, [e2,e3]=e2; by hand only [[e2,e3],e1] = [e2,e1] = -e3 survives
    brackets = [(0, 1, 2, 1.0), (0, 2, 1, 1.0), (1, 2, 1, 1.0)]
    alg = LieAlgebra.from_brackets(3, brackets, validate=False)
    e = np.eye(3)
    total = (alg.bracket(alg.bracket(e[0], e[1]), e[2])
             + alg.bracket(alg.bracket(e[1], e[2]), e[0])
             + alg.bracket(alg.bracket(e[2], e[0]), e[1]))
    assert np.array_equal(total, -e[2])
    assert not jacobi_check(alg)
    with pytest.raises(InvalidAlgebra):
        LieAlgebra.from_brackets(3, brackets)


@pytest.mark.parametrize("alg, expected", [
    (heisenberg3(), 6),
    (rhn(2), 2),
    (rhn(3), 6),
    (rhn(5), 20),
    (abelian(3), 9),
])
def test_derivation_dimensions(alg, expected):
    ders = derivation_space(alg)
    assert len(ders) == expected
    assert brute_force_der_dim(alg) == expected
    for d in ders:
        assert is_derivation(alg, d, tol=1e-12)


@pytest.mark.parametrize("seed", range(8))
def test_derivation_dimension_random_algebras(seed):
    alg = random_lie_algebra_3(np.random.default_rng(seed))
    assert jacobi_check(alg, tol=1e-10)
    assert len(derivation_space(alg)) == brute_force_der_dim(alg)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["rhn", "h3", "random"]))
def test_exp_of_derivation_is_automorphism(seed, kind):
    rng = np.random.default_rng(seed)
    alg = {"rhn": lambda: rhn(int(rng.integers(2, 6))), "h3": heisenberg3,
           "random": lambda: random_lie_algebra_3(rng)}[kind]()
    ders = derivation_space(alg)
    d = sum(rng.uniform(-0.5, 0.5) * di for di in ders)
    assert is_automorphism(alg, expm(d), tol=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_random_automorphism_patterns(seed):
    rng = np.random.default_rng(seed)
    for alg in (rhn(int(rng.integers(2, 8))), heisenberg3()):
        phi = random_automorphism(alg, rng)
        assert is_automorphism(alg, phi)
        assert GroupElementWitness(phi, "Aut").holds(alg)
        assert GroupElementWitness(2.5 * phi, "RtimesAut").holds(alg)
    # every automorphism of rhn lies in Q1
    assert is_in_q1(random_automorphism(rhn(5), rng))


def test_non_automorphisms():
    alg = rhn(3)
    swap = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    assert not is_automorphism(alg, swap)
    with pytest.raises(SingularMatrix):
        is_automorphism(alg, np.zeros((3, 3)))
    assert not GroupElementWitness(swap, "Q1").holds()


def test_change_basis_round_trip():
    alg = heisenberg3()
    b = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 3.0], [1.0, 0.0, 1.0]])
    back = alg.change_basis(b).change_basis(np.linalg.inv(b))
    assert np.abs(back.structure - alg.structure).max() < 1e-12
    assert alg.family == "heisenberg3"
    assert rhn(4).family == "rhn"
    assert abelian(3).family is None
