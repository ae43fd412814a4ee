import math

import numpy as np
import pytest

from eqaoa.errors import SizeError
from eqaoa.hamiltonian import Clause3, ProjectorHamiltonian, SatInstance, build_sat_diagonal
from eqaoa.oracle import (
    DenseOperator,
    clause_count_check,
    dense_evolution,
    exhaustive_max,
    mixer_operator,
    phase_operator,
    projector_diagonal_naive,
)
from eqaoa.problems import GeneratorSpec, generate_planted_sat


def test_empty_schedule_is_uniform():
    np.testing.assert_allclose(dense_evolution(np.zeros(8), []), np.full(8, 8**-0.5))


def test_single_phase_flip():
    psi = dense_evolution([0.0, 1.0], [(math.pi, 0.0)])
    np.testing.assert_allclose(psi, [2**-0.5, -(2**-0.5)], atol=1e-15)


def test_size_cap():
    with pytest.raises(SizeError):
        dense_evolution(np.zeros(1 << 9), [(0.1, 0.1)])


@pytest.mark.parametrize("n", [1, 3, 6])
def test_operators_unitary(n):
    rng = np.random.default_rng(n)
    for beta in rng.uniform(-4, 4, 3):
        u = mixer_operator(n, beta).matrix
        assert np.abs(u @ u.conj().T - np.eye(1 << n)).max() <= 1e-10
    u = phase_operator(rng.normal(size=1 << n), 2.7).matrix
    assert np.abs(u @ u.conj().T - np.eye(1 << n)).max() <= 1e-10


def test_non_unitary_rejected():
    with pytest.raises(ValueError):
        DenseOperator(1, [[1, 1], [0, 1]])


def test_mixer_matches_matrix_exponential():
    from scipy.linalg import expm

    n = 3
    x = np.array([[0, 1], [1, 0]])
    hb = sum(np.kron(np.kron(np.eye(2 ** (n - 1 - q)), x), np.eye(2**q)) for q in range(n))
    np.testing.assert_allclose(mixer_operator(n, 0.41).matrix, expm(-0.41j * hb), atol=1e-13)


def test_dense_evolution_norm():
    rng = np.random.default_rng(0)
    psi = dense_evolution(rng.normal(size=64), [(g, b) for g, b in rng.uniform(0, 6, (20, 2))])
    assert abs(np.vdot(psi, psi).real - 1) <= 1e-10


def test_exhaustive_max_constant():
    value, arg = exhaustive_max(np.full(8, 2))
    assert value == 2 and arg == frozenset(range(8))


def test_exhaustive_max_ties():
    assert exhaustive_max([0, 3, 3, 1]) == (3, frozenset({1, 2}))


def test_exhaustive_max_planted():
    inst, z = generate_planted_sat(GeneratorSpec(9, 80, "planted", 5))
    value, arg = exhaustive_max(build_sat_diagonal(inst).values)
    assert value == 80 and z in arg


def test_exhaustive_max_complete():
    d = np.random.default_rng(3).integers(0, 5, 256)
    value, arg = exhaustive_max(d)
    assert value == max(d)
    assert arg == frozenset(z for z in range(256) if d[z] == value)


def test_clause_count_examples():
    inst = SatInstance(3, [Clause3((0, 1, 2))])
    assert clause_count_check(inst, 0) == 0
    assert clause_count_check(inst, 4) == 1
    planted, z = generate_planted_sat(GeneratorSpec(7, 30, "planted", 1))
    assert clause_count_check(planted, z) == 30


def test_projector_diagonal_naive():
    h = ProjectorHamiltonian(3, {0: 0.5, 0b101: 2.0})
    np.testing.assert_allclose(projector_diagonal_naive(h), [0.5, 0.5, 0.5, 0.5, 0.5, 2.5, 0.5, 2.5])
