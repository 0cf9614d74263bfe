import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from complementarity.linalg import (
    SIGMA,
    as_matrix,
    dagger,
    exp_sigma,
    haar_unitary,
    hs_inner,
    hs_norm,
    is_projection,
    is_unitary,
    matrices_from_json,
    matrix_from_json,
    matrix_to_json,
    pauli_word,
    random_density_matrix,
    rng_stream,
    tensor,
)
from scipy.linalg import expm

seeds = st.integers(0, 2**32 - 1)


def test_hs_inner_matches_trace_formula(rng):
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    b = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    assert np.isclose(hs_inner(a, b), np.trace(a.conj().T @ b) / 5)
    assert np.isclose(hs_inner(np.eye(5), np.eye(5)), 1.0)
    assert np.isclose(hs_norm(np.eye(3)), 1.0)


def test_hs_inner_rejects_mismatched_shapes():
    with pytest.raises(ValueError):
        hs_inner(np.eye(2), np.eye(3))
    with pytest.raises(ValueError):
        as_matrix(np.ones((2, 3)))


def test_pauli_words_are_orthonormal():
    words = [pauli_word(i, j) for i in range(4) for j in range(4)]
    gram = np.array([[hs_inner(a, b) for b in words] for a in words])
    assert np.allclose(gram, np.eye(16))


def test_pauli_word_returns_a_fresh_copy():
    w = pauli_word(1, 2)
    w[0, 0] = 99
    assert pauli_word(1, 2)[0, 0] == 0


def test_tensor_associativity(rng):
    a, b, c = (rng.normal(size=(2, 2)) for _ in range(3))
    assert np.allclose(tensor(a, b, c), np.kron(np.kron(a, b), c))
    assert np.allclose(tensor(a, tensor(b, c)), tensor(tensor(a, b), c))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_exp_sigma_matches_expm(k):
    theta = 0.37
    assert np.allclose(exp_sigma(k, theta), expm(1j * theta * np.kron(SIGMA[k], SIGMA[k])))


def test_exp_sigma_rejects_bad_index():
    with pytest.raises(ValueError):
        exp_sigma(0, 1.0)


@given(dim=st.integers(1, 6), seed=seeds)
def test_haar_unitary_is_unitary(dim, seed):
    assert is_unitary(haar_unitary(dim, seed), 1e-10)


def test_haar_unitary_deterministic_per_seed():
    assert np.array_equal(haar_unitary(4, 7), haar_unitary(4, 7))
    assert not np.allclose(haar_unitary(4, 7), haar_unitary(4, 8))


def test_haar_first_entry_moment():
    # For Haar U in dimension d, |U_11|^2 ~ Beta(1, d-1) with mean 1/d and variance (d-1)/(d^2 (d+1)).
    d, n = 4, 4000
    rng = rng_stream(0, "test/haar-moment")
    vals = np.array([abs(haar_unitary(d, rng)[0, 0]) ** 2 for _ in range(n)])
    sd = np.sqrt((d - 1) / (d**2 * (d + 1)) / n)
    assert abs(vals.mean() - 1 / d) < 5 * sd
    # fourth moment E|U_11|^4 = 2 / (d (d+1))
    assert abs((vals**2).mean() - 2 / (d * (d + 1))) < 0.01


def test_haar_phase_is_uniform():
    rng = rng_stream(1, "test/haar-phase")
    phases = np.array([np.angle(haar_unitary(3, rng)[0, 0]) for _ in range(3000)])
    # circular mean of a uniform phase vanishes
    assert abs(np.exp(1j * phases).mean()) < 0.06


def test_rng_streams_are_independent_and_stable():
    a = rng_stream(5, "x", 0).random(4)
    assert np.array_equal(a, rng_stream(5, "x", 0).random(4))
    assert not np.allclose(a, rng_stream(5, "x", 1).random(4))
    assert not np.allclose(a, rng_stream(5, "y", 0).random(4))


@given(dim=st.integers(1, 5), seed=seeds)
def test_random_density_matrix_is_a_state(dim, seed):
    rho = random_density_matrix(dim, seed)
    assert np.isclose(np.trace(rho), 1)
    assert np.allclose(rho, dagger(rho))
    assert np.linalg.eigvalsh(rho).min() > -1e-12


def test_rank_one_density_matrix_is_projection():
    assert is_projection(random_density_matrix(3, 0, rank=1), 1e-10)


@given(dim=st.integers(1, 4), seed=seeds)
def test_json_round_trip(dim, seed):
    m = haar_unitary(dim, seed)
    text = json.dumps(matrix_to_json(m))
    assert np.array_equal(matrix_from_json(json.loads(text)), m)


def test_json_list_and_generators_forms():
    recs = [matrix_to_json(SIGMA[1]), matrix_to_json(SIGMA[3])]
    assert len(matrices_from_json(recs)) == 2
    assert len(matrices_from_json({"generators": recs})) == 2
    assert len(matrices_from_json(recs[0])) == 1


def test_json_malformed_record():
    with pytest.raises(ValueError):
        matrix_from_json({"dim": 2, "re": [[1, 0]]})
    with pytest.raises(ValueError):
        matrix_from_json({"re": [[1]]})
