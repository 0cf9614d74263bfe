import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from complementarity.algebra import local_algebra, quasi_orthogonality_defect
from complementarity.blocks import (
    PAULI_W,
    PAULI_W2_PLUS_BLOCKS,
    SWAP_U,
    adjoint_closure_check,
    conjugated_algebra,
    fourier_matrix,
    frame_defect,
    frame_operator,
    is_useful,
    pauli_w2,
    relative_defect,
    split_blocks,
    usefulness_defect,
    weyl_block_unitary,
)
from complementarity.linalg import SIGMA, haar_unitary, is_unitary

seeds = st.integers(0, 2**31)


def _algebraic_defect(w, n, m):
    """Independent route: quasi-orthogonality of the conjugated algebra against C I (x) M_m."""
    return quasi_orthogonality_defect(conjugated_algebra(w, n, m), local_algebra(n, m, "right"))


def test_pauli_w_is_useful():
    assert is_unitary(PAULI_W)
    assert usefulness_defect(split_blocks(PAULI_W, 2, 2)) < 1e-12
    assert _algebraic_defect(PAULI_W, 2, 2) < 1e-12


def test_pauli_w_is_the_fourier_weyl_construction():
    assert np.allclose(weyl_block_unitary(2, fourier_matrix(2)).w, PAULI_W)


def test_plus_i_pauli_blocks_are_not_unitary_but_form_a_frame():
    plus = np.block([[PAULI_W2_PLUS_BLOCKS[i, j] for j in range(2)] for i in range(2)])
    assert not is_unitary(plus, 1e-3)
    assert frame_defect(PAULI_W2_PLUS_BLOCKS) < 1e-12
    bu = pauli_w2()
    assert is_unitary(bu.w)
    assert usefulness_defect(bu) < 1e-12
    # same blocks up to the sign of the identity block
    assert np.allclose(bu.blocks[1, 1], -PAULI_W2_PLUS_BLOCKS[1, 1])
    assert np.allclose(bu.blocks[0], PAULI_W2_PLUS_BLOCKS[0])


def test_swap_is_useful():
    assert usefulness_defect(split_blocks(SWAP_U, 2, 2)) == 0.0
    assert _algebraic_defect(SWAP_U, 2, 2) < 1e-12


def test_identity_and_local_unitaries_are_not_useful():
    assert not is_useful(np.eye(4), 2, 2)
    assert not is_useful(np.kron(haar_unitary(2, 1), haar_unitary(2, 2)), 2, 2)


@given(seed=seeds)
def test_usefulness_matches_algebraic_route_for_haar(seed):
    w = haar_unitary(4, seed)
    d = usefulness_defect(split_blocks(w, 2, 2))
    assert d > 1e-3
    assert _algebraic_defect(w, 2, 2) > 1e-6


@given(n=st.sampled_from([2, 3, 4, 5]), seed=seeds)
def test_weyl_block_unitaries_are_useful(n, seed):
    rng = np.random.default_rng(seed)
    c = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, n))) @ fourier_matrix(n)
    bu = weyl_block_unitary(n, c, start=int(rng.integers(n)))
    assert is_unitary(bu.w, 1e-10)
    assert usefulness_defect(bu) < 1e-10
    assert bu.column_identity_defect() < 1e-10
    assert np.allclose(bu.reassemble(), bu.w)


def test_weyl_block_unitary_useful_algebraic_n3():
    bu = weyl_block_unitary(3, fourier_matrix(3))
    assert _algebraic_defect(bu.w, 3, 3) < 1e-12


def test_weyl_block_unitary_validation():
    with pytest.raises(ValueError):
        weyl_block_unitary(2, np.eye(2))
    with pytest.raises(ValueError):
        weyl_block_unitary(2, np.ones((2, 2)) / np.sqrt(2))
    with pytest.raises(ValueError):
        weyl_block_unitary(3, fourier_matrix(2))


@given(seed=seeds)
def test_adjoint_closure(seed):
    rng = np.random.default_rng(seed)
    w = np.kron(haar_unitary(2, rng), haar_unitary(2, rng)) @ PAULI_W @ np.kron(haar_unitary(2, rng), haar_unitary(2, rng))
    assert adjoint_closure_check(w, 2, 2)
    assert is_useful(w, 2, 2) and is_useful(w.conj().T, 2, 2)
    assert adjoint_closure_check(haar_unitary(4, rng), 2, 2)


def test_relative_defect():
    assert relative_defect(PAULI_W, np.eye(4), 2, 2) < 1e-12
    assert relative_defect(PAULI_W, PAULI_W, 2, 2) > 0.1


def test_split_blocks_validation():
    with pytest.raises(ValueError):
        split_blocks(np.eye(4), 3, 2)
    with pytest.raises(ValueError):
        split_blocks(2 * np.eye(4), 2, 2)


def test_block_layout():
    w = np.kron(SIGMA[1], SIGMA[3])
    bu = split_blocks(w, 2, 2)
    assert np.allclose(bu.block(0, 1), SIGMA[3]) and np.allclose(bu.block(0, 0), 0)


def test_frame_operator_trace_equals_block_norms():
    bu = split_blocks(haar_unitary(6, 3), 2, 3)
    # sum_ij Tr W_ij^* W_ij = Tr W^* W = n m
    assert np.isclose(np.trace(frame_operator(bu.blocks)).real, 6)
