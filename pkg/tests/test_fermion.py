import itertools

import numpy as np
import pytest

from complementarity.algebra import intersection_dim
from complementarity.blocks import split_blocks, usefulness_defect
from complementarity.fermion import (
    LOWERING,
    V_CAR,
    car_partition_check,
    jordan_wigner,
    mode_algebra,
    parse_partition,
)
from complementarity.linalg import SIGMA, is_unitary


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_car_relations(n):
    assert jordan_wigner(n).car_defect() < 1e-12


def test_two_mode_operators():
    s = jordan_wigner(2)
    a1 = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]])
    a2 = np.array([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 0, 0]])
    assert np.array_equal(s.ops[0], a1)
    assert np.array_equal(s.ops[1], a2)


def test_mode_algebras_are_full_matrix_algebras():
    s = jordan_wigner(3)
    assert mode_algebra(s, [1]).dim == 4
    assert mode_algebra(s, [2, 3]).dim == 16
    assert mode_algebra(s, [1, 2, 3]).dim == 64


def test_v_maps_first_mode_algebra_to_second():
    s = jordan_wigner(2)
    assert is_unitary(V_CAR)
    assert np.allclose(V_CAR @ s.ops[0] @ V_CAR.conj().T, s.ops[1])
    a1, a2 = mode_algebra(s, [1]), mode_algebra(s, [2])
    assert intersection_dim(a1.conjugate(V_CAR), a2) == 4
    assert usefulness_defect(split_blocks(V_CAR, 2, 2)) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 4])
def test_all_bipartitions_are_complementary(n):
    s = jordan_wigner(n)
    modes = range(1, n + 1)
    for r in range(1, n):
        for j1 in itertools.combinations(modes, r):
            j2 = [m for m in modes if m not in j1]
            assert car_partition_check(s, j1, j2) < 1e-10


def test_overlapping_mode_sets_are_not_complementary():
    s = jordan_wigner(2)
    a = mode_algebra(s, [1])
    from complementarity.algebra import quasi_orthogonality_defect

    assert quasi_orthogonality_defect(a, a) > 0.5


@pytest.mark.parametrize(
    "j1, j2",
    [([], [1, 2]), ([1], [1, 2]), ([1], [3]), ([1], [2])],
)
def test_partition_validation(j1, j2):
    with pytest.raises(ValueError):
        car_partition_check(jordan_wigner(3), j1, j2)


def test_mode_count_limits():
    with pytest.raises(ValueError):
        jordan_wigner(0)
    with pytest.raises(ValueError):
        jordan_wigner(7)


def test_parse_partition():
    assert parse_partition("1;2,3") == [[1], [2, 3]]
    assert parse_partition("1, 3 ; 2") == [[1, 3], [2]]
    with pytest.raises(ValueError):
        parse_partition("a;b")


def test_lowering_operator():
    assert np.allclose(LOWERING @ LOWERING, 0)
    assert np.allclose(LOWERING @ LOWERING.T + LOWERING.T @ LOWERING, SIGMA[0])
