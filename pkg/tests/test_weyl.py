import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from complementarity.algebra import max_maximal_abelian_family
from complementarity.linalg import commutator, hs_inner, pauli_word
from complementarity.weyl import (
    PAULI_PARTITION_DIM4,
    Basis,
    commuting_classes_prime,
    deviation_matrix,
    eigenbasis_of_class,
    fourier_basis,
    is_prime,
    joint_eigenbasis,
    mub_prime,
    pauli_partition_dim4,
    standard_basis,
    unbiasedness_deviation,
    weyl_operator_basis,
    weyl_s,
    weyl_system,
)

PRIMES = [2, 3, 5, 7, 11]


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_clock_shift_relations(n):
    s = weyl_system(n)
    assert np.allclose(np.linalg.matrix_power(s.x, n), np.eye(n))
    assert np.allclose(np.linalg.matrix_power(s.z, n), np.eye(n))
    assert np.allclose(s.z @ s.x, s.q * s.x @ s.z)
    e0 = np.eye(n)[:, 0]
    assert np.allclose(s.x @ e0, np.eye(n)[:, 1])


def test_weyl_system_rejects_small_n():
    with pytest.raises(ValueError):
        weyl_system(1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_weyl_operators_orthonormal(n):
    ops = weyl_operator_basis(n)
    gram = np.array([[hs_inner(a, b) for b in ops] for a in ops])
    assert np.allclose(gram, np.eye(n * n))


def test_weyl_s_reduces_indices():
    s = weyl_system(3)
    assert np.allclose(weyl_s(s, 4, -1), weyl_s(s, 1, 2))


def _brute_force_classes(p):
    """Maximal sets of nonzero indices whose Weyl operators pairwise commute, by direct matrix products."""
    s = weyl_system(p)
    pts = [(j, k) for j in range(p) for k in range(p) if (j, k) != (0, 0)]
    commute = {
        (a, b): np.linalg.norm(commutator(weyl_s(s, *a), weyl_s(s, *b))) < 1e-9 for a in pts for b in pts
    }
    classes = set()
    for a in pts:
        cls = frozenset(b for b in pts if commute[a, b])
        if all(commute[x, y] for x in cls for y in cls):
            classes.add(cls)
    return classes


@pytest.mark.parametrize("p", [2, 3, 5])
def test_commuting_classes_match_brute_force(p):
    got = {frozenset(c) for c in commuting_classes_prime(p)}
    assert got == _brute_force_classes(p)
    assert len(got) == p + 1


def test_commuting_classes_partition_nonzero_points():
    p = 7
    pts = [x for c in commuting_classes_prime(p) for x in c]
    assert sorted(pts) == sorted((j, k) for j in range(p) for k in range(p) if (j, k) != (0, 0))


def test_commuting_classes_reject_composite():
    with pytest.raises(ValueError):
        commuting_classes_prime(6)


@pytest.mark.parametrize("p", PRIMES)
def test_mub_prime_is_complete_and_unbiased(p):
    bases = mub_prime(p)
    assert len(bases) == p + 1 == max_maximal_abelian_family(p)
    for b in bases:
        assert b.orthonormality_defect() < 1e-12
    assert deviation_matrix(bases).max() < 1e-10


def test_mub_prime_p2_contains_standard_and_fourier_up_to_order():
    bases = mub_prime(2)
    std = standard_basis(2)
    four = fourier_basis(2)

    def same(b, ref):
        return np.allclose(np.abs(b.vectors.conj().T @ ref.vectors) ** 2 @ np.ones(2), 1) and (
            np.abs(b.vectors.conj().T @ ref.vectors).max() > 1 - 1e-9
        )

    assert any(same(b, std) for b in bases)
    assert any(same(b, four) for b in bases)


def test_eigenbasis_diagonalizes_its_class():
    p = 5
    s = weyl_system(p)
    for cls in commuting_classes_prime(p):
        v = eigenbasis_of_class(s, cls).vectors
        for j, k in cls:
            d = v.conj().T @ weyl_s(s, j, k) @ v
            assert np.allclose(d, np.diag(np.diag(d)))


def test_eigenbasis_rejects_noncommuting_set():
    s = weyl_system(3)
    with pytest.raises(ValueError):
        eigenbasis_of_class(s, [(0, 1), (1, 0)])


def test_pauli_partition_is_a_partition_of_commuting_triples():
    words = [w for triple in PAULI_PARTITION_DIM4 for w in triple]
    assert sorted(words) == sorted((i, j) for i in range(4) for j in range(4) if (i, j) != (0, 0))
    for triple in PAULI_PARTITION_DIM4:
        for a, b in itertools.combinations(triple, 2):
            assert np.allclose(commutator(pauli_word(*a), pauli_word(*b)), 0)


def test_pauli_partition_gives_five_mubs():
    bases = pauli_partition_dim4()
    assert len(bases) == 5 == max_maximal_abelian_family(4)
    dev = deviation_matrix(bases)
    assert dev[np.triu_indices(5, 1)].max() < 1e-10


def test_joint_eigenbasis_resolves_degeneracy():
    # s3 (x) I alone is degenerate; adding I (x) s3 splits it into a product basis
    v = joint_eigenbasis([pauli_word(3, 0), pauli_word(0, 3)])
    assert np.allclose(np.abs(v), np.eye(4)[:, np.argmax(np.abs(v), axis=0)])


@given(st.integers(0, 200))
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == (n >= 2 and all(n % d for d in range(2, n)))


@given(st.sampled_from(PRIMES[:3]), st.integers(0, 2**31))
def test_unbiasedness_is_unitarily_invariant(p, seed):
    from complementarity.linalg import haar_unitary

    u = haar_unitary(p, seed)
    a, b = mub_prime(p)[:2]
    assert unbiasedness_deviation(Basis(u @ a.vectors), Basis(u @ b.vectors)) < 1e-10


def test_unbiasedness_deviation_of_identical_bases():
    b = standard_basis(3)
    assert np.isclose(unbiasedness_deviation(b, b), 1 - 1 / 3)
