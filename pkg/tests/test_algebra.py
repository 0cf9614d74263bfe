import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from complementarity import algebra as alg
from complementarity.linalg import SIGMA, haar_unitary, hs_inner, is_projection, pauli_word, random_matrix, tensor
from complementarity.weyl import mub_prime

seeds = st.integers(0, 2**31)


def test_local_algebras_have_expected_dimensions():
    r = alg.local_algebra(2, 3, "right")
    l = alg.local_algebra(2, 3, "left")
    assert r.dim == 9 and l.dim == 4
    assert r.contains(tensor(np.eye(2), np.ones((3, 3))))
    assert l.contains(tensor(SIGMA[2], np.eye(3)))
    assert not r.contains(tensor(SIGMA[1], np.eye(3)))


def test_local_algebra_rejects_bad_side():
    with pytest.raises(ValueError):
        alg.local_algebra(2, 2, "middle")


def test_basis_is_hs_orthonormal_and_starts_with_identity():
    a = alg.local_algebra(2, 2, "left")
    b = a.basis
    gram = np.array([[hs_inner(x, y) for y in b] for x in b])
    assert np.allclose(gram, np.eye(a.dim))
    assert np.allclose(b[0], np.eye(4))


def test_closure_of_pauli_generators():
    a = alg.algebra_close([pauli_word(1, 0), pauli_word(3, 0)], alg.FACTOR)
    assert a.dim == 4
    assert alg.intersection_dim(a, alg.local_algebra(2, 2, "left")) == 4


def test_closure_of_commuting_generator():
    a = alg.algebra_close([pauli_word(3, 3)], alg.COMMUTATIVE)
    assert a.dim == 2


def test_wrong_structure_tag_is_rejected():
    with pytest.raises(ValueError):
        alg.algebra_close([pauli_word(1, 0), pauli_word(3, 0)], alg.COMMUTATIVE)
    # diagonal 2x2 blocks: center is two-dimensional, not a factor
    with pytest.raises(ValueError):
        alg.algebra_close([np.diag([1, 1, 0, 0]).astype(complex), pauli_word(0, 1) @ np.diag([1, 1, 0, 0])], alg.FACTOR)


def test_span_closure_is_verified():
    assert alg.algebra_from_span([pauli_word(1, 0)], alg.COMMUTATIVE).dim == 2
    # s1 s3 = -i s2 is missing from this span
    with pytest.raises(ValueError):
        alg.algebra_from_span([pauli_word(1, 0), pauli_word(3, 0)], alg.GENERAL)


def test_closure_requires_generators():
    with pytest.raises(ValueError):
        alg.algebra_close([])


def test_swap_operator_exchanges_factors(rng):
    a, b = random_matrix(2, rng), random_matrix(3, rng)
    p = alg.swap_operator(2, 3)
    assert np.allclose(p @ np.kron(a, b) @ p.conj().T, np.kron(b, a))


@given(seed=seeds)
def test_conditional_expectation_properties(seed):
    rng = np.random.default_rng(seed)
    a = alg.local_algebra(2, 2, "right").conjugate(haar_unitary(4, rng))
    x, y = random_matrix(4, rng), random_matrix(4, rng)
    e = lambda m: alg.conditional_expectation(a, m)  # noqa: E731
    assert np.allclose(e(e(x)), e(x))
    assert np.isclose(np.trace(e(x)), np.trace(x))
    assert np.allclose(e(x.conj().T), e(x).conj().T)
    assert np.isclose(hs_inner(e(x), y), hs_inner(x, e(y)))
    assert a.contains(e(x))
    # bimodule property: E(b x c) = b E(x) c for b, c in the algebra
    b, c = e(y), e(random_matrix(4, rng))
    assert np.allclose(e(b @ x @ c), b @ e(x) @ c)


@given(seed=seeds)
def test_conditional_expectation_is_positive(seed):
    rng = np.random.default_rng(seed)
    a = alg.local_algebra(2, 2, "left").conjugate(haar_unitary(4, rng))
    g = random_matrix(4, rng)
    assert np.linalg.eigvalsh(alg.conditional_expectation(a, g @ g.conj().T)).min() > -1e-10


def test_conditional_expectation_onto_local_is_partial_trace(rng):
    x = random_matrix(6, rng)
    a = alg.local_algebra(2, 3, "right")
    ptr = np.einsum("ikil->kl", x.reshape(2, 3, 2, 3)) / 2
    assert np.allclose(alg.conditional_expectation(a, x), np.kron(np.eye(2), ptr))


def test_conditional_expectation_dimension_mismatch():
    with pytest.raises(ValueError):
        alg.conditional_expectation(alg.local_algebra(2, 2), np.eye(3))


def test_left_and_right_local_algebras_are_complementary():
    rep = alg.complementarity_report(alg.local_algebra(2, 3, "left"), alg.local_algebra(2, 3, "right"))
    assert rep.cond_i is not None
    assert rep.agree and rep.complementary
    assert max(c.defect for c in (rep.cond_i, rep.cond_ii, rep.cond_iii, rep.cond_iv)) < 1e-12


def test_report_on_an_algebra_and_itself():
    a = alg.local_algebra(2, 2, "right")
    rep = alg.complementarity_report(a, a)
    assert rep.agree and not rep.complementary


@given(seed=seeds)
def test_conditions_agree_on_random_conjugate_factors(seed):
    rng = np.random.default_rng(seed)
    a0 = alg.local_algebra(2, 2, "right")
    rep = alg.complementarity_report(a0, a0.conjugate(haar_unitary(4, rng)), seed=seed % 1000)
    assert rep.agree


@pytest.mark.parametrize("p", [2, 3, 5])
def test_mub_pairs_satisfy_all_conditions(p):
    bases = mub_prime(p)
    for b1, b2 in itertools.combinations(bases, 2):
        rep = alg.complementarity_report(alg.diagonal_algebra(b1.vectors), alg.diagonal_algebra(b2.vectors))
        assert rep.agree and rep.complementary


def test_general_algebra_skips_projection_condition():
    blocks = alg.algebra_close([np.diag([1, 1, 0, 0]).astype(complex), pauli_word(0, 1) @ np.diag([1, 1, 0, 0])])
    rep = alg.complementarity_report(blocks, alg.local_algebra(2, 2, "right"))
    assert rep.cond_i is None
    with pytest.raises(alg.UnsupportedStructureError):
        alg.complementarity_report(blocks, alg.local_algebra(2, 2, "right"), with_cond_i=True)


def test_minimal_projections_of_factor_and_commutative():
    ps = alg.minimal_projections(alg.local_algebra(2, 2, "left"))
    assert all(is_projection(p, 1e-9) and np.isclose(np.trace(p).real, 2) for p in ps)
    qs = alg.minimal_projections(alg.diagonal_algebra(np.eye(3)))
    assert len(qs) == 3 and np.allclose(sum(qs), np.eye(3))


def test_homogeneity():
    assert alg.is_homogeneous(alg.local_algebra(2, 2))
    assert alg.is_homogeneous(alg.diagonal_algebra(haar_unitary(3, 0)))


def test_trivial_algebras():
    s, f = alg.scalars(3), alg.full_algebra(3)
    assert s.dim == 1 and f.dim == 9
    assert alg.quasi_orthogonality_defect(s, f) == 0.0
    assert alg.quasi_orthogonality_defect(f, f) > 0.5


def test_dimension_mismatch_between_algebras():
    with pytest.raises(ValueError):
        alg.quasi_orthogonality_defect(alg.scalars(2), alg.scalars(3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_family_bounds(n):
    assert alg.max_maximal_abelian_family(n) == n + 1
    assert alg.max_factor_family(n) == n * n + 1


@given(seed=seeds)
def test_spanning_decomposition_with_mubs(seed):
    rng = np.random.default_rng(seed)
    algebras = [alg.diagonal_algebra(b.vectors) for b in mub_prime(3)]
    x = random_matrix(3, rng)
    comps = alg.spanning_decomposition(algebras, x)
    assert np.allclose(alg.reconstruct(comps, x), x)


def test_spanning_decomposition_reports_deficiency():
    algebras = [alg.diagonal_algebra(b.vectors) for b in mub_prime(3)[:3]]
    with pytest.raises(alg.SpanDeficiencyError) as info:
        alg.spanning_decomposition(algebras, np.eye(3))
    assert info.value.achieved == 7 and info.value.required == 9


def test_spanning_decomposition_requires_quasi_orthogonality():
    a = alg.diagonal_algebra(np.eye(2))
    with pytest.raises(ValueError):
        alg.spanning_decomposition([a, a, alg.full_algebra(2)], np.eye(2))
