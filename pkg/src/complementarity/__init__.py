"""Complementary subalgebras of finite-dimensional matrix algebras.

Constructs mutually unbiased bases, useful block unitaries, two-qubit Cartan
classes, CAR and Bell-basis examples, and checks complementarity numerically.
"""

from .algebra import (
    COMMUTATIVE,
    FACTOR,
    GENERAL,
    ComplementarityReport,
    OperatorAlgebra,
    algebra_close,
    algebra_from_span,
    complementarity_report,
    conditional_expectation,
    local_algebra,
    quasi_orthogonality_defect,
)
from .bell import bell_algebra, bell_complementarity_defect, bell_unitary
from .blocks import BlockUnitary, split_blocks, usefulness_defect, weyl_block_unitary
from .cartan import CartanParams, cartan_coeffs, cartan_defect, cartan_n, classify
from .entropy import Observable, mu_slack, povm_slack, sanchez_slack
from .fermion import jordan_wigner, car_partition_check
from .linalg import haar_unitary, hs_inner, pauli_word, tensor
from .search import family_search
from .suite import RunConfig, run_suite
from .weyl import mub_prime, pauli_partition_dim4, weyl_system

__version__ = "0.1.0"
