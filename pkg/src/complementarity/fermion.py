"""Fermionic mode operators via the Jordan-Wigner representation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import FACTOR, OperatorAlgebra, algebra_close, quasi_orthogonality_defect
from .linalg import SIGMA, anticommutator, dagger, tensor

MAX_MODES = 6
LOWERING = np.array([[0, 1], [0, 0]], dtype=complex)

# Unitary carrying the algebra of mode 1 onto the algebra of mode 2 for two modes
V_CAR = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 1]], dtype=complex)


@dataclass(frozen=True)
class FermionSystem:
    n_modes: int
    ops: tuple = field(repr=False)

    def car_defect(self) -> float:
        """Largest violation of ``{a_i, a_j} = 0`` and ``{a_i, a_j^*} = delta_ij I``."""
        d = 2**self.n_modes
        worst = 0.0
        for i, a in enumerate(self.ops):
            for j, b in enumerate(self.ops):
                worst = max(worst, float(np.abs(anticommutator(a, b)).max()))
                target = np.eye(d) if i == j else 0
                worst = max(worst, float(np.abs(anticommutator(a, dagger(b)) - target).max()))
        return worst


def jordan_wigner(n: int) -> FermionSystem:
    """``a_i = s3 (x) ... (x) s3 (x) [[0,1],[0,0]] (x) I (x) ... (x) I`` (``i-1`` leading ``s3``)."""
    if not 1 <= n <= MAX_MODES:
        raise ValueError(f"number of modes must be in 1..{MAX_MODES}")
    ops = tuple(tensor(*([SIGMA[3]] * i + [LOWERING] + [SIGMA[0]] * (n - i - 1))) for i in range(n))
    return FermionSystem(n, ops)


def mode_algebra(sys: FermionSystem, modes: Sequence[int]) -> OperatorAlgebra:
    """Algebra generated by ``{a_i : i in modes}`` (1-based mode labels)."""
    return algebra_close([sys.ops[i - 1] for i in modes], FACTOR)


def parse_partition(text: str) -> list[list[int]]:
    """``"1;2,3"`` -> ``[[1], [2, 3]]``."""
    return [[int(x) for x in part.split(",") if x.strip()] for part in text.split(";")]


def car_partition_check(sys: FermionSystem, j1: Sequence[int], j2: Sequence[int]) -> float:
    """Quasi-orthogonality defect of the algebras generated by two complementary mode sets."""
    s1, s2 = set(j1), set(j2)
    if not s1 or not s2:
        raise ValueError("both mode sets must be nonempty")
    if s1 & s2:
        raise ValueError("mode sets overlap")
    if s1 | s2 != set(range(1, sys.n_modes + 1)):
        raise ValueError("mode sets do not cover all modes")
    return quasi_orthogonality_defect(mode_algebra(sys, sorted(s1)), mode_algebra(sys, sorted(s2)))
