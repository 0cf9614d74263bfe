"""Mutually unbiased bases from the clock and shift operators.

In prime dimension p the p^2 - 1 nontrivial Weyl operators split into p + 1
commuting classes.  Each class has a joint eigenbasis, and any two of these
bases are unbiased.  Dimension 4 is not prime, but a partition of the 15
two-qubit Pauli words into commuting triples still gives 5 unbiased bases.
"""

import numpy as np

from complementarity.weyl import commuting_classes_prime, deviation_matrix, mub_prime, pauli_partition_dim4

np.set_printoptions(precision=3, suppress=True)

for p in (2, 3, 5, 7):
    bases = mub_prime(p)
    dev = deviation_matrix(bases)
    print(f"p = {p}: {len(bases)} bases, worst | |<e,f>|^2 - 1/p | = {dev.max():.1e}")

print("\nclasses for p = 3 (index (j, k) means Z^j X^k):")
for cls in commuting_classes_prime(3):
    print("  ", cls)

print("\nfirst two bases for p = 3, as columns:")
for b in mub_prime(3)[:2]:
    print(b.vectors)

bases = pauli_partition_dim4()
print(f"\ndimension 4 from Pauli triples: {len(bases)} bases")
print("pairwise deviations:")
print(deviation_matrix(bases))
