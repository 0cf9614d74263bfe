"""Entropic uncertainty for complementary observables.

For observables with eigenbases e, f the entropies satisfy
H(A) + H(B) >= -2 log c with c = max |<e_i, f_j>|.  Unbiased bases make the
bound as large as possible, and it is reached at basis vectors.  With all
n + 1 unbiased bases the sum of entropies is at least (n+1) log((n+1)/2).
"""

import numpy as np

from complementarity.entropy import BITS_PER_NAT, Observable, basis_state, mu_constant, mu_slack, sanchez_slack
from complementarity.linalg import haar_unitary, random_density_matrix, rng_stream
from complementarity.weyl import mub_prime, pauli_partition_dim4

for n in (2, 3, 4, 5):
    bases = pauli_partition_dim4() if n == 4 else mub_prime(n)
    a, b = Observable.from_basis(bases[0]), Observable.from_basis(bases[1])
    slacks = [mu_slack(a, b, random_density_matrix(n, rng_stream(0, f"demo/mu/{n}", t))) for t in range(500)]
    print(
        f"n = {n}: c = {mu_constant(a, b):.4f}, bound {-2 * np.log(mu_constant(a, b)):.4f} nats "
        f"({-2 * np.log(mu_constant(a, b)) * BITS_PER_NAT:.2f} bits), "
        f"min slack over 500 states {min(slacks):.4f}, slack at a basis vector {mu_slack(a, b, a.projections[0]):.1e}"
    )

a, b = Observable.from_basis(haar_unitary(3, 0)), Observable.from_basis(haar_unitary(3, 1))
print(f"\nrandom pair in dim 3: c = {mu_constant(a, b):.4f}, weaker bound {-2 * np.log(mu_constant(a, b)):.4f}")

obs = [Observable.from_basis(x) for x in mub_prime(2)]
print("\nall three qubit MUBs at |0>: slack", sanchez_slack(obs, basis_state(2)), "closed form", 2 * np.log(2) - 3 * np.log(1.5))
