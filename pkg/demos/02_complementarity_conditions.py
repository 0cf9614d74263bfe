"""Four ways to say that two subalgebras are complementary.

For homogeneous subalgebras (maximal Abelian ones, or full matrix factors)
these are equivalent:

  (i)   tau(PQ) = tau(P) tau(Q) for minimal projections P, Q
  (ii)  the traceless parts are orthogonal
  (iii) tau(ab) = tau(a) tau(b) for all a, b
  (iv)  the conditional expectation onto one maps the other to scalars

The report evaluates all four numerically for a few pairs.
"""

import numpy as np

from complementarity import algebra as alg
from complementarity.blocks import PAULI_W
from complementarity.linalg import haar_unitary, random_matrix
from complementarity.weyl import mub_prime


def show(title, a1, a2):
    rep = alg.complementarity_report(a1, a2)
    cells = [f"{c.defect:8.1e}" for c in (rep.cond_i, rep.cond_ii, rep.cond_iii, rep.cond_iv)]
    print(f"{title:<38} {' '.join(cells)}   complementary={rep.complementary} agree={rep.agree}")


print(f"{'pair':<38} {'(i)':>8} {'(ii)':>8} {'(iii)':>8} {'(iv)':>8}")
left, right = alg.local_algebra(2, 2, "left"), alg.local_algebra(2, 2, "right")
show("M2 (x) I  vs  I (x) M2", left, right)
show("I (x) M2  vs  W (I (x) M2) W*", right, right.conjugate(PAULI_W))
show("I (x) M2  vs  Haar conjugate", right, right.conjugate(haar_unitary(4, 1)))

b = mub_prime(3)
show("diagonal in two MUBs, dim 3", alg.diagonal_algebra(b[0].vectors), alg.diagonal_algebra(b[1].vectors))
show("diagonal in a random pair, dim 3", alg.diagonal_algebra(b[0].vectors), alg.diagonal_algebra(haar_unitary(3, 2)))

# conditional expectation onto I (x) M2 is the normalized partial trace
x = random_matrix(4, 0)
ex = alg.conditional_expectation(right, x)
ptr = np.einsum("ikil->kl", x.reshape(2, 2, 2, 2)) / 2
print("\nE(x) equals I (x) Tr_1(x)/2:", np.allclose(ex, np.kron(np.eye(2), ptr)))

# four pairwise complementary subalgebras that span M_3 reconstruct any operator
algebras = [alg.diagonal_algebra(v.vectors) for v in b]
comps = alg.spanning_decomposition(algebras, x[:3, :3])
print("reconstruction error from 4 MUB algebras:", np.abs(alg.reconstruct(comps, x[:3, :3]) - x[:3, :3]).max())
