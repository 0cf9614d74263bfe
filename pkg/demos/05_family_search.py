"""How many pairwise complementary copies of M_2 fit in M_2 (x) M_2?

Dimension counting allows 5.  Every useful two-qubit unitary, however,
shares at least a 2-dimensional piece with M_2 (x) I, and a search finds no
5-member family.  Four members do exist: each is spanned by a triple of
anticommuting Pauli words, and the leftover three words form a commutative
complement.
"""

import numpy as np

from complementarity.algebra import quasi_orthogonality_defect, span_rank
from complementarity.cartan import COMMUTATIVE_COMPLEMENT, FOUR_TRIPLETS, four_family_dim4, local_intersection_check, random_class_member
from complementarity.linalg import haar_unitary, rng_stream
from complementarity.search import family_search

dims = []
for t in range(50):
    rng = rng_stream(0, "demo/intersection", t)
    dims.append(local_intersection_check(haar_unitary(2, rng), haar_unitary(2, rng), random_class_member(rng)).intersection_dim)
print("intersection with M2 (x) I over 50 random useful unitaries:", sorted(set(dims)))

for k in (4, 5):
    res = family_search(2, k, "pauli-triplet", budget=100_000)
    print(f"k = {k}: success={res.success}, nodes={res.trials}, exhausted={res.exhausted}")

res = family_search(2, 5, "cartan-random", seed=0, budget=20_000, dressing="clifford")
print(f"randomized search with Clifford dressing, k = 5: success={res.success}, largest family {len(res.family.algebras)}")

print("\nthe four triplets:")
for t in FOUR_TRIPLETS:
    print("  ", " ".join(f"s{i}s{j}" for i, j in t))
print("commutative complement:", " ".join(f"s{i}s{j}" for i, j in COMMUTATIVE_COMPLEMENT))

fam = four_family_dim4()
algs = fam.triplet_algebras + [fam.complement]
worst = max(quasi_orthogonality_defect(a, b) for i, a in enumerate(algs) for b in algs[i + 1:])
print(f"pairwise defect {worst:.1e}, joint span dimension {span_rank(algs)}")
