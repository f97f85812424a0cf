"""
Zero-sum subsets of covering sets
=================================

A set of nonzero vectors in F_p^2 meeting every line through the origin
always contains a nonempty subset summing to zero. Here we pick one
representative per line, look for such a subset, then run the full
survey over every canonical choice for small p.
"""

import numpy as np

from zerosum import FpVector2, canonicalize_covering_set
from zerosum.verifier import theorem1_witness, verify_theorem1

p = 5
rng = np.random.default_rng(1)

# one random nonzero multiple of a point on each of the p + 1 lines
lines = [(1, s) for s in range(p)] + [(0, 1)]
vectors = [FpVector2.of(x * t, y * t, p) for (x, y), t in zip(lines, rng.integers(1, p, size=p + 1))]
print("vectors:", [v.as_tuple() for v in vectors])

canon = canonicalize_covering_set(vectors, p)
print("canonical coefficients:", canon.coefficients)

w = theorem1_witness(vectors, p)
chosen = [vectors[i].as_tuple() for i in w.indices]
print("zero-sum subset:", chosen)
print("sum:", (sum(x for x, _ in chosen) % p, sum(y for _, y in chosen) % p))

# every one of the (p-1)^(p+1) canonical choices
for q in (3, 5):
    rep = verify_theorem1(q)
    print(f"p={q}: {rep.verified_cases}/{rep.total_cases} verified, witness sizes {rep.min_witness}..{rep.max_witness}")

rep = verify_theorem1(11, "sampled", trials=20000, seed=0)
print("p=11 sampled:", rep.as_dict()["witness_size"])
