"""
Zero-sum subsequences and common zeros
======================================

Any 2p - 1 vectors of F_p^2, repeats allowed, contain a zero-sum
subsequence, and 2p - 2 do not always. The zero-sum subsequences are
exactly the 0/1 common zeros of two degree p - 1 polynomials.
"""

from zerosum.engine import (
    cw_values,
    cw_witness_search,
    indicator_point,
    sharpness_sequence,
    theorem4_check,
    theorem4_exhaustive,
    theorem4_sampled,
)

s = theorem4_exhaustive(3)
print(f"all {s.total_cases} multisets of 5 vectors in F_3^2: {s.with_witness} with a zero-sum subsequence")

seq = sharpness_sequence(5)
print("length 8, no zero-sum subsequence:", seq, theorem4_check(seq, 5))
print("p=5 sampled:", theorem4_sampled(5, 2000, seed=3).as_dict())

vectors = [(1, 0)] * 5
hit = cw_witness_search(vectors, 3)
print("first nonzero common zero:", hit.point, "support", hit.support.positions)
print("indicator of (1,2,3):", cw_values(vectors, 3, indicator_point(5, (0, 1, 2))))
