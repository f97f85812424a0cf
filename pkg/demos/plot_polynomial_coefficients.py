"""
Full-support coefficients of a product of powers
================================================

The product (x_1 + ... + x_p)^(p-1) (x_1 + 2 x_2 + ... + x_{p+1})^(p-1)
has no monomial in which every variable appears. Small p can be expanded
outright; larger p only needs the full-support part, computed directly.
"""

import time

from zerosum.poly import render
from zerosum.verifier import lemma5_polynomial, verify_lemma5

f = lemma5_polynomial(3)
print("p=3, f =", render(f))

for p in (3, 5, 7):
    r = verify_lemma5(p, "expansion")
    print(f"p={p} expansion: {r.total_terms} terms, holds={r.holds}")

print("p=3 derivative route:", verify_lemma5(3, "derivative").holds)

for p in (11, 13):
    t0 = time.perf_counter()
    r = verify_lemma5(p, "targeted")
    print(f"p={p} targeted: {r.checked_monomials} monomials checked in {time.perf_counter() - t0:.2f}s, holds={r.holds}")
