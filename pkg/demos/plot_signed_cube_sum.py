"""
Signed sums over the Boolean cube
=================================

Summing (-1)^(x_1 + ... + x_n) f(x) over {0,1}^n kills every monomial that
misses a variable, so the sum can be read off one coefficient of the
multilinear reduction. Both routes are compared on random polynomials.
"""

import numpy as np

from zerosum import Polynomial
from zerosum.integral import nonvanishing_vertex, signed_cube_sum_coeff, signed_cube_sum_eval
from zerosum.poly import elementary_symmetric, multilinear_reduce, parse, render

f = parse("3*x1^2*x2*x3 + x1*x2 + 4", 3, 5)
print("f =", render(f))
print("multilinear:", render(multilinear_reduce(f)))
print("by evaluation:", signed_cube_sum_eval(f).value, " by coefficient:", signed_cube_sum_coeff(f).value)
print("a vertex where f is nonzero:", nonvanishing_vertex(f))

rng = np.random.default_rng(0)
agree = 0
for _ in range(300):
    p = int(rng.choice([3, 5, 7, 11, 13]))
    n = int(rng.integers(1, 11))
    terms = {tuple(rng.multinomial(int(rng.integers(0, 7)), [1 / n] * n)): int(rng.integers(1, p)) for _ in range(6)}
    g = Polynomial.from_terms(n, p, terms)
    agree += signed_cube_sum_eval(g) == signed_cube_sum_coeff(g)
print(f"routes agree on {agree}/300 random polynomials")

# e_k(1..p) mod p: zero except e_0 = 1 and e_{p-1} = -1
for p in (5, 7):
    print(p, [elementary_symmetric(range(1, p + 1), k, p).value for k in range(p + 1)])
