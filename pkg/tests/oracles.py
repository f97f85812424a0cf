"""Brute-force reference implementations used only by the tests.

None of these import the code paths they are compared against.
"""

import itertools
from math import prod

import numpy as np


# --- groups -----------------------------------------------------------------


def vadd(a, b, p):
    if isinstance(a, tuple):
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)
    return (a + b) % p


def zero_of(example):
    return (0, 0) if isinstance(example, tuple) else 0


def all_subset_sums(elements, p, zero=None):
    """Sigma and Sigma* by enumerating all 2^n subsets."""
    n = len(elements)
    if zero is None:
        zero = (0, 0) if elements and isinstance(elements[0], tuple) else 0
    sigma, star = {zero}, set()
    for mask in range(1, 1 << n):
        s = zero
        for i in range(n):
            if mask >> i & 1:
                s = vadd(s, elements[i], p)
        star.add(s)
        sigma.add(s)
    return sigma, star


def zero_sum_subsets(elements, p):
    """All nonempty zero-sum index subsets."""
    n = len(elements)
    zero = (0, 0) if elements and isinstance(elements[0], tuple) else 0
    out = []
    for mask in range(1, 1 << n):
        s = zero
        for i in range(n):
            if mask >> i & 1:
                s = vadd(s, elements[i], p)
        if s == zero:
            out.append(tuple(i for i in range(n) if mask >> i & 1))
    return out


def has_zero_sum(elements, p):
    return bool(zero_sum_subsets(elements, p))


def brute_olson(nonzero_elements, p):
    """Largest zero-sum-free subset by scanning subsets from the largest size down."""
    elems = list(nonzero_elements)
    for size in range(len(elems), 0, -1):
        for combo in itertools.combinations(elems, size):
            if not has_zero_sum(list(combo), p):
                return size + 1, list(combo)
    return 1, []


# --- polynomials -------------------------------------------------------------


def expand_by_words(coeffs, e, p):
    """(sum c_i x_i)^e by summing over all n^e words of variable choices."""
    n = len(coeffs)
    out = {}
    for word in itertools.product(range(n), repeat=e):
        exps = [0] * n
        for i in word:
            exps[i] += 1
        c = prod(coeffs[i] for i in word)
        key = tuple(exps)
        out[key] = out.get(key, 0) + c
    return {k: v % p for k, v in out.items() if v % p}


def elementary_symmetric_by_subsets(values, k, p):
    return sum(prod(c) for c in itertools.combinations(values, k)) % p


class Dense:
    """Dense coefficient array over F_p: entry [e_1, ..., e_n] is the coefficient of x^e."""

    def __init__(self, arr, p):
        self.arr = np.asarray(arr, dtype=np.int64) % p
        self.p = p

    @classmethod
    def from_terms(cls, terms, n, p, size):
        arr = np.zeros((size,) * n, dtype=np.int64)
        for exps, c in terms.items():
            arr[tuple(exps)] += c
        return cls(arr, p)

    def _pad(self, shape):
        out = np.zeros(shape, dtype=np.int64)
        out[tuple(slice(0, s) for s in self.arr.shape)] = self.arr
        return out

    def __add__(self, other):
        shape = tuple(max(a, b) for a, b in zip(self.arr.shape, other.arr.shape))
        return Dense(self._pad(shape) + other._pad(shape), self.p)

    def __neg__(self):
        return Dense(-self.arr, self.p)

    def __mul__(self, other):
        shape = tuple(a + b - 1 for a, b in zip(self.arr.shape, other.arr.shape))
        out = np.zeros(shape, dtype=np.int64)
        for idx in zip(*np.nonzero(self.arr)):
            c = self.arr[idx]
            sl = tuple(slice(i, i + s) for i, s in zip(idx, other.arr.shape))
            out[sl] = (out[sl] + c * other.arr) % self.p
        return Dense(out, self.p)

    def terms(self):
        return {tuple(int(i) for i in idx): int(self.arr[idx]) for idx in zip(*np.nonzero(self.arr))}


def evaluate_terms(terms, point, p):
    total = 0
    for exps, c in terms.items():
        total += c * prod(pow(x, e, p) for x, e in zip(point, exps))
    return total % p


def signed_cube_sum_by_points(terms, n, p):
    total = 0
    for point in itertools.product((0, 1), repeat=n):
        sign = -1 if sum(point) % 2 else 1
        total += sign * evaluate_terms(terms, point, p)
    return total % p
