"""The signed sum of a polynomial over the vertices of {0,1}^n.

Two independent routes are provided. ``signed_cube_sum_eval`` visits every
vertex; ``signed_cube_sum_coeff`` reads a single coefficient after
multilinear reduction, because every monomial that omits a variable
cancels against itself when that variable is toggled.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import DomainError, ResourceError
from .field import FpElement
from .poly import Monomial, Polynomial, _BITS, _MASK, multilinear_reduce

MAX_EVAL_VARS = 24
_ASSERT_VARS = 10


class Method(str, Enum):
    EVALUATION = "evaluation"
    COEFFICIENT_EXTRACTION = "coefficient-extraction"


@dataclass(frozen=True)
class CubeIntegralResult:
    value: FpElement
    method: Method
    n: int


def _support_masks(f: Polynomial) -> tuple[np.ndarray, np.ndarray]:
    """Per-term support bitmask (bit i set when x_{i+1} appears) and coefficient."""
    masks, coeffs = [], []
    for key, c in f._terms.items():
        m = 0
        for i in range(f.n):
            if (key >> (_BITS * i)) & _MASK:
                m |= 1 << i
        masks.append(m)
        coeffs.append(c)
    return np.array(masks, dtype=np.int64), np.array(coeffs, dtype=np.int64)


def cube_values(f: Polynomial) -> np.ndarray:
    """``f`` evaluated at every vertex; entry ``v`` is the value at bitmask ``v``."""
    if f.n > MAX_EVAL_VARS:
        raise ResourceError(f"{f.n} variables exceeds the evaluation cap {MAX_EVAL_VARS}")
    vertices = np.arange(1 << f.n, dtype=np.int64)
    values = np.zeros(1 << f.n, dtype=np.int64)
    masks, coeffs = _support_masks(f)
    # x^e at a 0/1 point is 1 exactly when every variable of the support is 1
    for m, c in zip(masks.tolist(), coeffs.tolist()):
        values[(vertices & m) == m] += c
    return values % f.p


def _parity(n: int) -> np.ndarray:
    v = np.arange(1 << n, dtype=np.int64)
    par = np.zeros_like(v)
    while v.any():
        par ^= v & 1
        v >>= 1
    return par


def signed_cube_sum_eval(f: Polynomial) -> FpElement:
    """Sum of (-1)^{x_1+...+x_n} f(x) over {0,1}^n, by visiting every vertex."""
    p = f.p
    values = cube_values(f)
    odd = _parity(f.n).astype(bool)
    # the sign -1 is the residue p-1
    total = int(values[~odd].sum()) + (p - 1) * int(values[odd].sum())
    return FpElement(total % p, p)


def signed_cube_sum_coeff(f: Polynomial) -> FpElement:
    """(-1)^n times the coefficient of x_1...x_n in the multilinear reduction of ``f``."""
    p = f.p
    c = multilinear_reduce(f).coefficient((1,) * f.n)
    sign = 1 if f.n % 2 == 0 else p - 1
    return FpElement(c * sign % p, p)


def cube_integral(f: Polynomial, method: Method = Method.EVALUATION) -> CubeIntegralResult:
    method = Method(method)
    if method is Method.EVALUATION:
        value = signed_cube_sum_eval(f)
    else:
        value = signed_cube_sum_coeff(f)
    return CubeIntegralResult(value, method, f.n)


def missing_variable_vanishes(m: Monomial, p: int) -> bool:
    """True iff the multilinear monomial ``m`` omits some variable.

    For ``n <= 10`` the claim that its signed cube sum is then 0 is checked
    by evaluation.
    """
    if not m.is_multilinear():
        raise DomainError(f"{m.render()} is not multilinear")
    omits = not m.has_full_support()
    if m.n <= _ASSERT_VARS:
        value = signed_cube_sum_eval(Polynomial.from_terms(m.n, p, {m.exponents: 1}))
        expected = 0 if omits else (1 if m.n % 2 == 0 else p - 1)
        if value.value != expected:
            raise AssertionError(f"signed cube sum of {m.render()} is {value.value}, expected {expected}")
    return omits


def nonvanishing_vertex(f: Polynomial) -> Optional[tuple[int, ...]]:
    """A point of {0,1}^n where ``f`` is nonzero, or None when ``f`` vanishes on the cube."""
    values = cube_values(f)
    hits = np.flatnonzero(values)
    if len(hits) == 0:
        return None
    v = int(hits[0])
    return tuple((v >> i) & 1 for i in range(f.n))
