"""Sparse multivariate polynomials over F_p.

Monomials are packed into a single Python int, eight bits per exponent
(variable ``i`` occupies bits ``8*i .. 8*i+7``), so multiplying two
monomials is one integer addition. Coefficients are plain ints in
``[1, p)``; zero coefficients are never stored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError, ResourceError
from .field import FpElement, check_prime, inverse_table

MAX_VARS = 16
MAX_EXPONENT = 255
_BITS = 8
_MASK = (1 << _BITS) - 1


def pack(exponents: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exponents):
        if not 0 <= e <= MAX_EXPONENT:
            raise ResourceError(f"exponent {e} outside [0, {MAX_EXPONENT}]")
        key |= e << (_BITS * i)
    return key


def unpack(key: int, n: int) -> tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(n))


def _key_degree(key: int) -> int:
    d = 0
    while key:
        d += key & _MASK
        key >>= _BITS
    return d


def _full_mask(n: int) -> int:
    """Packed key of x_1 x_2 ... x_n."""
    return sum(1 << (_BITS * i) for i in range(n))


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise DomainError("exponents must be nonnegative")

    @classmethod
    def of(cls, *exponents: int) -> "Monomial":
        return cls(tuple(exponents))

    @classmethod
    def product_of_all(cls, n: int) -> "Monomial":
        return cls((1,) * n)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def is_multilinear(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def has_full_support(self) -> bool:
        return all(e >= 1 for e in self.exponents)

    def sort_key(self):
        """Graded-lex key: larger total degree first, then lexicographically larger first."""
        return (-self.degree, tuple(-e for e in self.exponents))

    def render(self) -> str:
        parts = []
        for i, e in enumerate(self.exponents, start=1):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return self.render()


def _graded_lex(key_n):
    key, n = key_n
    exps = unpack(key, n)
    return (-sum(exps), tuple(-e for e in exps))


class Polynomial:
    """Immutable sparse polynomial in ``n`` variables with coefficients in F_p."""

    __slots__ = ("n", "p", "_terms", "_ordered")

    def __init__(self, n: int, p: int, packed_terms: Mapping[int, int] = None, *, _trusted=False):
        if not 0 <= n <= MAX_VARS:
            raise ResourceError(f"variable count {n} outside [0, {MAX_VARS}]")
        self.n = n
        self.p = p
        if _trusted:
            self._terms = packed_terms
        else:
            check_prime(p)
            terms = {}
            for key, c in (packed_terms or {}).items():
                c %= p
                if c:
                    terms[key] = c
            self._terms = terms
        self._ordered = None

    # -- construction -------------------------------------------------
    @classmethod
    def from_terms(cls, n: int, p: int, terms: Mapping) -> "Polynomial":
        """Build from ``{exponent tuple or Monomial: coefficient}``; like terms are summed."""
        packed: dict[int, int] = {}
        for m, c in terms.items():
            exps = m.exponents if isinstance(m, Monomial) else tuple(m)
            if len(exps) != n:
                raise DomainError(f"monomial {exps} does not have {n} exponents")
            key = pack(exps)
            packed[key] = packed.get(key, 0) + int(c)
        return cls(n, p, packed)

    @classmethod
    def zero(cls, n: int, p: int) -> "Polynomial":
        return cls(n, p, {})

    @classmethod
    def constant(cls, c: int, n: int, p: int) -> "Polynomial":
        return cls(n, p, {0: c})

    @classmethod
    def variable(cls, i: int, n: int, p: int) -> "Polynomial":
        """The variable ``x_i`` (1-based)."""
        if not 1 <= i <= n:
            raise DomainError(f"variable index {i} outside 1..{n}")
        return cls(n, p, {1 << (_BITS * (i - 1)): 1})

    # -- inspection ---------------------------------------------------
    def _items(self):
        if self._ordered is None:
            n = self.n
            self._ordered = sorted(self._terms.items(), key=lambda kv: _graded_lex((kv[0], n)))
        return self._ordered

    def terms(self) -> list[tuple[Monomial, FpElement]]:
        """Terms in graded-lex order."""
        return [(Monomial(unpack(k, self.n)), FpElement(c, self.p)) for k, c in self._items()]

    def term_dict(self) -> dict[tuple[int, ...], int]:
        return {unpack(k, self.n): c for k, c in self._items()}

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((_key_degree(k) for k in self._terms), default=-1)

    def max_exponent(self) -> int:
        best = 0
        for key in self._terms:
            while key:
                best = max(best, key & _MASK)
                key >>= _BITS
        return best

    def coefficient(self, exponents: Sequence[int]) -> int:
        if len(exponents) != self.n:
            raise DomainError(f"monomial needs {self.n} exponents, got {len(exponents)}")
        if any(e > MAX_EXPONENT for e in exponents):
            return 0
        return self._terms.get(pack(exponents), 0)

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.n:
            raise DomainError(f"point needs {self.n} coordinates")
        p = self.p
        pts = [v % p for v in point]
        total = 0
        for key, c in self._terms.items():
            term = c
            for i in range(self.n):
                e = (key >> (_BITS * i)) & _MASK
                if e:
                    term = term * pow(pts[i], e, p) % p
            total += term
        return total % p

    def _check_compatible(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise DomainError(f"expected a Polynomial, got {type(other).__name__}")
        if other.n != self.n or other.p != self.p:
            raise DomainError(
                f"incompatible polynomials: n={self.n}, p={self.p} vs n={other.n}, p={other.p}"
            )

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.constant(other, self.n, self.p)
        self._check_compatible(other)
        p = self.p
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = (out.get(k, 0) + c) % p
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Polynomial(self.n, p, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        p = self.p
        return Polynomial(self.n, p, {k: p - c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.constant(other, self.n, self.p)
        return self + (-other)

    def __rsub__(self, other: int) -> "Polynomial":
        return Polynomial.constant(other, self.n, self.p) - self

    def scale(self, c: int) -> "Polynomial":
        c = int(c) % self.p
        if c == 0:
            return Polynomial.zero(self.n, self.p)
        p = self.p
        return Polynomial(self.n, p, {k: v * c % p for k, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, FpElement)):
            return self.scale(int(other))
        return multiply(self, other)

    def __rmul__(self, other) -> "Polynomial":
        if isinstance(other, (int, FpElement)):
            return self.scale(int(other))
        return NotImplemented

    def __pow__(self, e: int) -> "Polynomial":
        result = Polynomial.constant(1, self.n, self.p)
        for _ in range(e):
            result = multiply(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.p == other.p and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, self.p, frozenset(self._terms.items())))

    def render(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Polynomial(n={self.n}, p={self.p}: {render(self)})"


@dataclass(frozen=True)
class LinearForm:
    """``c_1 x_1 + ... + c_n x_n`` with coefficients reduced mod ``p``."""

    coefficients: tuple[int, ...]
    p: int

    @classmethod
    def of(cls, coefficients: Iterable[int], p: int) -> "LinearForm":
        check_prime(p)
        return cls(tuple(int(c) % p for c in coefficients), p)

    @property
    def n(self) -> int:
        return len(self.coefficients)

    def to_polynomial(self) -> Polynomial:
        return Polynomial(
            self.n, self.p, {1 << (_BITS * i): c for i, c in enumerate(self.coefficients)}
        )

    def evaluate(self, point: Sequence[int]) -> int:
        return sum(c * x for c, x in zip(self.coefficients, point)) % self.p


@lru_cache(maxsize=None)
def _factorials(p: int) -> tuple:
    f = [1] * p
    for i in range(1, p):
        f[i] = f[i - 1] * i % p
    return tuple(f)


def binomial_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    fact = _factorials(p)
    inv = inverse_table(p)
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        result = result * fact[ni] * inv[fact[ki]] * inv[fact[ni - ki]] % p
        n //= p
        k //= p
    return result


def expand_power(form: LinearForm, e: int) -> Polynomial:
    """Multinomial expansion of ``form**e`` with coefficients reduced mod p.

    Multinomial coefficients are built as a product of binomials, each
    reduced by Lucas' theorem; a branch stops as soon as one binomial
    vanishes, so terms that are zero mod p are never generated.
    """
    p = form.p
    if e < 0:
        raise DomainError("exponent must be nonnegative")
    if e > 2 * (p - 1):
        raise ResourceError(f"exponent {e} exceeds the cap 2(p-1) = {2 * (p - 1)}")
    n = form.n
    active = [(i, c) for i, c in enumerate(form.coefficients) if c]
    if not active:
        return Polynomial.constant(1 if e == 0 else 0, n, p)
    powers = {c: [pow(c, k, p) for k in range(e + 1)] for _, c in active}
    out: dict[int, int] = {}
    last = len(active) - 1

    def rec(j: int, remaining: int, key: int, coeff: int):
        var, c = active[j]
        shift = _BITS * var
        pw = powers[c]
        if j == last:
            # binomial C(remaining, remaining) = 1
            v = coeff * pw[remaining] % p
            if v:
                out[key | (remaining << shift)] = v
            return
        for k in range(remaining + 1):
            b = binomial_mod(remaining, k, p)
            if b:
                rec(j + 1, remaining - k, key | (k << shift), coeff * b * pw[k] % p)

    rec(0, e, 0, 1)
    return Polynomial(n, p, out, _trusted=True)


def multiply(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check_compatible(b)
    if a.max_exponent() + b.max_exponent() > MAX_EXPONENT:
        raise ResourceError("product would overflow the 8-bit exponent width")
    p = a.p
    acc: dict[int, int] = {}
    get = acc.get
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    large_items = list(large._terms.items())
    for ka, ca in small._terms.items():
        for kb, cb in large_items:
            k = ka + kb
            acc[k] = get(k, 0) + ca * cb
    out = {}
    for k, v in acc.items():
        v %= p
        if v:
            out[k] = v
    return Polynomial(a.n, p, out, _trusted=True)


def coefficient_of(f: Polynomial, m: Monomial) -> FpElement:
    return FpElement(f.coefficient(m.exponents), f.p)


def full_support_monomials(f: Polynomial) -> list[Monomial]:
    """Stored monomials in which every variable has a positive exponent (graded-lex order)."""
    return [m for m, _ in f.terms() if m.has_full_support()]


def partial_derivative_all(f: Polynomial) -> Polynomial:
    """The mixed partial derivative taken once in every variable."""
    n, p = f.n, f.p
    full = _full_mask(n)
    out = {}
    for key, c in f._terms.items():
        v = c
        for i in range(n):
            e = (key >> (_BITS * i)) & _MASK
            if e == 0:
                v = 0
                break
            v = v * e % p
        if v:
            out[key - full] = v
    return Polynomial(n, p, out, _trusted=True)


def elementary_symmetric(values: Sequence, k: int, p: int = None) -> FpElement:
    """e_k(values) mod p, read off the coefficients of prod (t + v_i)."""
    vals = list(values)
    if p is None:
        if not vals or not isinstance(vals[0], FpElement):
            raise DomainError("pass p explicitly when values are plain integers")
        p = vals[0].p
    if not 0 <= k <= len(vals):
        raise DomainError(f"k={k} outside 0..{len(vals)}")
    # e[j] holds e_j of the values seen so far
    e = [1] + [0] * len(vals)
    for idx, v in enumerate(vals, start=1):
        v = int(v) % p
        for j in range(idx, 0, -1):
            e[j] = (e[j] + v * e[j - 1]) % p
    return FpElement(e[k], p)


def multilinear_reduce(f: Polynomial) -> Polynomial:
    """Collapse every positive exponent to 1; agrees with ``f`` on {0,1}^n."""
    n, p = f.n, f.p
    out: dict[int, int] = {}
    for key, c in f._terms.items():
        r = 0
        for i in range(n):
            if (key >> (_BITS * i)) & _MASK:
                r |= 1 << (_BITS * i)
        out[r] = (out.get(r, 0) + c) % p
    return Polynomial(n, p, {k: v for k, v in out.items() if v}, _trusted=True)


def render(f: Polynomial) -> str:
    """Stable text form: graded-lex terms joined by `` + ``, e.g. ``2*x1^2*x3 + x2``."""
    if f.is_zero():
        return "0"
    parts = []
    for m, c in f.terms():
        body = m.render()
        if body == "1":
            parts.append(str(c.value))
        elif c.value == 1:
            parts.append(body)
        else:
            parts.append(f"{c.value}*{body}")
    return " + ".join(parts)


_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse(text: str, n: int, p: int) -> Polynomial:
    """Inverse of :func:`render`; also accepts ``-`` between terms and repeated factors."""
    src = text.replace(" ", "")
    if not src:
        raise DomainError("empty polynomial text")
    src = src.replace("-", "+-")
    terms: dict[tuple[int, ...], int] = {}
    for raw in src.split("+"):
        if raw == "":
            continue
        sign = 1
        while raw.startswith("-"):
            sign, raw = -sign, raw[1:]
        coeff = sign
        exps = [0] * n
        for factor in raw.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            match = _FACTOR.match(factor)
            if not match:
                raise DomainError(f"cannot parse factor {factor!r} in {text!r}")
            i = int(match.group(1))
            if not 1 <= i <= n:
                raise DomainError(f"variable x{i} outside x1..x{n}")
            exps[i - 1] += int(match.group(2) or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return Polynomial.from_terms(n, p, terms)


def full_support_coefficients_of_product(
    first: LinearForm, e1: int, second: LinearForm, e2: int
) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of every full-support monomial of ``first**e1 * second**e2``.

    Nothing outside the full-support stratum is expanded. For an exponent
    vector ``c`` with all ``0 < c_i < p``,

        [x^c] = e1! e2! / prod(c_i!) * [t^e1] prod_i (alpha_i t + beta_i)^c_i,

    and the univariate products are built one variable at a time across all
    prefixes at once. Returns ``(exponents, coefficients)`` with shapes
    ``(m, n)`` and ``(m,)``; rows follow lexicographic order of ``c``.
    """
    if first.p != second.p or first.n != second.n:
        raise DomainError("linear forms must share n and p")
    p, n = first.p, first.n
    if e1 >= p or e2 >= p:
        raise ResourceError("targeted extraction needs both exponents below p")
    total = e1 + e2
    if total < n:
        return np.zeros((0, n), dtype=np.uint8), np.zeros(0, dtype=np.int64)
    max_c = total - (n - 1)
    if max_c >= p:
        raise ResourceError("a full-support exponent could reach p; use full expansion")
    width = e1 + 1

    # shift[i][k]: (width x width) matrix multiplying a truncated series by (alpha t + beta)^k
    shift = []
    for alpha, beta in zip(first.coefficients, second.coefficients):
        mats = [None]
        for k in range(1, max_c + 1):
            series = [binomial_mod(k, j, p) * pow(alpha, j, p) * pow(beta, k - j, p) % p for j in range(k + 1)]
            mat = np.zeros((width, width), dtype=np.int64)
            for src in range(width):
                for j, s in enumerate(series):
                    if src + j < width:
                        mat[src, src + j] = s
            mats.append(mat)
        shift.append(mats)

    series = np.zeros((1, width), dtype=np.int64)
    series[0, 0] = 1
    remaining = np.array([total], dtype=np.int64)
    exps = np.zeros((1, 0), dtype=np.uint8)
    for i in range(n - 1):
        left = n - i - 1  # variables after this one, each needing exponent >= 1
        new_series, new_rem, new_exps = [], [], []
        for k in range(1, max_c + 1):
            sel = remaining - k >= left
            if not sel.any():
                continue
            new_series.append(series[sel] @ shift[i][k] % p)
            new_rem.append(remaining[sel] - k)
            col = np.full((int(sel.sum()), 1), k, dtype=np.uint8)
            new_exps.append(np.hstack([exps[sel], col]))
        series = np.concatenate(new_series)
        remaining = np.concatenate(new_rem)
        exps = np.concatenate(new_exps)
    # last variable takes whatever degree remains; only the t^e1 entry is needed
    top = np.zeros(len(series), dtype=np.int64)
    for k in range(1, max_c + 1):
        sel = remaining == k
        if sel.any():
            top[sel] = series[sel] @ shift[n - 1][k][:, e1] % p
    exps = np.hstack([exps, remaining.astype(np.uint8)[:, None]])
    order = np.lexsort(exps.T[::-1])
    exps, top = exps[order], top[order]

    fact = _factorials(p)
    inv = np.array(inverse_table(p), dtype=np.int64)
    inv_fact = inv[np.array(fact, dtype=np.int64)]
    scale = np.ones(len(top), dtype=np.int64)
    for i in range(n):
        scale = scale * inv_fact[exps[:, i].astype(np.int64)] % p
    scale = scale * (fact[e1] * fact[e2] % p) % p
    return exps, top * scale % p
