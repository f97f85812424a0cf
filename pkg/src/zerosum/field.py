"""Prime-field residues, plane vectors and the line geometry of F_p^2."""

from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Union

from .errors import DomainError

MAX_PRIME = 61


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int, limit: int = MAX_PRIME) -> int:
    """Validate ``p`` as a supported odd prime and return it."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise DomainError(f"modulus must be an integer, got {p!r}")
    if p < 3 or not is_prime(p):
        raise DomainError(f"modulus must be an odd prime, got {p}")
    if p > limit:
        raise DomainError(f"modulus {p} exceeds the supported limit {limit}")
    return p


@lru_cache(maxsize=None)
def inverse_table(p: int) -> tuple:
    """``table[a]`` is the inverse of ``a`` mod ``p`` (entry 0 unused)."""
    table = [0] * p
    for a in range(1, p):
        table[a] = pow(a, p - 2, p)
    return tuple(table)


class PrimeField:
    """Context object for arithmetic modulo a fixed odd prime."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        self.p = check_prime(p)

    def __call__(self, value: int) -> "FpElement":
        return FpElement(value % self.p, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    @property
    def zero(self) -> "FpElement":
        return FpElement(0, self.p)

    @property
    def one(self) -> "FpElement":
        return FpElement(1, self.p)

    def elements(self) -> Iterator["FpElement"]:
        for v in range(self.p):
            yield FpElement(v, self.p)

    def units(self) -> Iterator["FpElement"]:
        for v in range(1, self.p):
            yield FpElement(v, self.p)

    def vector(self, x: int, y: int) -> "FpVector2":
        return FpVector2(self(x), self(y))


Scalar = Union["FpElement", int]


@dataclass(frozen=True, slots=True)
class FpElement:
    """A residue class modulo ``p``, always stored as its least nonnegative representative."""

    value: int
    p: int

    def __post_init__(self):
        # numpy integers would otherwise leak into results
        object.__setattr__(self, "value", operator.index(self.value))
        if not 0 <= self.value < self.p:
            raise DomainError(f"{self.value} is not a canonical residue mod {self.p}")

    def _coerce(self, other: Scalar) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise DomainError(f"cannot mix moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other: Scalar) -> "FpElement":
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElement((self.value + v) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "FpElement":
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElement((self.value - v) % self.p, self.p)

    def __rsub__(self, other: Scalar) -> "FpElement":
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElement((v - self.value) % self.p, self.p)

    def __mul__(self, other: Scalar) -> "FpElement":
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElement(self.value * v % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self) -> "FpElement":
        return FpElement(-self.value % self.p, self.p)

    def __pow__(self, exponent: int) -> "FpElement":
        if exponent < 0:
            raise DomainError("exponent must be nonnegative")
        return FpElement(pow(self.value, exponent, self.p), self.p)

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise DomainError(f"0 has no inverse mod {self.p}")
        return FpElement(inverse_table(self.p)[self.value], self.p)

    def __truediv__(self, other: Scalar) -> "FpElement":
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self * FpElement(v, self.p).inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, FpElement):
            return self.value == other.value and self.p == other.p
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"


# Function-style entry points mirroring the operator overloads.
def add(a: FpElement, b: FpElement) -> FpElement:
    return a + b


def sub(a: FpElement, b: FpElement) -> FpElement:
    return a - b


def mul(a: FpElement, b: FpElement) -> FpElement:
    return a * b


def power(a: FpElement, e: int) -> FpElement:
    return a**e


def inverse(a: FpElement) -> FpElement:
    return a.inverse()


@dataclass(frozen=True, slots=True)
class FpVector2:
    x: FpElement
    y: FpElement

    def __post_init__(self):
        if self.x.p != self.y.p:
            raise DomainError("vector components must share a modulus")

    @classmethod
    def of(cls, x: int, y: int, p: int) -> "FpVector2":
        return cls(FpElement(x % p, p), FpElement(y % p, p))

    @property
    def p(self) -> int:
        return self.x.p

    def __add__(self, other: "FpVector2") -> "FpVector2":
        return FpVector2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "FpVector2") -> "FpVector2":
        return FpVector2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "FpVector2":
        return FpVector2(-self.x, -self.y)

    def scale(self, t: Scalar) -> "FpVector2":
        return FpVector2(self.x * t, self.y * t)

    __rmul__ = scale

    def is_zero(self) -> bool:
        return self.x.value == 0 and self.y.value == 0

    def as_tuple(self) -> tuple[int, int]:
        return (self.x.value, self.y.value)

    def index(self) -> int:
        """Flat index ``x*p + y`` used for table addressing."""
        return self.x.value * self.p + self.y.value

    def __repr__(self) -> str:
        return f"({self.x.value},{self.y.value})"


@dataclass(frozen=True, slots=True)
class Direction:
    """A line through the origin: ``slope`` in ``[0, p)`` or ``None`` for the vertical line."""

    slope: Optional[int]
    p: int

    @classmethod
    def vertical(cls, p: int) -> "Direction":
        return cls(None, p)

    @property
    def is_vertical(self) -> bool:
        return self.slope is None

    def label(self) -> str:
        return "Vertical" if self.slope is None else f"Slope({self.slope})"

    def points(self) -> list[FpVector2]:
        """The p-1 nonzero vectors on this line, in increasing scalar order."""
        p = self.p
        if self.slope is None:
            return [FpVector2.of(0, t, p) for t in range(1, p)]
        return [FpVector2.of(t, t * self.slope, p) for t in range(1, p)]

    def __repr__(self) -> str:
        return self.label()


def all_directions(p: int) -> list[Direction]:
    """Slopes ``0..p-1`` followed by the vertical line."""
    check_prime(p)
    return [Direction(s, p) for s in range(p)] + [Direction.vertical(p)]


def direction_of(v: FpVector2) -> Direction:
    if v.is_zero():
        raise DomainError("the zero vector has no direction")
    if v.x.value == 0:
        return Direction.vertical(v.p)
    return Direction((v.y * v.x.inverse()).value, v.p)


def _check_vectors(vectors: Iterable[FpVector2], p: int) -> list[FpVector2]:
    out = list(vectors)
    for v in out:
        if v.p != p:
            raise DomainError(f"vector {v!r} has modulus {v.p}, expected {p}")
        if v.is_zero():
            raise DomainError("covering sets must not contain the zero vector")
    return out


def covers_all_directions(vectors: Iterable[FpVector2], p: int) -> bool:
    vecs = _check_vectors(vectors, check_prime(p))
    return len({direction_of(v) for v in vecs}) == p + 1


@dataclass(frozen=True)
class CanonicalSet:
    """Coefficients ``a_1..a_{p+1}`` of the normal form.

    Vector ``i`` (1-based) is ``(a_i, i*a_i)`` for ``i < p``, ``(a_p, 0)``
    and ``(0, a_{p+1})``; equivalently ``(a_i if i <= p else 0, i*a_i)``.
    """

    p: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "coefficients", tuple(operator.index(a) for a in self.coefficients))
        if len(self.coefficients) != self.p + 1:
            raise DomainError(f"expected {self.p + 1} coefficients, got {len(self.coefficients)}")
        if any(not 0 < a < self.p for a in self.coefficients):
            raise DomainError(f"coefficients must be nonzero residues mod {self.p}: {self.coefficients}")

    def vectors(self) -> list[FpVector2]:
        return canonical_vectors(self.coefficients, self.p)

    def as_tuples(self) -> list[tuple[int, int]]:
        return [v.as_tuple() for v in self.vectors()]


def canonical_vectors(coefficients, p: int) -> list[FpVector2]:
    out = []
    for i, a in enumerate(coefficients, start=1):
        out.append(FpVector2.of(a if i <= p else 0, i * a, p))
    return out


def _slot(d: Direction) -> int:
    """0-based position of a direction in the canonical coefficient array."""
    p = d.p
    if d.is_vertical:
        return p
    if d.slope == 0:
        return p - 1
    return d.slope - 1


def canonicalize_covering_set(vectors: Iterable[FpVector2], p: int) -> CanonicalSet:
    """Pick one representative per line and read off the canonical coefficients.

    The representative of each line is its member with the smallest ``x``,
    then the smallest ``y``. The resulting canonical vectors are a subset
    of the input, so any zero-sum subset they contain is one of the input.
    """
    vecs = _check_vectors(vectors, check_prime(p))
    best: dict[Direction, FpVector2] = {}
    for v in vecs:
        d = direction_of(v)
        cur = best.get(d)
        if cur is None or v.as_tuple() < cur.as_tuple():
            best[d] = v
    missing = [d for d in all_directions(p) if d not in best]
    if missing:
        raise DomainError("set does not cover direction(s): " + ", ".join(d.label() for d in missing))
    coeffs = [0] * (p + 1)
    for d, v in best.items():
        coeffs[_slot(d)] = v.y.value if d.is_vertical else v.x.value
    return CanonicalSet(p, tuple(coeffs))
