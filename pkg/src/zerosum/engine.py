"""Subset-sum machinery over F_p and F_p^2.

Group elements are addressed by a flat index: ``v`` for F_p and
``x*p + y`` for F_p^2. The dynamic program keeps, for every group element,
whether some nonempty subset of the processed prefix sums to it, together
with the first event that reached it. Following those first-reach links
backwards always visits strictly earlier positions, which is what makes
witness reconstruction valid.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError, ResourceError, VerificationFailure
from .field import FpElement, FpVector2, check_prime

OLSON_LINE_MAX_P = 31
OLSON_PLANE_MAX_P = 5
BALANDRAUD_MAX_P = 13
CW_MAX_VARS = 12
CW_MAX_P = 5
_FROM_EMPTY = -1


@dataclass(frozen=True)
class Group:
    """F_p (``rank=1``) or F_p^2 (``rank=2``)."""

    p: int
    rank: int

    @classmethod
    def line(cls, p: int) -> "Group":
        return cls(check_prime(p), 1)

    @classmethod
    def plane(cls, p: int) -> "Group":
        return cls(check_prime(p), 2)

    @classmethod
    def named(cls, name: str, p: int) -> "Group":
        key = name.lower().replace("^", "").replace("_", "")
        if key in ("fp", "line", "1"):
            return cls.line(p)
        if key in ("fp2", "plane", "2"):
            return cls.plane(p)
        raise DomainError(f"unknown group {name!r}; expected Fp or Fp2")

    @property
    def name(self) -> str:
        return "Fp" if self.rank == 1 else "Fp2"

    @property
    def order(self) -> int:
        return self.p**self.rank

    def encode(self, element) -> int:
        p = self.p
        if self.rank == 1:
            if isinstance(element, FpElement):
                if element.p != p:
                    raise DomainError(f"element mod {element.p} in a group mod {p}")
                return element.value
            if isinstance(element, (int, np.integer)):
                return int(element) % p
            raise DomainError(f"{element!r} is not an element of F_{p}")
        if isinstance(element, FpVector2):
            if element.p != p:
                raise DomainError(f"vector mod {element.p} in a group mod {p}")
            return element.index()
        if isinstance(element, (tuple, list)) and len(element) == 2:
            return (int(element[0]) % p) * p + int(element[1]) % p
        raise DomainError(f"{element!r} is not an element of F_{p}^2")

    def decode(self, index: int):
        """Plain ints for F_p, ``(x, y)`` tuples for F_p^2."""
        index = int(index)
        if self.rank == 1:
            return index
        return divmod(index, self.p)

    def encode_all(self, elements: Iterable) -> list[int]:
        return [self.encode(e) for e in elements]

    def coordinates(self, index: int) -> tuple[int, ...]:
        return (index,) if self.rank == 1 else divmod(index, self.p)

    def negate_index(self, index: int) -> int:
        return int(_tables(self.p, self.rank)[2][index])


@lru_cache(maxsize=None)
def _tables(p: int, rank: int):
    """(add, sub, neg) index tables; ``sub[v, s]`` is the index of ``s - v``."""
    n = p**rank
    idx = np.arange(n)
    if rank == 1:
        coords = idx[:, None]
    else:
        coords = np.stack([idx // p, idx % p], axis=1)

    def enc(c):
        return c[..., 0] if rank == 1 else c[..., 0] * p + c[..., 1]

    add = enc((coords[:, None, :] + coords[None, :, :]) % p).astype(np.int64)
    sub = enc((coords[None, :, :] - coords[:, None, :]) % p).astype(np.int64)
    neg = enc((-coords) % p).astype(np.int64)
    for t in (add, sub, neg):
        t.setflags(write=False)
    return add, sub, neg


def group_for(elements: Sequence, p: int) -> Group:
    """Infer F_p or F_p^2 from the element type."""
    for e in elements:
        if isinstance(e, (FpVector2, tuple, list)):
            return Group.plane(p)
        return Group.line(p)
    return Group.line(p)


# ---------------------------------------------------------------------------
# DP core


@dataclass
class BatchTable:
    """Nonempty-subset reachability for a batch of equal-length inputs."""

    group: Group
    elements: np.ndarray  # (B, m) element indices
    reach: np.ndarray  # (B, N) bool; reach[b, s]: s is a nonempty subset sum
    pred_pos: np.ndarray  # (B, N) position that first reached s
    pred_prev: np.ndarray  # (B, N) sum before adding that position, -1 for the singleton


def batch_subset_sums(group: Group, elements: np.ndarray) -> BatchTable:
    elements = np.asarray(elements, dtype=np.int64)
    if elements.ndim != 2:
        raise DomainError("batch input must be two-dimensional (cases x positions)")
    _, sub, _ = _tables(group.p, group.rank)
    batch, m = elements.shape
    n = group.order
    reach = np.zeros((batch, n), dtype=bool)
    pred_pos = np.full((batch, n), -1, dtype=np.int16)
    pred_prev = np.full((batch, n), _FROM_EMPTY, dtype=np.int16)
    rows = np.arange(batch)
    for j in range(m):
        v = elements[:, j]
        prev = sub[v]  # prev[b, s] = s - v_b
        cand = np.take_along_axis(reach, prev, axis=1)
        cand[rows, v] = True
        new = cand & ~reach
        if not new.any():
            continue
        pred_pos[new] = j
        prev = prev.copy()
        prev[rows, v] = _FROM_EMPTY
        pred_prev[new] = prev[new]
        reach |= new
    return BatchTable(group, elements, reach, pred_pos, pred_prev)


def batch_witness_masks(table: BatchTable, target: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Follow first-reach links from ``target``; returns ``(found, masks)``."""
    batch, m = table.elements.shape
    found = table.reach[:, target].copy()
    masks = np.zeros((batch, m), dtype=bool)
    rows = np.flatnonzero(found)
    cur = np.full(len(rows), target, dtype=np.int64)
    for _ in range(m):
        if len(rows) == 0:
            break
        pos = table.pred_pos[rows, cur].astype(np.int64)
        masks[rows, pos] = True
        cur = table.pred_prev[rows, cur].astype(np.int64)
        keep = cur != _FROM_EMPTY
        rows, cur = rows[keep], cur[keep]
    if len(rows):
        raise VerificationFailure("predecessor chain did not terminate")
    return found, masks


def batch_mask_sums(group: Group, elements: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """Group index of the sum of the masked positions, per case."""
    p = group.p
    if group.rank == 1:
        return (np.where(masks, elements, 0).sum(axis=1)) % p
    xs = np.where(masks, elements // p, 0).sum(axis=1) % p
    ys = np.where(masks, elements % p, 0).sum(axis=1) % p
    return xs * p + ys


def batch_find_zero_sum(group: Group, elements: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Zero-sum witness masks for each row; every returned mask is re-summed."""
    elements = np.asarray(elements, dtype=np.int64)
    table = batch_subset_sums(group, elements)
    found, masks = batch_witness_masks(table, 0)
    sums = batch_mask_sums(group, elements, masks)
    bad = found & ((sums != 0) | ~masks.any(axis=1))
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        raise VerificationFailure(f"reconstructed witness does not sum to zero for row {row}")
    return found, masks


# ---------------------------------------------------------------------------
# single-input API


@dataclass(frozen=True)
class Witness:
    """0-based positions of a nonempty zero-sum subset (or subsequence)."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if not self.indices:
            raise DomainError("a witness must be nonempty")

    @property
    def positions(self) -> list[int]:
        """1-based positions, as used in reports."""
        return [i + 1 for i in self.indices]

    def __len__(self) -> int:
        return len(self.indices)


@dataclass
class SubsetSumTable:
    group: Group
    elements: tuple[int, ...]
    _batch: BatchTable = field(repr=False)

    @property
    def sigma_star(self) -> set:
        return {self.group.decode(i) for i in np.flatnonzero(self._batch.reach[0])}

    @property
    def sigma(self) -> set:
        return self.sigma_star | {self.group.decode(0)}

    def reachable(self, element) -> bool:
        return bool(self._batch.reach[0, self.group.encode(element)])

    def witness_for(self, element) -> Optional[tuple[int, ...]]:
        """Positions of a nonempty subset summing to ``element``, if any."""
        target = self.group.encode(element)
        found, masks = batch_witness_masks(self._batch, target)
        if not found[0]:
            return None
        idx = tuple(int(i) for i in np.flatnonzero(masks[0]))
        if _sum_indices(self.group, [self.elements[i] for i in idx]) != target:
            raise VerificationFailure(f"witness {idx} does not sum to {element!r}")
        return idx


def _sum_indices(group: Group, indices: Iterable[int]) -> int:
    add = _tables(group.p, group.rank)[0]
    total = 0
    for i in indices:
        total = int(add[total, i])
    return total


def subset_sum_table(elements: Sequence, group: Group) -> SubsetSumTable:
    enc = group.encode_all(elements)
    batch = batch_subset_sums(group, np.array([enc], dtype=np.int64).reshape(1, len(enc)))
    return SubsetSumTable(group, tuple(enc), batch)


def _require_distinct(enc: Sequence[int]):
    if len(set(enc)) != len(enc):
        raise DomainError("set input contains duplicate elements")


def sigma_sets(elements: Sequence, group: Group) -> tuple[set, set]:
    """``(Sigma(A), Sigma*(A))``: all subset sums, and all nonempty subset sums."""
    _require_distinct(group.encode_all(elements))
    table = subset_sum_table(elements, group)
    return table.sigma, table.sigma_star


def _zero_sum_witness(elements: Sequence, group: Group) -> Optional[Witness]:
    enc = group.encode_all(elements)
    if not enc:
        return None
    found, masks = batch_find_zero_sum(group, np.array([enc], dtype=np.int64))
    if not found[0]:
        return None
    return Witness(tuple(int(i) for i in np.flatnonzero(masks[0])))


def find_zero_sum_subset(elements: Sequence, group: Group) -> Optional[Witness]:
    """A nonempty zero-sum subset of a duplicate-free input, or None if it is zero-sum-free."""
    _require_distinct(group.encode_all(elements))
    return _zero_sum_witness(elements, group)


def is_zero_sum_free(elements: Sequence, group: Group) -> bool:
    return find_zero_sum_subset(elements, group) is None


# ---------------------------------------------------------------------------
# Olson constant


@dataclass
class OlsonResult:
    p: int
    group: str
    olson_constant: int
    extremal_set: list
    nodes_visited: int = 0

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "group": self.group,
            "olson_constant": self.olson_constant,
            "extremal_set": [list(e) if isinstance(e, tuple) else e for e in self.extremal_set],
            "nodes_visited": self.nodes_visited,
        }


def _translator(group: Group):
    """Function mapping a bitset S (bit i = element i) to S + v."""
    p, n = group.p, group.order
    full = (1 << n) - 1
    if group.rank == 1:

        def translate(bits: int, v: int) -> int:
            return ((bits << v) | (bits >> (p - v))) & full

        return translate

    row_low = [sum(1 << (r * p + y) for r in range(p) for y in range(dy)) for dy in range(p)]

    def translate(bits: int, v: int) -> int:
        dx, dy = divmod(v, p)
        if dy:
            bits = ((bits << dy) & ~row_low[dy] & full) | ((bits >> (p - dy)) & row_low[dy])
        if dx:
            s = dx * p
            bits = ((bits << s) | (bits >> (n - s))) & full
        return bits

    return translate


def olson_constant(group: Group) -> OlsonResult:
    """Exact Olson constant by branch and bound over zero-sum-free sets.

    Any nonzero element can be moved to index 1 by an automorphism (a unit
    scalar on F_p, an invertible matrix on F_p^2), and automorphisms
    preserve zero-sum-freeness, so the search fixes index 1 as a member.
    A branch is cut when its partial subset-sum set contains 0, or when
    even the best completion cannot beat the incumbent: each added element
    enlarges the nonempty subset-sum set by at least one, and that set
    never contains 0.
    """
    p = group.p
    limit = OLSON_LINE_MAX_P if group.rank == 1 else OLSON_PLANE_MAX_P
    if p > limit:
        raise ResourceError(f"Olson search for {group.name} is gated at p <= {limit}")
    n = group.order
    translate = _translator(group)
    neg = _tables(p, group.rank)[2]
    best: list[int] = [1]
    visited = 0

    def dfs(chosen: list[int], sums: int, candidates: list[int]):
        nonlocal best, visited
        visited += 1
        if len(chosen) > len(best):
            best = list(chosen)
        # -v in Sigma* means adding v would close a zero sum
        live = [v for v in candidates if not (sums >> int(neg[v])) & 1]
        room = n - 1 - bin(sums).count("1")
        if len(chosen) + min(len(live), room) <= len(best):
            return
        for i, v in enumerate(live):
            if len(chosen) + min(len(live) - i, room) <= len(best):
                return
            new = sums | translate(sums, v) | (1 << v)
            chosen.append(v)
            dfs(chosen, new, live[i + 1 :])
            chosen.pop()

    dfs([1], 1 << 1, list(range(2, n)))
    extremal = [group.decode(i) for i in best]
    if not is_zero_sum_free(extremal, group):
        raise VerificationFailure(f"extremal set {extremal} is not zero-sum-free")
    return OlsonResult(p, group.name, len(best) + 1, extremal, visited)


# ---------------------------------------------------------------------------
# Balandraud bounds


@dataclass
class BalandraudReport:
    p: int
    total_sets: int
    violations: list = field(default_factory=list)
    tight_sigma: int = 0
    tight_sigma_star: int = 0
    tight_examples: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "total_sets": self.total_sets,
            "violations": self.violations,
            "tight_sigma": self.tight_sigma,
            "tight_sigma_star": self.tight_sigma_star,
            "tight_examples": self.tight_examples,
        }


def balandraud_bounds(d: int, p: int) -> tuple[int, int]:
    """Lower bounds ``(|Sigma|, |Sigma*|)`` for a d-set with A and -A disjoint."""
    return min(p, d * (d + 1) // 2 + 1), min(p, d * (d + 1) // 2)


def _line_sigma_star_bits(values: Sequence[int], p: int) -> int:
    full = (1 << p) - 1
    bits = 0
    for v in values:
        bits |= (((bits << v) | (bits >> (p - v))) & full) | (1 << v)
    return bits


def balandraud_check(p: int, max_examples: int = 5) -> BalandraudReport:
    """Check both bounds on every A in F_p minus 0 with A disjoint from -A.

    Each pair {x, -x} contributes nothing, x, or -x, giving 3^((p-1)/2) sets.
    Tightness counters skip the empty set, where both bounds hold trivially.
    """
    check_prime(p)
    if p > BALANDRAUD_MAX_P:
        raise ResourceError(f"exhaustive Balandraud check is gated at p <= {BALANDRAUD_MAX_P}")
    half = (p - 1) // 2
    report = BalandraudReport(p, 3**half)
    for choice in itertools.product((0, 1, -1), repeat=half):
        a = [c * (x + 1) % p for x, c in enumerate(choice) if c]
        d = len(a)
        star = _line_sigma_star_bits(a, p)
        n_star = bin(star).count("1")
        n_sigma = bin(star | 1).count("1")
        lo_sigma, lo_star = balandraud_bounds(d, p)
        if n_sigma < lo_sigma or n_star < lo_star:
            report.violations.append({"set": sorted(a), "sigma": n_sigma, "sigma_star": n_star})
        if d == 0:
            continue
        tight = False
        if n_sigma == lo_sigma:
            report.tight_sigma += 1
            tight = True
        if n_star == lo_star:
            report.tight_sigma_star += 1
            tight = True
        if tight and len(report.tight_examples) < max_examples:
            report.tight_examples.append(
                {"set": sorted(a), "d": d, "sigma": n_sigma, "sigma_star": n_star}
            )
    return report


# ---------------------------------------------------------------------------
# sequences in F_p^2


def theorem4_check(sequence: Sequence, p: int) -> Optional[Witness]:
    """Zero-sum subsequence of a sequence in F_p^2 (repetition allowed).

    Raises VerificationFailure if none exists although the length is at
    least 2p - 1.
    """
    group = Group.plane(p)
    witness = _zero_sum_witness(sequence, group)
    if witness is None and len(sequence) >= 2 * p - 1:
        raise VerificationFailure(f"no zero-sum subsequence in a length-{len(sequence)} sequence: {list(sequence)}")
    return witness


@dataclass
class SequenceSurvey:
    p: int
    length: int
    mode: str
    total_cases: int
    with_witness: int
    without_witness: int
    seed: Optional[int] = None
    min_witness: Optional[int] = None
    max_witness: Optional[int] = None
    first_absent: Optional[list] = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _survey_sequences(group: Group, batch: np.ndarray, survey: SequenceSurvey):
    found, masks = batch_find_zero_sum(group, batch)
    survey.with_witness += int(found.sum())
    survey.without_witness += int((~found).sum())
    if found.any():
        sizes = masks[found].sum(axis=1)
        lo, hi = int(sizes.min()), int(sizes.max())
        survey.min_witness = lo if survey.min_witness is None else min(lo, survey.min_witness)
        survey.max_witness = hi if survey.max_witness is None else max(hi, survey.max_witness)
    if survey.first_absent is None and (~found).any():
        row = batch[int(np.flatnonzero(~found)[0])]
        survey.first_absent = [list(group.decode(i)) for i in row]


def theorem4_exhaustive(p: int, length: Optional[int] = None, chunk: int = 1 << 14) -> SequenceSurvey:
    """Every multiset of the given length over F_p^2 (default 2p - 1)."""
    group = Group.plane(p)
    length = 2 * p - 1 if length is None else length
    total = math.comb(group.order + length - 1, length)
    if total > 5_000_000:
        raise ResourceError(f"{total} multisets exceeds the exhaustive gate")
    survey = SequenceSurvey(p, length, "exhaustive", total, 0, 0)
    combos = itertools.combinations_with_replacement(range(group.order), length)
    while True:
        block = list(itertools.islice(combos, chunk))
        if not block:
            break
        _survey_sequences(group, np.array(block, dtype=np.int64).reshape(len(block), length), survey)
    return survey


def theorem4_sampled(p: int, trials: int, seed: int = 0, length: Optional[int] = None) -> SequenceSurvey:
    """Uniform random sequences over F_p^2 from a seeded generator."""
    group = Group.plane(p)
    length = 2 * p - 1 if length is None else length
    rng = np.random.default_rng(seed)
    survey = SequenceSurvey(p, length, "sampled", trials, 0, 0, seed=seed)
    done = 0
    while done < trials:
        size = min(1 << 14, trials - done)
        _survey_sequences(group, rng.integers(0, group.order, size=(size, length)), survey)
        done += size
    return survey


def sharpness_sequence(p: int) -> list[tuple[int, int]]:
    """p-1 copies each of (1,0) and (0,1): length 2p-2 with no zero-sum subsequence."""
    return [(1, 0)] * (p - 1) + [(0, 1)] * (p - 1)


# ---------------------------------------------------------------------------
# common zeros of sum_i a_ij x_i^(p-1)


@dataclass(frozen=True)
class CommonZero:
    point: tuple[int, ...]
    support: Witness


def cw_witness_search(vectors: Sequence, p: int) -> Optional[CommonZero]:
    """First nonzero common zero of f_j(x) = sum_i a_ij x_i^(p-1), j = 1, 2, in lexicographic order.

    ``vectors[i] = (a_i1, a_i2)``. The scan covers all of F_p^n; the
    support of the returned point is checked to be a zero-sum subsequence.
    """
    check_prime(p)
    group = Group.plane(p)
    n = len(vectors)
    if n > CW_MAX_VARS or p > CW_MAX_P:
        raise ResourceError(f"common-zero scan is gated at n <= {CW_MAX_VARS}, p <= {CW_MAX_P}")
    if n == 0:
        return None
    coords = np.array([group.coordinates(group.encode(v)) for v in vectors], dtype=np.int64)
    power = np.array([pow(x, p - 1, p) for x in range(p)], dtype=np.int64)

    low = n
    while p**low > 1 << 18:
        low -= 1
    high = n - low
    digits = np.array(list(itertools.product(range(p), repeat=low)), dtype=np.int64).reshape(-1, low)
    low_vals = power[digits]  # (p^low, low)
    f_low = low_vals @ coords[high:] % p  # (p^low, 2)
    for prefix in itertools.product(range(p), repeat=high):
        h = power[np.array(prefix, dtype=np.int64)] @ coords[:high] % p if high else np.zeros(2, dtype=np.int64)
        ok = ((f_low + h) % p == 0).all(axis=1)
        if not any(prefix):
            ok[0] = False
        hits = np.flatnonzero(ok)
        if len(hits):
            point = tuple(prefix) + tuple(int(x) for x in digits[hits[0]])
            support = tuple(i for i, a in enumerate(point) if a)
            if _sum_indices(group, [group.encode(vectors[i]) for i in support]) != 0:
                raise VerificationFailure(f"support {support} of common zero {point} is not a zero sum")
            return CommonZero(point, Witness(support))
    return None


def indicator_point(n: int, indices: Iterable[int]) -> tuple[int, ...]:
    chosen = set(indices)
    return tuple(1 if i in chosen else 0 for i in range(n))


def cw_values(vectors: Sequence, p: int, point: Sequence[int]) -> tuple[int, int]:
    """``(f_1(point), f_2(point))``."""
    group = Group.plane(p)
    f1 = f2 = 0
    for v, x in zip(vectors, point):
        a1, a2 = group.coordinates(group.encode(v))
        w = pow(int(x), p - 1, p)
        f1 += a1 * w
        f2 += a2 * w
    return f1 % p, f2 % p
