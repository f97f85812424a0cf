import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zerosum import DomainError, ResourceError, VerificationFailure
from zerosum.engine import (
    Group,
    balandraud_bounds,
    balandraud_check,
    batch_find_zero_sum,
    cw_values,
    cw_witness_search,
    find_zero_sum_subset,
    indicator_point,
    is_zero_sum_free,
    olson_constant,
    sharpness_sequence,
    sigma_sets,
    subset_sum_table,
    theorem4_check,
    theorem4_exhaustive,
    theorem4_sampled,
)

from oracles import all_subset_sums, brute_olson, has_zero_sum, zero_sum_subsets


def resum(elements, indices, p):
    if isinstance(elements[0], tuple):
        return (sum(elements[i][0] for i in indices) % p, sum(elements[i][1] for i in indices) % p)
    return sum(elements[i] for i in indices) % p


# --- examples ---------------------------------------------------------------


def test_sigma_examples():
    sigma, star = sigma_sets([1, 2], Group.line(5))
    assert star == {1, 2, 3} and sigma == {0, 1, 2, 3}
    assert all_subset_sums([1, 2], 5) == (sigma, star)
    for group in (Group.line(7), Group.plane(3)):
        sigma, star = sigma_sets([], group)
        assert sigma == {group.decode(0)} and star == set()
    _, star = sigma_sets([(1, 1), (2, 2)], Group.plane(3))
    assert star == {(1, 1), (2, 2), (0, 0)}


def test_find_zero_sum_examples():
    a = [(1, 1), (1, 2), (1, 0), (0, 1)]
    # brute force over the 15 nonempty subsets
    assert zero_sum_subsets(a, 3) == [(0, 1, 2)]
    w = find_zero_sum_subset(a, Group.plane(3))
    assert w.indices == (0, 1, 2) and w.positions == [1, 2, 3]
    assert find_zero_sum_subset([1, 2], Group.line(5)) is None
    assert find_zero_sum_subset([(2, 3), (3, 2)], Group.plane(5)).indices == (0, 1)
    assert find_zero_sum_subset([4, 3], Group.line(7)).indices == (0, 1)


def test_zero_sum_free_examples():
    assert all_subset_sums([1, 2, 3], 7)[1] == {1, 2, 3, 4, 5, 6}
    assert is_zero_sum_free([1, 2, 3], Group.line(7))
    assert not is_zero_sum_free([1, 2], Group.line(3))
    assert is_zero_sum_free([(2, 1)], Group.plane(5))


def test_sets_reject_duplicates():
    with pytest.raises(DomainError):
        find_zero_sum_subset([1, 6], Group.line(5))


def test_table_witness_for_arbitrary_target():
    table = subset_sum_table([(1, 0), (0, 1), (1, 1)], Group.plane(5))
    idx = table.witness_for((2, 2))
    assert idx == (0, 1, 2)
    assert table.witness_for((3, 3)) is None
    assert table.reachable((1, 1))


# --- DP against brute force ---------------------------------------------------


@st.composite
def random_sets(draw):
    rank = draw(st.sampled_from([1, 2]))
    p = draw(st.sampled_from([3, 5, 7])) if rank == 1 else draw(st.sampled_from([3, 5]))
    universe = list(range(p)) if rank == 1 else [(x, y) for x in range(p) for y in range(p)]
    size = draw(st.integers(0, min(12, len(universe))))
    elems = draw(st.permutations(universe))[:size]
    return (Group.line(p) if rank == 1 else Group.plane(p)), elems


@settings(max_examples=200, deadline=None)
@given(random_sets())
def test_dp_matches_enumeration(case):
    group, elems = case
    p = group.p
    assert sigma_sets(elems, group) == all_subset_sums(elems, p, zero=group.decode(0))
    w = find_zero_sum_subset(elems, group)
    assert (w is None) == (not has_zero_sum(elems, p))
    if w is not None:
        assert resum(elems, w.indices, p) == group.decode(0)


@settings(max_examples=100, deadline=None)
@given(random_sets(), st.data())
def test_monotonicity(case, data):
    group, elems = case
    sub = [e for e in elems if data.draw(st.booleans())]
    assert sigma_sets(sub, group)[1] <= sigma_sets(elems, group)[1]
    if is_zero_sum_free(elems, group):
        assert is_zero_sum_free(sub, group)


def test_batch_matches_single():
    rng = np.random.default_rng(3)
    group = Group.plane(5)
    batch = rng.integers(0, 25, size=(300, 6))
    found, masks = batch_find_zero_sum(group, batch)
    for row, f, m in zip(batch, found, masks):
        seq = [group.decode(i) for i in row]
        assert bool(f) == has_zero_sum(seq, 5)
        if f:
            assert resum(seq, np.flatnonzero(m), 5) == (0, 0)


# --- Olson ---------------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_olson_line_matches_oracle(p):
    value, _ = brute_olson(range(1, p), p)
    res = olson_constant(Group.line(p))
    assert res.olson_constant == value
    assert len(res.extremal_set) == value - 1
    assert not has_zero_sum(res.extremal_set, p)


def test_olson_small_values():
    assert olson_constant(Group.line(3)).olson_constant == 2
    assert olson_constant(Group.line(3)).extremal_set == [1]
    assert olson_constant(Group.line(5)).olson_constant == 3


def test_olson_plane_3_matches_oracle():
    nonzero = [(x, y) for x in range(3) for y in range(3) if x or y]
    value, _ = brute_olson(nonzero, 3)
    res = olson_constant(Group.plane(3))
    assert res.olson_constant == value
    assert not has_zero_sum(res.extremal_set, 3)


def test_olson_gates():
    with pytest.raises(ResourceError):
        olson_constant(Group.line(37))
    with pytest.raises(ResourceError):
        olson_constant(Group.plane(7))


def test_olson_upper_bound_every_larger_set_has_zero_sum_p7():
    res = olson_constant(Group.line(7))
    for combo in itertools.combinations(range(1, 7), res.olson_constant):
        assert has_zero_sum(list(combo), 7)


# --- Balandraud -------------------------------------------------------------


def test_balandraud_examples():
    assert balandraud_bounds(2, 5) == (4, 3)
    assert len(sigma_sets([1, 2], Group.line(5))[1]) == 3
    assert balandraud_bounds(3, 7)[1] == 6
    assert len(sigma_sets([1, 2, 3], Group.line(7))[1]) == 6
    assert balandraud_bounds(0, 11) == (1, 0)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_balandraud_no_violations(p):
    rep = balandraud_check(p)
    assert rep.total_sets == 3 ** ((p - 1) // 2)
    assert rep.violations == []
    assert rep.tight_sigma_star >= 1
    assert rep.tight_examples


def test_balandraud_tight_example_at_5():
    rep = balandraud_check(5)
    assert any(ex["set"] == [1, 2] and ex["sigma_star"] == 3 for ex in balandraud_check(5, 10).tight_examples)
    assert rep.p == 5


def test_balandraud_gate():
    with pytest.raises(ResourceError):
        balandraud_check(17)


# --- sequences ---------------------------------------------------------------


def test_theorem4_examples():
    w = theorem4_check([(1, 0)] * 5, 3)
    assert len(w) == 3 and resum([(1, 0)] * 5, w.indices, 3) == (0, 0)
    assert theorem4_check([(1, 0), (0, 1)], 3) is None


@pytest.mark.parametrize("p", [3, 5, 7])
def test_sharpness(p):
    seq = sharpness_sequence(p)
    assert len(seq) == 2 * p - 2
    assert theorem4_check(seq, p) is None


def test_theorem4_raises_above_bound_when_absent(monkeypatch):
    from zerosum import engine

    monkeypatch.setattr(engine, "_zero_sum_witness", lambda seq, group: None)
    with pytest.raises(VerificationFailure):
        engine.theorem4_check([(1, 0)] * 5, 3)


def test_theorem4_exhaustive_p3():
    s = theorem4_exhaustive(3)
    assert s.total_cases == 1287 and s.with_witness == 1287 and s.without_witness == 0


def test_theorem4_length4_has_absences():
    s = theorem4_exhaustive(3, length=4)
    assert s.without_witness > 0
    assert not has_zero_sum([tuple(v) for v in s.first_absent], 3)


def test_theorem4_sampled_reproducible():
    a = theorem4_sampled(5, 500, seed=4)
    b = theorem4_sampled(5, 500, seed=4)
    assert a == b and a.without_witness == 0


# --- common zeros -------------------------------------------------------------


def _scan_common_zeros(vectors, p):
    n = len(vectors)
    for point in itertools.product(range(p), repeat=n):
        if any(point) and cw_values(vectors, p, point) == (0, 0):
            yield point


def test_cw_examples():
    vectors = [(1, 0)] * 5
    expected = next(_scan_common_zeros(vectors, 3))
    hit = cw_witness_search(vectors, 3)
    assert hit.point == expected
    assert len(hit.support) == 3
    assert cw_witness_search([(1, 0), (0, 1)], 3) is None
    assert list(_scan_common_zeros([(1, 0), (0, 1)], 3)) == []


def test_cw_gates():
    with pytest.raises(ResourceError):
        cw_witness_search([(1, 0)] * 13, 3)
    with pytest.raises(ResourceError):
        cw_witness_search([(1, 0)] * 3, 7)


@pytest.mark.parametrize("p", [3, 5])
def test_cw_support_and_indicator_duality(p):
    rng = random.Random(p)
    for _ in range(40):
        n = rng.randint(1, 6 if p == 3 else 5)
        vectors = [(rng.randrange(p), rng.randrange(p)) for _ in range(n)]
        hit = cw_witness_search(vectors, p)
        subsets = zero_sum_subsets(vectors, p)
        assert (hit is None) == (not subsets)
        if hit:
            assert resum(vectors, hit.support.indices, p) == (0, 0)
        for idx in subsets:
            assert cw_values(vectors, p, indicator_point(n, idx)) == (0, 0)


def test_cw_lexicographic_first_matches_scan():
    vectors = [(1, 2), (2, 1), (1, 1), (0, 3), (4, 4)]
    hit = cw_witness_search(vectors, 5)
    assert hit.point == next(_scan_common_zeros(vectors, 5))
