import itertools
import random

import pytest

from zerosum import DomainError, ResourceError
from zerosum.field import FpVector2
from zerosum.integral import signed_cube_sum_eval
from zerosum.poly import elementary_symmetric, full_support_monomials
from zerosum.verifier import (
    build_P,
    build_Q,
    canonical_tuples,
    grt_report,
    lemma5_forms,
    proof_trace,
    proof_trace_for,
    proof_trace_survey,
    sampled_tuples,
    signed_sum_P_gray,
    signed_sum_Q_targeted,
    theorem1_witness,
    trace_forms,
    verify_lemma5,
    verify_theorem1,
)

from oracles import zero_sum_subsets


def canonical(a, p):
    return [((c if i <= p else 0) % p, (i * c) % p) for i, c in enumerate(a, start=1)]


def selects_zero_sum(a, p, vertex):
    vs = canonical(a, p)
    sx = sum(v[0] for v, x in zip(vs, vertex) if x) % p
    sy = sum(v[1] for v, x in zip(vs, vertex) if x) % p
    return sx == 0 and sy == 0


# --- lemma --------------------------------------------------------------------


def test_lemma_forms_drop_the_p_times_x_p_term():
    first, second = lemma5_forms(5)
    assert first.coefficients == (1, 1, 1, 1, 1, 0)
    assert second.coefficients == (1, 2, 3, 4, 0, 1)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_lemma_expansion(p):
    r = verify_lemma5(p, "expansion")
    assert r.holds and r.nonzero_full_support == [] and r.total_terms > 0


@pytest.mark.parametrize("p", [3, 5])
def test_lemma_derivative(p):
    assert verify_lemma5(p, "derivative").holds


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_lemma_targeted(p):
    r = verify_lemma5(p, "targeted")
    assert r.holds and r.checked_monomials > 0


def test_lemma_gates():
    with pytest.raises(ResourceError):
        verify_lemma5(11, "expansion")
    with pytest.raises(ResourceError):
        verify_lemma5(17, "targeted")
    with pytest.raises(DomainError):
        verify_lemma5(5, "guess")


def test_lemma_detects_a_surviving_monomial():
    # (x1 + x2)^2 (x1 + x2 + x3 + x4)^2 has x1 x2 x3 x4 with coefficient 4
    from zerosum.poly import LinearForm, full_support_coefficients_of_product

    first, second = LinearForm.of([1, 1, 0, 0], 3), LinearForm.of([1, 1, 1, 1], 3)
    exps, coeffs = full_support_coefficients_of_product(first, 2, second, 2)
    found = {tuple(int(v) for v in e): int(c) for e, c in zip(exps, coeffs) if c}
    assert found == {(1, 1, 1, 1): 1}


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_elementary_symmetric_vanishing(p):
    vals = list(range(1, p + 1))
    for k in range(1, p - 1):
        assert elementary_symmetric(vals, k, p).value == 0
    assert elementary_symmetric(vals, p - 1, p).value == p - 1
    assert elementary_symmetric(vals, p, p).value == 0


# --- P and Q --------------------------------------------------------------------


def test_P_examples():
    P = build_P((1, 1, 1, 1), 3)
    assert P.evaluate((0, 0, 0, 0)) == 1
    assert P.evaluate((1, 1, 1, 0)) == 1
    assert P.evaluate((1, 0, 0, 0)) == 0


def test_zero_coefficient_is_rejected():
    with pytest.raises(DomainError):
        build_P((1, 0, 1, 1), 3)
    with pytest.raises(DomainError):
        build_Q((1, 1, 1), 3)


@pytest.mark.parametrize("p", [3, 5])
def test_expanded_P_is_the_zero_sum_indicator(p):
    rng = random.Random(p)
    for _ in range(10):
        a = tuple(rng.randrange(1, p) for _ in range(p + 1))
        P = build_P(a, p)
        for vertex in itertools.product((0, 1), repeat=p + 1):
            assert P.evaluate(vertex) == int(selects_zero_sum(a, p, vertex))


@pytest.mark.parametrize("p", [7, 11])
def test_P_formula_is_the_zero_sum_indicator(p):
    rng = random.Random(p)
    a = tuple(rng.randrange(1, p) for _ in range(p + 1))
    first, second = trace_forms(a, p)
    for vertex in itertools.product((0, 1), repeat=p + 1):
        s1, s2 = first.evaluate(vertex), second.evaluate(vertex)
        value = (1 - pow(s1, p - 1, p)) * (1 - pow(s2, p - 1, p)) % p
        assert value == int(selects_zero_sum(a, p, vertex))


@pytest.mark.parametrize("p", [3, 5])
def test_Q_properties(p):
    rng = random.Random(10 + p)
    for _ in range(5):
        a = tuple(rng.randrange(1, p) for _ in range(p + 1))
        P, Q = build_P(a, p), build_Q(a, p)
        assert full_support_monomials(Q) == []
        assert Q.evaluate((0,) * (p + 1)) == 0
        assert (P - Q).degree <= p - 1
    assert (build_P((1, 1, 1, 1), 3) - build_Q((1, 1, 1, 1), 3)).degree == 2


@pytest.mark.parametrize("p", [3, 5])
def test_gray_and_targeted_sums_match_expansion(p):
    rng = random.Random(20 + p)
    for _ in range(5):
        a = tuple(rng.randrange(1, p) for _ in range(p + 1))
        I_P, even, odd = signed_sum_P_gray(a, p)
        assert I_P == signed_cube_sum_eval(build_P(a, p)).value
        assert signed_sum_Q_targeted(a, p) == signed_cube_sum_eval(build_Q(a, p)).value
        subsets = zero_sum_subsets(canonical(a, p), p)
        n_even = 1 + sum(1 for s in subsets if len(s) % 2 == 0)
        assert (even, odd) == (n_even, len(subsets) + 1 - n_even)


# --- proof traces ---------------------------------------------------------------


def test_proof_trace_example():
    t = proof_trace_for((1, 1, 1, 1), 3)
    assert (t.I_P, t.I_Q, t.even_count, t.odd_count) == (0, 0, 1, 1)
    assert t.witness.indices == (0, 1, 2)
    assert t.degree_P_minus_Q == 2 and t.Q_full_support_terms == 0


def test_proof_trace_canonicalises_first():
    vs = [FpVector2.of(x, y, 3) for x, y in [(2, 2), (1, 1), (1, 2), (1, 0), (0, 1)]]
    assert proof_trace(vs, 3).coefficients == (1, 1, 1, 1)


def test_proof_trace_at_7_without_expansion():
    t = proof_trace_for((1,) * 8, 7, expand=False)
    assert t.I_P == t.I_Q == 0 and t.even_count == t.odd_count and not t.expanded


def test_theorem1_witness_positions_refer_to_the_input():
    pairs = [(2, 2), (1, 1), (1, 2), (1, 0), (0, 1)]
    vs = [FpVector2.of(x, y, 3) for x, y in pairs]
    for direct in (False, True):
        w = theorem1_witness(vs, 3, direct=direct)
        assert sum(pairs[i][0] for i in w.indices) % 3 == 0
        assert sum(pairs[i][1] for i in w.indices) % 3 == 0
    # the direct search may use both (1,1) and (2,2)
    assert theorem1_witness(vs, 3, direct=True).indices == (0, 1)
    with pytest.raises(DomainError):
        theorem1_witness(vs[:3], 3)


@pytest.mark.parametrize("p", [3, 5])
def test_trace_survey_exhaustive(p):
    s = proof_trace_survey(p, "exhaustive")
    assert s.total_cases == (p - 1) ** (p + 1) == s.verified_cases and s.failures == []


def test_trace_survey_gate():
    with pytest.raises(ResourceError):
        proof_trace_survey(7, "exhaustive")


# --- surveys ------------------------------------------------------------------


def test_canonical_tuples_enumeration_order():
    rows = canonical_tuples(3, 0, 16)
    assert [tuple(r) for r in rows] == list(itertools.product((1, 2), repeat=4))
    assert [tuple(r) for r in canonical_tuples(5, 100, 103)] == [
        tuple(r) for r in itertools.islice(itertools.product(range(1, 5), repeat=6), 100, 103)
    ]


def test_sampled_blocks_are_independent_of_each_other():
    a = sampled_tuples(11, 7, 3, 50)
    b = sampled_tuples(11, 7, 3, 50)
    assert (a == b).all()
    assert a.min() >= 1 and a.max() <= 10
    assert not (sampled_tuples(11, 7, 4, 50) == a).all()


@pytest.mark.parametrize("p, total", [(3, 16), (5, 4096)])
def test_theorem1_exhaustive_small(p, total):
    rep = verify_theorem1(p)
    assert rep.total_cases == rep.verified_cases == total and rep.failures == []
    assert rep.complete and rep.remaining == 0
    assert 3 <= rep.min_witness <= rep.max_witness <= p + 1


def test_theorem1_exhaustive_p3_against_brute_force():
    sizes = {}
    for a in itertools.product((1, 2), repeat=4):
        subsets = zero_sum_subsets(canonical(a, 3), 3)
        assert subsets
        smallest = min(len(s) for s in subsets)
        sizes[smallest] = sizes.get(smallest, 0) + 1
    assert verify_theorem1(3).min_witness == min(sizes)


def test_sampled_mode_is_reproducible():
    a = verify_theorem1(11, "sampled", trials=2000, seed=5)
    b = verify_theorem1(11, "sampled", trials=2000, seed=5)
    assert a.as_dict() == b.as_dict() and a.failures == []


def test_survey_validation():
    with pytest.raises(DomainError):
        verify_theorem1(11, "sampled")
    with pytest.raises(ResourceError):
        verify_theorem1(11)


def test_stop_and_resume_matches_uninterrupted(tmp_path):
    ck = tmp_path / "ck"
    full = verify_theorem1(5, "sampled", trials=50000, seed=2).as_dict()
    part = verify_theorem1(5, "sampled", trials=50000, seed=2, checkpoint=ck, stop_at=20000)
    assert not part.complete and part.cursor == 32768
    again = verify_theorem1(5, "sampled", trials=50000, seed=2, checkpoint=ck, resume=True)
    assert again.as_dict() == full


def test_workers_do_not_change_the_report():
    one = verify_theorem1(5, "sampled", trials=40000, seed=1, workers=1).as_dict()
    two = verify_theorem1(5, "sampled", trials=40000, seed=1, workers=2).as_dict()
    assert one == two


def test_resume_refuses_other_run(tmp_path):
    from zerosum.checkpoint import CheckpointError

    ck = tmp_path / "ck"
    verify_theorem1(5, "sampled", trials=40000, seed=2, checkpoint=ck, stop_at=1)
    with pytest.raises(CheckpointError):
        verify_theorem1(5, "sampled", trials=40000, seed=3, checkpoint=ck, resume=True)


# --- both sides of the Olson comparison ------------------------------------------


def test_grt_report_small():
    r3 = grt_report(3).as_dict()
    assert r3["lhs"] == 4 and r3["rhs"] == 3 + 2 - 1
    r5 = grt_report(5)
    assert r5.rhs == 7 and r5.lhs >= 1
