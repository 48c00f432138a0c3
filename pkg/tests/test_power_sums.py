import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from triwaring.errors import (
    HypothesisViolatedError,
    InsufficientClassesError,
    NoAdmissibleShiftError,
)
from triwaring.fields import make_field, minus_one_is_kth_power
from triwaring.power_sums import (
    PairSolution,
    classification_report,
    classified,
    classify_solutions,
    count_zero_sum_classes,
    enumerate_pair_solutions,
    lang_weil_check,
    power_diff_quotient,
    quotient_zero_report,
    select_pairs,
    select_system_pairs,
    shift_to_two_variable,
)
from tests.conftest import ODD_PRIME_POWERS_49, PRIME_POWERS_49


def test_quotient_examples(F7, F13):
    assert power_diff_quotient(F7, 2, 3, 2) == 5
    assert power_diff_quotient(F13, 0, 0, 3) == 0
    assert power_diff_quotient(F13, 1, 5, 2) == 6
    # degree 0 for k = 1
    assert power_diff_quotient(F7, 4, 6, 1) == 1


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(PRIME_POWERS_49), st.integers(1, 9), st.data())
def test_quotient_factorization(pm, k, data):
    # x^k - y^k = (x - y) * pdq(x, y)
    F = make_field(*pm)
    x = data.draw(st.integers(0, F.q - 1))
    y = data.draw(st.integers(0, F.q - 1))
    lhs = F.sub(F.pow(x, k), F.pow(y, k))
    rhs = F.mul(F.sub(x, y), power_diff_quotient(F, x, y, k))
    assert lhs == rhs


def test_quotient_zero_report_examples(F7, F3, F13):
    rep = quotient_zero_report(F7, 2)
    assert rep.ok
    # a != b with a^2 = b^2 means b = -a, a != 0: six ordered pairs
    assert len(rep.zero_pairs) == 6
    rep33 = quotient_zero_report(F3, 3)  # p | k: diagonal pairs vanish
    assert rep33.ok
    assert (1, 1) in rep33.zero_pairs and (2, 2) in rep33.zero_pairs
    rep132 = quotient_zero_report(F13, 2)
    assert rep132.ok
    assert all(a != b for a, b in rep132.zero_pairs)


def test_enumerate_examples(F7, F13):
    sols = enumerate_pair_solutions(F7, 1, 2)
    assert len(sols) == 8  # the circle has q + 1 points here
    s = enumerate_pair_solutions(F13, 1, 3)
    assert {(t.x, t.y) for t in s} == {(0, 1), (0, 3), (0, 9),
                                       (1, 0), (3, 0), (9, 0)}
    assert len(enumerate_pair_solutions(F7, 5, 1)) == 7


def test_enumerate_matches_fiber_route(odd_fields):
    # the raw scan and the power-image refinement agree
    from triwaring import power_sums
    for F in odd_fields[:6]:
        for k in (2, 3):
            for lam in list(F.elements())[:5]:
                raw = enumerate_pair_solutions(F, lam, k)
                old = power_sums.RAW_SCAN_LIMIT
                power_sums.RAW_SCAN_LIMIT = 0
                try:
                    fiber = enumerate_pair_solutions(F, lam, k)
                finally:
                    power_sums.RAW_SCAN_LIMIT = old
                assert raw == fiber


def test_classify_f7_example(F7):
    cl = classified(F7, 1, 2)
    assert {(s.x, s.y) for s in cl.U} == {(2, 2), (2, 5), (5, 2), (5, 5)}
    assert cl.signatures == ((0, 1), (1, 0))
    assert cl.r == 2


def test_classify_zero_sum_f13(F13):
    cl = classified(F13, 0, 3)
    assert cl.signatures == ((1, 12), (5, 8), (8, 5), (12, 1))
    assert cl.U == (PairSolution(0, 0, 0, 3),)
    assert cl.r + 1 == 5


def test_classify_empty(F7):
    cl = classify_solutions(F7, [])
    assert cl.r == 0 and cl.U == ()


def test_partition_invariants_sweep(all_fields):
    # every solution in exactly one part; class size bounds; signature
    # injectivity in both components
    for F in all_fields:
        if F.q > 31:
            continue
        for k in range(1, 7):
            for lam in F.elements():
                sols = enumerate_pair_solutions(F, lam, k)
                cl = classify_solutions(F, sols)
                parts = [set(cl.U)] + [set(c) for c in cl.classes]
                union = set()
                for part in parts:
                    assert not (union & part)
                    union |= part
                assert union == set(sols)
                for c in cl.classes:
                    assert len(c) <= k * k
                if F.p != 2:
                    # char 2 with lam = 0 makes U huge; odd char only
                    assert len(cl.U) <= k * k
                xs = [sig[0] for sig in cl.signatures]
                ys = [sig[1] for sig in cl.signatures]
                assert len(set(xs)) == len(xs)
                assert len(set(ys)) == len(ys)


def test_classification_report_shape(F13):
    rep = classification_report(F13, 0, 3)
    assert rep == {
        "q": 13, "k": 3, "lambda": 0,
        "classes": [
            {"sig": [1, 12], "size": 9, "rep": [1, 4]},
            {"sig": [5, 8], "size": 9, "rep": [7, 2]},
            {"sig": [8, 5], "size": 9, "rep": [2, 7]},
            {"sig": [12, 1], "size": 9, "rep": [4, 1]},
        ],
        "U_size": 1,
    }


def test_select_pairs_examples(F7, F13):
    ps = select_pairs(F7, 1, 2, 2)
    assert [(s.x, s.y) for s in ps] == [(0, 1), (1, 0)]
    with pytest.raises(InsufficientClassesError) as err:
        select_pairs(F13, 1, 3, 3)
    assert err.value.found == 2
    # the q-1 exponent leaves exactly the two axis classes
    two = select_pairs(F7, 1, 6, 2)
    assert len(two) == 2
    with pytest.raises(InsufficientClassesError):
        select_pairs(F7, 1, 6, 3)


def test_select_pairs_distinctness(odd_fields):
    for F in odd_fields[:6]:
        for k in (2, 3):
            for lam in F.elements():
                cl = classified(F, lam, k)
                for n in range(2, min(cl.r, 4) + 1):
                    chosen = select_pairs(F, lam, k, n)
                    xp = [F.pow(s.x, k) for s in chosen]
                    yp = [F.pow(s.y, k) for s in chosen]
                    assert len(set(xp)) == n and len(set(yp)) == n
                    for s in chosen:
                        assert F.pow(s.x, k) != F.pow(s.y, k)
                    for s in chosen:
                        assert F.add(F.pow(s.x, k), F.pow(s.y, k)) == lam


def test_select_system_pairs_examples(F13):
    pa = select_system_pairs(F13, [(0, 2)], 2)
    pa.validate(F13, 2)
    assert [e.lam for e in pa.entries] == [0, 0]
    pa2 = select_system_pairs(F13, [(0, 1), (1, 1)], 2)
    pa2.validate(F13, 2)
    pa3 = select_system_pairs(F13, [(5, 1)], 2)
    assert len(pa3.entries) == 1


def test_select_system_pairs_failure(F7):
    with pytest.raises(InsufficientClassesError):
        select_system_pairs(F7, [(0, 2)], 2)


def test_select_system_pairs_rejects_bad_demands(F13):
    with pytest.raises(ValueError):
        select_system_pairs(F13, [(0, 1), (0, 1)], 2)
    with pytest.raises(ValueError):
        select_system_pairs(F13, [(0, 0)], 2)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([pm for pm in ODD_PRIME_POWERS_49 if pm[0] ** pm[1] <= 13]),
       st.integers(2, 4), st.data())
def test_select_system_pairs_invariants(pm, k, data):
    F = make_field(*pm)
    lams = data.draw(st.lists(st.integers(0, F.q - 1), min_size=1,
                              max_size=3, unique=True))
    mults = [data.draw(st.integers(1, 2)) for _ in lams]
    try:
        pa = select_system_pairs(F, list(zip(lams, mults)), k)
    except InsufficientClassesError:
        return
    pa.validate(F, k)
    counts = {}
    for e in pa.entries:
        counts[e.lam] = counts.get(e.lam, 0) + 1
    assert counts == dict(zip(lams, mults))


def test_shift_examples(F7, F13):
    assert shift_to_two_variable(F7, 0, 2) == (1, 6)
    assert shift_to_two_variable(F13, 5, 2) == (0, 5)
    assert shift_to_two_variable(F7, 1, 2, {1}) == (2, 4)


def test_shift_exhaustion(F3):
    # squares mod 3 are {0, 1}; forbidding 2 leaves nothing for lam = 0
    with pytest.raises(NoAdmissibleShiftError):
        shift_to_two_variable(F3, 0, 2, {2})


def test_lang_weil_examples(F7, F13):
    r = lang_weil_check(F7, 2, 2, (1, 1))
    assert r.N == 8 and abs(r.N - 7) <= r.bound and r.ok
    r2 = lang_weil_check(F13, 3, 2, (1, 1))
    assert r2.N == 6 and r2.ok
    r3 = lang_weil_check(F13, 1, 2, (1, 1))
    assert r3.N == 13 and r3.ok


def test_lang_weil_rejects_zero_coefficient(F7):
    with pytest.raises(ValueError):
        lang_weil_check(F7, 2, 2, (1, 0))


def test_lang_weil_matches_raw_scan():
    for (p, m), k, arity in [((3, 2), 2, 2), ((7, 1), 3, 3), ((5, 1), 4, 2),
                             ((11, 1), 2, 2), ((5, 2), 3, 2)]:
        F = make_field(p, m)
        raw = 0
        for xs in itertools.product(F.elements(), repeat=arity):
            total = 0
            for x in xs:
                total = F.add(total, F.pow(x, k))
            if total == 1:
                raw += 1
        assert lang_weil_check(F, k, arity, [1] * arity).N == raw


def test_count_zero_sum_classes_examples(F7, F13):
    assert count_zero_sum_classes(F13, 3) == 5
    assert count_zero_sum_classes(F13, 2) == 7
    with pytest.raises(HypothesisViolatedError):
        count_zero_sum_classes(F7, 2)
    with pytest.raises(HypothesisViolatedError):
        count_zero_sum_classes(make_field(2, 2), 2)


def test_count_zero_sum_classes_sweep(odd_fields):
    for F in odd_fields:
        for k in range(1, 11):
            if not minus_one_is_kth_power(F, k):
                continue
            expected = (F.q - 1) // math.gcd(k, F.q - 1) + 1
            assert count_zero_sum_classes(F, k) == expected
