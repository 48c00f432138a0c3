import math

import pytest
from hypothesis import given, settings, strategies as st

from triwaring.errors import (
    DegreeMismatchError,
    NotPrimeError,
    ReducibleModulusError,
)
from triwaring.fields import (
    field_text,
    kth_power_image,
    kth_roots,
    make_field,
    minus_one_is_kth_power,
    parse_field,
)
from tests.conftest import PRIME_POWERS_49


def test_make_field_prime():
    F = make_field(7)
    assert F.q == 7 and F.p == 7 and F.m == 1


def test_make_field_extension_default_modulus():
    # x^2 + 1 has no root mod 3, and is the smallest-encoding choice
    F = make_field(3, 2)
    assert F.q == 9
    assert F.modulus == (1, 0, 1)
    for t in range(3):
        assert (t * t + 1) % 3 != 0


def test_make_field_rejects_composite_characteristic():
    with pytest.raises(NotPrimeError):
        make_field(4)


def test_make_field_rejects_reducible_modulus():
    with pytest.raises(ReducibleModulusError):
        make_field(3, 2, (0, 0, 1))  # x^2
    with pytest.raises(ReducibleModulusError):
        make_field(5, 2, (4, 0, 1))  # x^2 - 1 = (x-1)(x+1)


def test_make_field_rejects_bad_shapes():
    with pytest.raises(DegreeMismatchError):
        make_field(3, 2, (1, 1))
    with pytest.raises(DegreeMismatchError):
        make_field(3, 2, (1, 0, 2))  # not monic
    with pytest.raises(DegreeMismatchError):
        make_field(2, 5)


def test_arith_examples(F7, F9):
    assert F7.inv(3) == 5
    assert F7.neg(1) == 6
    # x * x = -1 = 2 under the modulus x^2 + 1 (x encodes as 3)
    assert F9.mul(3, 3) == 2


def test_division_by_zero(F7):
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)
    with pytest.raises(ZeroDivisionError):
        F7.div(3, 0)


def test_pow_examples(F7, F13):
    assert F7.pow(3, 2) == 2
    assert F13.pow(5, 2) == 12
    for F in (F7, F13):
        for a in F.elements():
            assert F.pow(a, 1) == a
    assert F7.pow(0, 0) == 1


def test_field_axioms_exhaustive(all_fields):
    # associativity, commutativity, distributivity, inverses over every
    # element pair/triple, via precomputed tables to keep it brisk
    for F in all_fields:
        q = F.q
        add = [[F.add(a, b) for b in range(q)] for a in range(q)]
        mul = [[F.mul(a, b) for b in range(q)] for a in range(q)]
        for a in range(q):
            assert add[a][0] == a
            assert mul[a][1] == a
            assert add[a][F.neg(a)] == 0
            if a:
                assert mul[a][F.inv(a)] == 1
            for b in range(q):
                assert add[a][b] == add[b][a]
                assert mul[a][b] == mul[b][a]
                for c in range(q):
                    assert add[add[a][b]][c] == add[a][add[b][c]]
                    assert mul[mul[a][b]][c] == mul[a][mul[b][c]]
                    assert mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]


def test_frobenius_fixed_points(all_fields):
    for F in all_fields:
        for a in F.elements():
            assert F.pow(a, F.q) == a


def test_kth_power_image_examples(F7, F13):
    assert kth_power_image(F7, 2) == frozenset({0, 1, 2, 4})
    img = kth_power_image(F13, 3)
    assert img == frozenset({0, 1, 5, 8, 12})
    assert len(img - {0}) == 12 // 3
    assert kth_power_image(F7, 1) == frozenset(range(7))


def test_kth_power_image_size_formula(all_fields):
    for F in all_fields:
        for k in range(1, 13):
            image = kth_power_image(F, k)
            assert len(image - {0}) == (F.q - 1) // math.gcd(k, F.q - 1)


def test_kth_roots_examples(F7, F13):
    assert kth_roots(F13, 1, 3) == (1, 3, 9)
    assert kth_roots(F7, 0, 4) == (0,)
    assert kth_roots(F7, 3, 2) == ()


def test_kth_roots_preimage_consistency(all_fields):
    for F in all_fields:
        for k in (1, 2, 3, 5):
            for lam in F.elements():
                roots = set(kth_roots(F, lam, k))
                for a in F.elements():
                    assert (a in roots) == (F.pow(a, k) == lam)
                if lam != 0 and roots:
                    assert math.gcd(k, F.q - 1) % len(roots) == 0


def test_irreducibility_counts_match_moebius_formula():
    # (1/d) sum_{e | d} mu(d/e) p^e monic irreducibles of degree d
    from triwaring.fields import _digits, _is_irreducible
    mu = {1: 1, 2: -1, 3: -1, 4: 0}
    for p in (2, 3, 5):
        for d in (2, 3, 4):
            counted = 0
            for t in range(p ** d):
                coeffs = tuple(_digits(t, p, d)) + (1,)
                if _is_irreducible(coeffs, p):
                    counted += 1
            divisors = [e for e in range(1, d + 1) if d % e == 0]
            expected = sum(mu[d // e] * p ** e for e in divisors) // d
            assert counted == expected, (p, d)


def test_minus_one_examples(F7, F13):
    assert minus_one_is_kth_power(F13, 2) is True
    assert minus_one_is_kth_power(F7, 2) is False
    assert minus_one_is_kth_power(F13, 3) is True


def test_minus_one_literal_in_char_two():
    # -1 = 1 = 1^k, so the literal definition says yes
    F4 = make_field(2, 2)
    assert minus_one_is_kth_power(F4, 3) is True


def test_field_text_round_trip(all_fields):
    for F in all_fields:
        assert parse_field(field_text(F)) == F
    assert field_text(make_field(7)) == "7"
    assert field_text(make_field(3, 2)) == "3^2/1,0,1"
    assert parse_field("13").q == 13
    assert parse_field("3^2").q == 9


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIME_POWERS_49), st.data())
def test_power_laws(pm, data):
    F = make_field(*pm)
    a = data.draw(st.integers(0, F.q - 1))
    e1 = data.draw(st.integers(0, 60))
    e2 = data.draw(st.integers(0, 60))
    assert F.pow(a, e1 + e2) == F.mul(F.pow(a, e1), F.pow(a, e2))
    assert F.pow(F.pow(a, e1), e2) == F.pow(a, e1 * e2)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIME_POWERS_49), st.data())
def test_sub_div_consistency(pm, data):
    F = make_field(*pm)
    a = data.draw(st.integers(0, F.q - 1))
    b = data.draw(st.integers(0, F.q - 1))
    assert F.add(F.sub(a, b), b) == a
    if b:
        assert F.mul(F.div(a, b), b) == a
