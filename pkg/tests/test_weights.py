from __future__ import annotations

from fractions import Fraction

from hypothesis import given, strategies as st

from sosmultitype.weights import (INF, Weight, is_distinguished, is_weight, lex_compare, model_extract,
                                  weighted_degree)

from support import P, gens, generator_lists, monomials

W = Weight.parse


def test_lex_compare_examples():
    assert lex_compare(W("1,4,4"), W("1,4,6")) == -1
    assert lex_compare(W("1,2,inf"), W("1,4,4")) == -1
    assert lex_compare(W("1,14/3,inf"), W("1,14/3,inf")) == 0
    assert W("1,4,6") > W("1,4,4")


def test_weighted_degree_examples():
    assert weighted_degree((0, 2), (0, 2), W("1,4")) == 1
    assert weighted_degree((0, 1, 1), None, W("1,4,4")) == Fraction(1, 2)
    assert weighted_degree((0, 0, 1), None, W("1,4,inf")) == 0


def test_is_weight_examples():
    ok, wit = is_weight(W("1,4,6"))
    assert ok and wit[0] == (1,) and wit[2][-1] > 0
    ok, wit = is_weight(W("1,3,5"))
    assert ok
    assert not is_weight(W("1,4,7/2"))[0]
    assert is_weight(W("1,2,inf"))[0]
    assert not is_weight(W("2,4"))[0]


def test_is_weight_strict_flag():
    # 5/2 has no witness: a_1 = 0 forces a_2 = 5/2
    assert not is_weight(W("1,5/2"))[0]
    # the strict reading needs a_1 > 0, and a_1 / 1 already exhausts the budget
    assert is_weight(W("1,4,6"))[0]
    assert not is_weight(W("1,4,6"), strict=True)[0]


def test_model_extract_examples():
    assert model_extract([P(2, "z2^2 + z2^5")], W("1,4")) == [P(2, "z2^2")]
    assert model_extract([P(3, "z2*z3 + z3^3")], W("1,4,4")) == [P(3, "z2*z3")]


def test_is_distinguished_examples():
    assert is_distinguished([P(2, "z2^2")], W("1,4"))[0]
    ok, off = is_distinguished([P(2, "z2^2")], W("1,6"))
    assert not ok and off == ((0, 2), (0, 2))
    assert weighted_degree(*off, W("1,6")) == Fraction(2, 3)
    assert is_distinguished(gens(3, "z2^2 + z2*z3, z3^2"), W("1,4,4"))[0]


finite_weights = st.lists(st.sampled_from([Fraction(x) for x in (2, 3, 4, 6)] + [Fraction(14, 3)]),
                          min_size=2, max_size=2).map(lambda xs: Weight([1] + sorted(xs)))


@given(st.lists(finite_weights, min_size=3, max_size=3))
def test_lex_compare_total_order(ws):
    a, b, c = ws
    assert lex_compare(a, b) == -lex_compare(b, a)
    if lex_compare(a, b) <= 0 and lex_compare(b, c) <= 0:
        assert lex_compare(a, c) <= 0


@given(monomials(), monomials(), finite_weights)
def test_weighted_degree_additive(m1, m2, lam):
    prod = tuple(a + b for a, b in zip(m1, m2))
    assert weighted_degree(prod, None, lam) == weighted_degree(m1, None, lam) + weighted_degree(m2, None, lam)


@given(generator_lists(), finite_weights)
def test_model_extract_idempotent(gs, lam):
    once = model_extract(gs, lam)
    assert model_extract(once, lam) == once


@given(generator_lists(), finite_weights)
def test_distinguished_survives_model_split(gs, lam):
    model = model_extract(gs, lam)
    rest = [g - m for g, m in zip(gs, model)]
    assert is_distinguished(gs, lam)[0] == is_distinguished(model + rest, lam)[0]
    if is_distinguished(gs, lam)[0]:
        assert is_distinguished(model, lam)[0]


def test_no_monotonicity_claim():
    # (1,4,6) is distinguished for [z2^2, z3^3]; the smaller (1,4,4) happens to be as well,
    # while (1,2,6) is not: nothing monotone is asserted either way
    g = gens(3, "z2^2, z3^3")
    assert is_distinguished(g, W("1,4,6"))[0]
    assert is_distinguished(g, W("1,4,4"))[0]
    assert not is_distinguished(g, W("1,6,6"))[0]


def test_weight_strings_roundtrip():
    w = W("1,4,14/3,inf")
    assert w.to_strings() == ["1", "4", "14/3", "inf"]
    assert W(",".join(w.to_strings())) == w
    assert w[3] == INF
