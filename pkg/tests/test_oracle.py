from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings

from sosmultitype.algebra import GaussianRational, expand_squares
from sosmultitype.corpus import load_corpus
from sosmultitype.engine import compute
from sosmultitype.machinery import ListSpec, VectorField
from sosmultitype.oracle import (FullVectorField, brute_commutator_entry, brute_multitype,
                                 default_directions, defining_function, direct_L_partial_r)
from sosmultitype.weights import INF, Weight

from support import P, gens, generator_lists, gaussians

W = Weight.parse
GR = GaussianRational


def d(n: int, k: int) -> VectorField:
    return VectorField.coordinate(n, k)


def test_direct_examples():
    ball = expand_squares([P(2, "z2")])
    assert direct_L_partial_r(ListSpec([(2, False), (2, True)], {2: d(2, 2)}), ball).constant == GR(1)
    quartic = expand_squares([P(2, "z2^2")])
    L = ListSpec.equally_ordered({2: 2}, {2: d(2, 2)})
    assert direct_L_partial_r(L, quartic).constant == GR(4)


def test_identical_last_pair_vanishes():
    tail = expand_squares(gens(3, "z2^2 + z3, z2*z3"))
    L = ListSpec([(3, True), (2, False), (2, False)], {2: d(3, 2), 3: d(3, 3)})
    assert direct_L_partial_r(L, tail).value.is_zero()


@settings(max_examples=30, deadline=None)
@given(generator_lists(max_exp=3), gaussians, gaussians)
def test_tangential_fields_kill_r(gs, a, b):
    tail = expand_squares(gs)
    X = FullVectorField.tangential(VectorField.constant(3, [a, b]), tail)
    r = defining_function(tail)
    assert X.apply(r).is_zero()
    assert X.conjugate().apply(r).is_zero()


def test_brute_entry_examples():
    e = brute_commutator_entry(2, [P(2, "z2^2")], {}, max_len=6)
    assert e.value == 4 and e.witness.counts() == {2: 4}
    e = brute_commutator_entry(3, [P(3, "z2*z3")], {2: Fraction(4)})
    assert e.value == 4


def test_brute_entry_infinite_flagged():
    e = brute_commutator_entry(3, gens(3, "z2, z2*z3"), {2: Fraction(2)}, q=1, max_len=6)
    assert e.value == INF and e.bound_exceeded


def test_brute_entry_max_denominator():
    e = brute_commutator_entry(3, gens(3, "z2^2, z2*z3^3"), {2: Fraction(4)}, max_denominator=1)
    assert e.value == 12


@pytest.mark.parametrize("text, expected", [
    ("z2^2, z3^3", "1,4,6"),
    ("z2, z3", "1,2,2"),
    ("z2^2 + 2 z2*z3 + z3^2, z3^3", "1,4,6"),
])
def test_brute_multitype_examples(text, expected):
    res = brute_multitype(gens(3, text))
    assert res.weight == W(expected) and not res.bound_exceeded


@pytest.mark.parametrize("name, spec", load_corpus(), ids=[c[0] for c in load_corpus()])
def test_engine_entries_match_brute_entries(name, spec):
    res = compute(spec.generators)
    lam = res.multitype
    for st in res.boundary_system.stages:
        if st.kind != "commutator":
            continue
        c_prev = {k: lam[k - 1] for k in range(2, st.index)}
        dirs = default_directions(res.n, st.index, [st.direction])
        max_len = max(8, 2 * max(g.degree() for g in st.generators_before))
        e = brute_commutator_entry(st.index, st.generators_before, c_prev, q=res.levi.q,
                                   max_len=max_len, directions=dirs)
        assert e.value == st.c
