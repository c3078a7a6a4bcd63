from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sosmultitype.algebra import GaussianRational, HoloPoly, expand_squares
from sosmultitype.errors import NotAdmissible
from sosmultitype.machinery import (Ideal, ListSpec, VectorField, apply_vf, derivative_ideal, h_function,
                                    jacobian, levi_identity_holds, levi_product, script_L_partial_r,
                                    solve_c)
from sosmultitype.oracle import direct_L_partial_r

from support import P, SEED, gaussians, gens, generator_lists, random_equally_ordered, random_ideal

GR = GaussianRational


def d(n: int, k: int) -> VectorField:
    return VectorField.coordinate(n, k)


def test_jacobian_examples():
    assert jacobian(Ideal([P(2, "z2^2")])) == [[P(2, "2 z2")]]
    J = jacobian(Ideal(gens(3, "z2, z3^2")))
    assert J == [[P(3, "1"), HoloPoly.zero(3)], [HoloPoly.zero(3), P(3, "2 z3")]]
    assert all(not e for row in jacobian(Ideal([HoloPoly.zero(3)])) for e in row)


def test_apply_vf_examples():
    assert list(apply_vf(d(3, 2), [P(3, "z2^2*z3")])) == [P(3, "2 z2*z3")]
    L = VectorField.constant(3, [1, -1])
    assert apply_vf(L, [P(3, "z2 + z3")]).is_zero()
    L = VectorField((P(3, "z3"), HoloPoly.zero(3)), 3)
    assert list(apply_vf(L, [P(3, "z2^2")])) == [P(3, "2 z2*z3")]


def test_derivative_ideal_examples():
    assert list(derivative_ideal([d(2, 2), d(2, 2)], [P(2, "z2^3")])) == [P(2, "6 z2")]
    I = gens(3, "z2^2 + z3")
    assert list(derivative_ideal([], I)) == I
    assert list(derivative_ideal([d(3, 2), d(3, 3)], [P(3, "z2*z3")])) == [P(3, "1")]


def test_levi_product_examples():
    z2 = HoloPoly.var(3, 2)
    four = (z2.to_mixed() * z2.conjugate()).scale(4)
    assert levi_product([P(3, "z2^2")], [P(3, "z2^2")], d(3, 2), d(3, 2)) == four
    I = gens(3, "z2, z3")
    assert levi_product(I, I, d(3, 2), d(3, 2)).constant_term() == GR(1)
    z3 = HoloPoly.var(3, 3)
    f = [P(3, "z2*z3")]
    assert levi_product(f, f, d(3, 2), d(3, 3)) == z3.to_mixed() * z2.conjugate()


def test_script_L_partial_r_examples():
    f2 = [P(2, "z2^2")]
    L4 = ListSpec.equally_ordered({2: 2}, {2: d(2, 2)})
    assert script_L_partial_r(L4, f2).constant_term() == GR(4)
    L2 = ListSpec.equally_ordered({2: 1}, {2: d(2, 2)})
    val = script_L_partial_r(L2, f2)
    z2 = HoloPoly.var(2, 2)
    assert val == (z2.to_mixed() * z2.conjugate()).scale(4) and not val.constant_term()
    L = ListSpec([(3, False), (3, True), (2, False), (2, True)], {2: d(3, 2), 3: d(3, 3)})
    assert script_L_partial_r(L, [P(3, "z2*z3")]).constant_term() == GR(1)


def test_script_L_needs_equally_ordered():
    L = ListSpec([(2, True), (2, False)], {2: d(2, 2)})
    with pytest.raises(ValueError):
        script_L_partial_r(L, [P(2, "z2^2")])


def test_solve_c_examples():
    assert solve_c({2: 2}, {}, 2) == 4
    assert solve_c({2: 1, 3: 1}, {2: Fraction(4)}, 3) == 4
    with pytest.raises(NotAdmissible):
        solve_c({2: 2, 3: 1}, {2: Fraction(4)}, 3)


def test_h_function_single_field():
    # one field: sum_j f_j conj(L f_j)
    f = [P(2, "z2")]
    assert h_function([d(2, 2)], f).to_holo() == P(2, "z2")
    assert h_function([d(2, 2), d(2, 2)], [P(2, "z2^2")]).to_holo() == P(2, "4 z2")


row = st.lists(gaussians, min_size=2, max_size=2)


@settings(max_examples=60)
@given(generator_lists(max_exp=3), row)
def test_levi_identity(gs, r):
    assert levi_identity_holds(Ideal(gs), VectorField.constant(3, r))


@settings(max_examples=60)
@given(generator_lists(max_exp=4), row, row, row)
def test_derivative_ideal_composition(gs, a, b, c):
    A = [VectorField.constant(3, a)]
    B = [VectorField.constant(3, b), VectorField.constant(3, c)]
    assert derivative_ideal(A + B, gs) == derivative_ideal(A, derivative_ideal(B, gs))


@settings(max_examples=60)
@given(generator_lists(), row, row, gaussians, gaussians)
def test_apply_vf_linear(gs, r1, r2, a, b):
    L, M = VectorField.constant(3, r1), VectorField.constant(3, r2)
    lhs = apply_vf(L.scale(a) + M.scale(b), gs)
    rhs = [x.scale(a) + y.scale(b) for x, y in zip(apply_vf(L, gs), apply_vf(M, gs))]
    assert list(lhs) == rhs


def test_script_L_matches_direct_calculus():
    rnd = random.Random(SEED)
    for _ in range(40):
        I = random_ideal(rnd)
        Ls = random_equally_ordered(rnd)
        fast = script_L_partial_r(Ls, I).constant_term()
        slow = direct_L_partial_r(Ls, expand_squares(I)).constant
        assert fast == slow, (I, Ls.entries)
