from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from sosmultitype.algebra import GaussianRational, HoloPoly, MixedPoly, expand_squares, substitute
from sosmultitype.corpus import load_corpus, random_chains, random_model
from sosmultitype.engine import compute
from sosmultitype.errors import NotAdmissible
from sosmultitype.normalizer import (find_balanced_chain, lemma_shear, normalize_boundary_system,
                                     psi_weights_ok, torsion_check)
from sosmultitype.weights import Weight, is_distinguished, model_extract

from support import P, gens

W = Weight.parse
GR = GaussianRational


def test_lemma_shear_examples():
    res = lemma_shear(gens(3, "z2^2, z2*z3"), (0, 1, 1), W("1,4,4"))
    assert (res.K, res.pivot, res.Psi, res.F) == (GR(1), 2, HoloPoly.zero(3), P(3, "z2"))
    res = lemma_shear([P(2, "z2^2")], (0, 2), W("1,4"))
    assert res.F == P(2, "4 z2") and not res.Psi
    with pytest.raises(ValueError):
        lemma_shear(gens(3, "z2^2, z2*z3 + z2^3"), (0, 1, 1), W("1,4,4"))


def test_lemma_shear_nonzero_psi():
    # along z2*z3 only the second generator survives: d/dz3 (z2*z3 + z3^2) = z2 + 2 z3
    model = gens(3, "z2^2, z2*z3 + z3^2")
    res = lemma_shear(model, (0, 1, 1), W("1,4,4"))
    assert res.pivot == 2 and res.K == GR(1) and res.Psi == P(3, "2 z3")
    assert not res.Psi.depends_on(res.pivot)
    assert psi_weights_ok(res, W("1,4,4"))


def test_normalize_identity_on_normalized_input():
    res = normalize_boundary_system(gens(3, "z2^2, z2*z3"), W("1,4,4"))
    assert res.composite.is_identity()
    assert res.generators == gens(3, "z2^2, z2*z3")
    again = normalize_boundary_system(res.generators, W("1,4,4"))
    assert again.generators == res.generators and again.composite.is_identity()


def test_normalize_mixed_square():
    res = normalize_boundary_system(gens(3, "z2^2 + 2 z2*z3 + z3^2, z3^3"), W("1,4,6"))
    assert res.generators == gens(3, "z2^2, z3^3")
    # the pulled-back coordinate is z2 - z3, i.e. the new z2 is z2 + z3
    assert res.composite.images[1] == P(3, "z2 - z3")
    stages = compute(res.generators).boundary_system.stages
    assert all(st.relabel.is_identity() and not st.psi_model for st in stages)


def test_normalize_rejects_wrong_weight():
    with pytest.raises(NotAdmissible):
        normalize_boundary_system(gens(3, "z2^2, z3^3"), W("1,2,4"))


def test_find_balanced_chain_examples():
    assert find_balanced_chain(gens(3, "z2^2, z2*z3"), W("1,4,4")) == [(0, 2, 0), (0, 1, 1)]
    assert find_balanced_chain(gens(3, "z2^2, z3^3"), W("1,4,6")) == [(0, 2, 0), (0, 0, 3)]
    assert find_balanced_chain(gens(3, "z2^2 + 2 z2*z3 + z3^2"), W("1,4,4")) is None


def corrupted_tail() -> MixedPoly:
    model = gens(3, "z2^2, z2*z3")
    a, b = (0, 1, 1), (0, 2, 1)
    bad = MixedPoly({(a, b): 1, (b, a): 1}, 3)
    return expand_squares(model) + bad


def test_torsion_negative_control():
    rep = torsion_check(gens(3, "z2^2, z2*z3"), W("1,4,4"), tail=corrupted_tail())
    assert not rep.torsion_free and rep.violations


def test_torsion_clean_on_corpus_models():
    for _, spec in load_corpus():
        res = compute(spec.generators)
        lam = res.multitype
        if any(x == float("inf") for x in lam):
            continue
        model = [g for g in model_extract(res.final_generators, lam) if g]
        assert torsion_check(model, lam).torsion_free


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_models_torsion_free_and_psi_clean(s):
    rnd = random.Random(s)
    chain = random_chains(rnd, 1)[0]
    model, lam = random_model(rnd, chain)
    assert torsion_check(model, lam).torsion_free
    for g in model:
        for m in g.terms:
            res = lemma_shear(model, m, lam)
            assert not res.Psi.depends_on(res.pivot)
            assert psi_weights_ok(res, lam)


@pytest.mark.parametrize("name, spec", load_corpus()[::2], ids=[c[0] for c in load_corpus()[::2]])
def test_normalization_preserves_tail_and_multitype(name, spec):
    lam = compute(spec.generators).multitype
    res = normalize_boundary_system(spec.generators, lam)
    assert substitute(expand_squares(spec.generators), res.composite) == expand_squares(res.generators)
    again = compute(res.generators)
    assert again.multitype == lam
    assert is_distinguished(res.generators, lam)[0]
