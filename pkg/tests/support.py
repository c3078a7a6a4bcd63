"""Shared helpers and hypothesis strategies for the test suite."""
from __future__ import annotations

import os
from fractions import Fraction

from hypothesis import strategies as st

from sosmultitype.algebra import CoordChange, GaussianRational, HoloPoly, ONE
from sosmultitype.parser import parse

SEED = int(os.environ.get("MTYPE_SEED", "20240611"))


def P(n: int, text: str) -> HoloPoly:
    return parse(f"n={n}\ngenerators: {text}").generators[0]


def gens(n: int, text: str) -> list[HoloPoly]:
    return parse(f"n={n}\ngenerators: {text}").generators


small_int = st.integers(min_value=-3, max_value=3)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gaussians = st.builds(GaussianRational, rationals, rationals)
nonzero_gaussians = gaussians.filter(bool)


@st.composite
def monomials(draw, n: int = 3, max_exp: int = 3):
    exps = draw(st.lists(st.integers(0, max_exp), min_size=n - 1, max_size=n - 1))
    return (0,) + tuple(exps)


@st.composite
def holo_polys(draw, n: int = 3, max_terms: int = 4, max_exp: int = 3, vanish: bool = True):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        m = draw(monomials(n, max_exp))
        if vanish and not any(m):
            continue
        terms[m] = draw(nonzero_gaussians)
    return HoloPoly(terms, n)


@st.composite
def generator_lists(draw, n: int = 3, max_gens: int = 3, max_exp: int = 3):
    out = draw(st.lists(holo_polys(n, 3, max_exp), min_size=1, max_size=max_gens))
    out = [g for g in out if g]
    return out or [HoloPoly.var(n, 2)]


@st.composite
def triangular_changes(draw, n: int = 3):
    """``z_k -> z_k + psi(z_{k+1}..z_n)`` for a random ``k``."""
    k = draw(st.integers(2, n - 1))
    psi = HoloPoly.zero(n)
    for _ in range(draw(st.integers(1, 2))):
        exps = {j: draw(st.integers(0, 2)) for j in range(k + 1, n + 1)}
        if not any(exps.values()):
            continue
        m = tuple(exps.get(i + 1, 0) for i in range(n))
        psi = psi + HoloPoly({m: draw(nonzero_gaussians)}, n)
    return CoordChange.shear(n, k, ONE, psi)


units = st.sampled_from([GaussianRational(1), GaussianRational(0, 1), GaussianRational(-1),
                         GaussianRational(0, -1)])


def random_ideal(rnd, n: int = 3, max_gens: int = 3, max_degree: int = 4) -> list[HoloPoly]:
    out = []
    for _ in range(rnd.randint(1, max_gens)):
        terms = {}
        for _ in range(rnd.randint(1, 3)):
            exps = [0] * (n - 1)
            for _ in range(rnd.randint(1, max_degree)):
                exps[rnd.randrange(n - 1)] += 1
            terms[(0,) + tuple(exps)] = GaussianRational(rnd.randint(-3, 3) or 1, rnd.randint(-2, 2))
        out.append(HoloPoly(terms, n))
    return out


def random_equally_ordered(rnd, n: int = 3, max_len: int = 6):
    """Constant fields for labels ``2..n`` and a random equally-ordered list of length <= max_len."""
    from sosmultitype.machinery import ListSpec, VectorField
    fields = {}
    for k in range(2, n + 1):
        row = [GaussianRational(rnd.randint(-2, 2), rnd.randint(-1, 1)) for _ in range(n - 1)]
        if not any(row):
            row[k - 2] = GaussianRational(1)
        fields[k] = VectorField.constant(n, row)
    pairs = rnd.randint(1, max_len // 2)
    counts: dict[int, int] = {}
    for _ in range(pairs):
        k = rnd.randint(2, n)
        counts[k] = counts.get(k, 0) + 1
    return ListSpec.equally_ordered(counts, fields)
