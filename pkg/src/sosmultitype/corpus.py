"""Shipped example domains and seeded generators for the randomized suites."""
from __future__ import annotations

import itertools
import os
import random
from fractions import Fraction
from typing import Sequence

from .algebra import GaussianRational, HoloPoly, monomial
from .parser import DomainSpec, parse
from .weights import HALF, Weight, weighted_degree

# (name, source) pairs in the input language; every instance has n <= 3 and degree <= 6
CORPUS_SOURCES: list[tuple[str, str]] = [
    ("z2", "n=2\ngenerators: z2"),
    ("z2^2", "n=2\ngenerators: z2^2"),
    ("z2^3", "n=2\ngenerators: z2^3"),
    ("z2^5", "n=2\ngenerators: z2^5"),
    ("z2^6", "n=2\ngenerators: z2^6"),
    ("z2^2+z2^3", "n=2\ngenerators: z2^2 + z2^3"),
    ("z2^3+i z2^4", "n=2\ngenerators: z2^3 + i*z2^4"),
    ("z2^2, z2^3", "n=2\ngenerators: z2^2, z2^3"),
    ("z2+z2^4", "n=2\ngenerators: z2 + 1/2 z2^4"),
    ("z2, z2^4", "n=2\ngenerators: z2, z2^4"),
    ("diag 1,1", "n=3\ngenerators: z2, z3"),
    ("diag 1,3", "n=3\ngenerators: z2, z3^3"),
    ("diag 2,2", "n=3\ngenerators: z2^2, z3^2"),
    ("diag 2,3", "n=3\ngenerators: z2^2, z3^3"),
    ("diag 3,5", "n=3\ngenerators: z2^3, z3^5"),
    ("diag 3,6", "n=3\ngenerators: z2^3, z3^6"),
    ("chain 2,11", "n=3\ngenerators: z2^2, z2*z3"),
    ("chain 3,12", "n=3\ngenerators: z2^3, z2*z3^2"),
    ("chain 2,13", "n=3\ngenerators: z2^2, z2*z3^3"),
    ("z2 z3", "n=3\ngenerators: z2*z3"),
    ("sum of squares", "n=3\ngenerators: z2^2 + z3^2"),
    ("twisted square", "n=3\ngenerators: z2^2 + i*z3^2"),
    ("mixed square", "n=3\ngenerators: z2^2 + 2 z2*z3 + z3^2, z3^3"),
    ("reversed", "n=3\ngenerators: z3^2, z2^3"),
    ("z3^2 only", "n=3\ngenerators: z3^2"),
    ("z2^2 - z3^3", "n=3\ngenerators: z2^2 - z3^3"),
    ("square plus cross", "n=3\ngenerators: z2^2 + z2*z3, z3^3"),
    ("cubic plus square", "n=3\ngenerators: z2^3, z2*z3 + z3^2"),
    ("complex cross", "n=3\ngenerators: z2^3, (1/2 + i) z2*z3 + z3^2"),
    ("z2^2+z3^4", "n=3\ngenerators: z2^2 + z3^4"),
    ("z2^3, z3^4+z2^2 z3", "n=3\ngenerators: z2^3, z3^4 + z2^2*z3"),
    ("z2^2, z3^5+z2 z3^2", "n=3\ngenerators: z2^2, z3^5 + z2*z3^2"),
    ("z2^2 z3^2", "n=3\ngenerators: z2^2, z3^2 + z2^2*z3^2"),
    ("z2^4, z3^6", "n=3\ngenerators: z2^4, z3^6"),
    ("degenerate line", "n=3\ngenerators: z2^2, z2*z3^2"),
    # linear parts: Levi rank one and two
    ("levi z2, z3^2", "n=3\ngenerators: z2, z3^2"),
    ("levi shear", "n=3\ngenerators: z2, z2 + z3^2"),
    ("levi mixed", "n=3\ngenerators: z2, z2*z3 + z3^3"),
    ("levi kernel", "n=3\ngenerators: z2, z2*z3"),
    ("levi rank two", "n=3\ngenerators: z2 + z3, z2 - z3"),
    ("levi tilted", "n=3\ngenerators: z2 + z3, z3^2"),
    ("levi graph", "n=3\ngenerators: z2 + z3^2, z3^3"),
    ("levi graph cubic", "n=3\ngenerators: z2 - i*z3^3, z3^4"),
    # non-monomial inputs where a shear is needed to reach the model
    ("square of a graph", "n=3\ngenerators: z3^2 + 2 z2^2*z3 + z2^4, z2^6"),
    ("square of a cubic graph", "n=3\ngenerators: z3^2 + 2 z2^3*z3 + z2^6, z2^4"),
    ("cube of a graph", "n=3\ngenerators: z2^3 + 3 z2^2*z3^2 + 3 z2*z3^4 + z3^6, z3^5"),
    ("graph z3 -> z3 + z2^2", "n=3\ngenerators: z2^2, z3^3 + 3 z2^2*z3^2 + 3 z2^4*z3 + z2^6"),
    ("linear mix", "n=3\ngenerators: z2^2 + 2 z2*z3 + z3^2, z3^4"),
]


def load_corpus() -> list[tuple[str, DomainSpec]]:
    return [(name, parse(src)) for name, src in CORPUS_SOURCES]


def seed(default: int = 20240611) -> int:
    """Seed for the randomized suites, overridable with ``MTYPE_SEED``."""
    raw = os.environ.get("MTYPE_SEED")
    return int(raw) if raw else default


def rng(offset: int = 0) -> random.Random:
    return random.Random(seed() + offset)


def mono(n: int, exps: dict[int, int]) -> HoloPoly:
    return HoloPoly({monomial(n, exps): GaussianRational(1)}, n)


def diagonal_case(a: int, b: int) -> list[HoloPoly]:
    return [mono(3, {2: a}), mono(3, {3: b})]


# -- balanced chains -------------------------------------------------------------------

def cascade(chain: Sequence[Sequence[int]]) -> Weight | None:
    """Solve ``sum_{l<j} 2k_jl / lam_l + 2k_jj / lam_j = 1``; None unless nondecreasing."""
    lams: list[Fraction] = []
    for row in chain:
        used = sum(Fraction(2 * k) / lam for k, lam in zip(row[:-1], lams))
        gap = 1 - used
        if gap <= 0:
            return None
        lam = Fraction(2 * row[-1]) / gap
        if lams and lam < lams[-1]:
            return None
        lams.append(lam)
    return Weight([1] + lams)


def chain_generators(chain: Sequence[Sequence[int]]) -> list[HoloPoly]:
    n = len(chain) + 1
    return [mono(n, {l + 2: k for l, k in enumerate(row) if k}) for row in chain]


def random_chains(r: random.Random, count: int, max_n: int = 4, max_degree: int = 8) -> list[list[list[int]]]:
    out, seen = [], set()
    tries = 0
    while len(out) < count and tries < 20000:
        tries += 1
        n = r.randint(3, max_n)
        chain = []
        for j in range(2, n + 1):
            while True:
                row = [r.randint(0, 2) for _ in range(j - 2)] + [r.randint(1, 4)]
                if sum(row) <= max_degree:
                    break
            chain.append(row)
        key = tuple(map(tuple, chain))
        if key in seen or cascade(chain) is None:
            continue
        seen.add(key)
        out.append(chain)
    return out


# -- weighted-homogeneous models -------------------------------------------------------

def half_monomials(lam: Weight, max_degree: int = 8) -> list[tuple[int, ...]]:
    """All holomorphic monomials of weighted degree exactly 1/2 in ``z2..zn``."""
    n = len(lam)
    out = []
    for exps in itertools.product(range(max_degree + 1), repeat=n - 1):
        if 0 < sum(exps) <= max_degree:
            m = (0,) + exps
            if weighted_degree(m, None, lam) == HALF:
                out.append(m)
    return out


def random_model(r: random.Random, chain: Sequence[Sequence[int]]) -> tuple[list[HoloPoly], Weight]:
    """The chain monomials plus random homogeneous combinations of weight-1/2 monomials."""
    lam = cascade(chain)
    n = len(lam)
    gens = chain_generators(chain)
    pool = half_monomials(lam)
    for _ in range(r.randint(0, 2)):
        picks = r.sample(pool, min(len(pool), r.randint(1, 3)))
        terms = {m: GaussianRational(r.randint(-3, 3) or 1, r.randint(-2, 2)) for m in picks}
        gens.append(HoloPoly(terms, n))
    return gens, lam
