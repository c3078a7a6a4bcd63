"""Weights, weighted degrees, model extraction and the distinguished-weight check."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

from .algebra import HoloPoly, Monomial, ZERO, expand_squares

INF = math.inf
Entry = Union[Fraction, float]  # float only ever holds math.inf

HALF = Fraction(1, 2)


def as_entry(x) -> Entry:
    """Coerce ints, Fractions, strings like ``"14/3"`` or ``"inf"`` to a weight entry."""
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "∞", "+inf", "infinity"):
            return INF
        return Fraction(s)
    if isinstance(x, float):
        if math.isinf(x) and x > 0:
            return INF
        raise ValueError(f"weight entries must be exact rationals or inf, got {x!r}")
    return Fraction(x)


def entry_str(x: Entry) -> str:
    return "inf" if x == INF else str(x)


@total_ordering
@dataclass(frozen=True)
class Weight:
    """An n-tuple of extended positive rationals ordered lexicographically."""

    entries: tuple

    def __init__(self, entries: Iterable) -> None:
        object.__setattr__(self, "entries", tuple(as_entry(x) for x in entries))

    @classmethod
    def parse(cls, text: str) -> Weight:
        parts = [p for p in text.replace("(", "").replace(")", "").split(",")]
        if not parts or any(not p.strip() for p in parts):
            raise ValueError(f"malformed weight {text!r}")
        return cls(parts)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __lt__(self, other: Weight) -> bool:
        return lex_compare(self, other) < 0

    def finite_prefix(self) -> tuple:
        return tuple(x for x in self.entries if x != INF)

    def to_strings(self) -> list[str]:
        return [entry_str(x) for x in self.entries]

    def __str__(self) -> str:
        return ",".join(self.to_strings())

    def __repr__(self) -> str:
        return f"Weight({str(self)!r})"


def lex_compare(a: Weight | Sequence, b: Weight | Sequence) -> int:
    """-1, 0 or 1; ``inf`` is larger than every rational."""
    a = tuple(a)
    b = tuple(b)
    if len(a) != len(b):
        raise ValueError(f"weight length mismatch: {len(a)} vs {len(b)}")
    for x, y in zip(a, b):
        if x != y:
            return -1 if x < y else 1
    return 0


def weighted_degree(alpha: Monomial, beta: Monomial | None, lam: Weight | Sequence) -> Entry:
    """``sum_j (alpha_j + beta_j) / lam_j`` with ``x / inf = 0``."""
    total = Fraction(0)
    for j, a in enumerate(alpha):
        e = a + (beta[j] if beta is not None else 0)
        if e:
            w = lam[j]
            if w != INF:
                total += Fraction(e) / w
    return total


def _witness(lams: Sequence[Entry], t: int, strict: bool) -> tuple[int, ...] | None:
    """Nonnegative integers ``a_1..a_t`` with ``sum a_j / lam_j == 1``, ``a_t > 0``."""
    target = Fraction(1)
    lt = lams[t]
    low = 1 if strict else 0

    def search(j: int, rest: Fraction, acc: list[int]):
        if j == t:
            a_t = rest * lt
            if a_t.denominator == 1 and a_t >= 1:
                return tuple(acc) + (int(a_t),)
            return None
        lj = lams[j]
        if lj == INF:
            # an infinite entry contributes nothing; the minimal choice suffices
            return search(j + 1, rest, acc + [low])
        a = low
        while Fraction(a) / lj < rest:
            found = search(j + 1, rest - Fraction(a) / lj, acc + [a])
            if found is not None:
                return found
            a += 1
        return None

    return search(0, target, [])


def is_weight(lam: Weight | Sequence, strict: bool = False, domain: bool = True
              ) -> tuple[bool, list[tuple[int, ...] | None]]:
    """Check the weight conditions and return one witness per entry.

    ``strict`` demands ``a_j > 0`` for every ``j <= t`` (the literal reading);
    the default only demands ``a_t > 0``.  Infinite entries get ``None``.
    ``domain`` additionally requires ``lam_1 == 1``.
    """
    lams = tuple(as_entry(x) for x in lam)
    witnesses: list[tuple[int, ...] | None] = []
    if not lams:
        return False, witnesses
    if domain and lams[0] != 1:
        return False, witnesses
    for j, x in enumerate(lams):
        if x != INF and x < 1:
            return False, witnesses
        if j and x < lams[j - 1]:
            return False, witnesses
    for t, x in enumerate(lams):
        if x == INF:
            witnesses.append(None)
            continue
        w = _witness(lams, t, strict)
        if w is None:
            return False, witnesses
        witnesses.append(w)
    return True, witnesses


def model_extract(generators: Sequence[HoloPoly], lam: Weight | Sequence) -> list[HoloPoly]:
    """Keep the terms of each generator of weighted degree exactly 1/2."""
    return [HoloPoly({m: c for m, c in g.terms.items() if weighted_degree(m, None, lam) == HALF},
                     g.nvars) for g in generators]


def is_distinguished(generators: Sequence[HoloPoly], lam: Weight | Sequence
                     ) -> tuple[bool, tuple[Monomial, Monomial] | None]:
    """True iff every term of the expanded tail has weighted degree >= 1.

    Returns the first offending ``(alpha, beta)`` pair in grlex order otherwise.
    """
    gens = [g for g in generators if g]
    if not gens:
        return True, None
    tail = expand_squares(gens)
    for (a, b), c in tail.items():
        if c != ZERO and weighted_degree(a, b, lam) < 1:
            return False, (a, b)
    return True, None
