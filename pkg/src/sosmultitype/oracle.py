"""Brute-force references for the engine.

Nothing here shares code with the engine beyond exact arithmetic and the
distinguished-weight predicate:

* ``direct_L_partial_r`` applies honest (1,0) and (0,1) vector fields, with
  their ``d/dz1`` components, to ``r = 2 Re z1 + tail`` and takes a genuine
  commutator;
* ``brute_commutator_entry`` enumerates ordered lists, crossterm-type lists
  included;
* ``brute_multitype`` searches distinguished weights over a finite,
  input-derived family of coordinate systems.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import CoordChange, GaussianRational, HoloPoly, MixedPoly, ONE, ZERO, expand_squares, substitute
from .machinery import ListSpec, VectorField
from .weights import INF, Weight, is_distinguished, is_weight, lex_compare

GR = GaussianRational


# -- full vector fields ---------------------------------------------------------------

@dataclass(frozen=True)
class FullVectorField:
    """``sum_k hol[k] d/dz_k + anti[k] d/dzbar_k`` with MixedPoly coefficients (k = 1..n)."""

    hol: tuple
    anti: tuple

    @property
    def n(self) -> int:
        return len(self.hol)

    @classmethod
    def tangential(cls, v: VectorField, tail: MixedPoly) -> FullVectorField:
        """``L = sum_l v_l (d/dz_l - P_{z_l} d/dz1)`` for ``r = 2 Re z1 + P``; then ``L r = 0``."""
        n = v.n
        hol = [MixedPoly.zero(n) for _ in range(n)]
        a = MixedPoly.zero(n)
        for l in range(2, n + 1):
            c = v.coeffs[l - 2]
            if c.nvars != n:
                raise ValueError("oracle fields must live in the geometric ring")
            if c:
                cm = c.to_mixed()
                hol[l - 1] = cm
                a = a - cm * tail.diff(l)
        hol[0] = a
        return cls(tuple(hol), tuple(MixedPoly.zero(n) for _ in range(n)))

    def conjugate(self) -> FullVectorField:
        return FullVectorField(tuple(c.conjugate() for c in self.anti),
                               tuple(c.conjugate() for c in self.hol))

    def apply(self, p: MixedPoly) -> MixedPoly:
        out = MixedPoly.zero(p.nvars)
        for k in range(1, self.n + 1):
            c = self.hol[k - 1]
            if c:
                d = p.diff(k)
                if d:
                    out = out + c * d
            c = self.anti[k - 1]
            if c:
                d = p.diff(k, conjugate=True)
                if d:
                    out = out + c * d
        return out

    def bracket(self, other: FullVectorField) -> FullVectorField:
        """``[self, other]`` componentwise: ``self(other^k) - other(self^k)``."""
        hol = tuple(self.apply(b) - other.apply(a) for a, b in zip(self.hol, other.hol))
        anti = tuple(self.apply(b) - other.apply(a) for a, b in zip(self.anti, other.anti))
        return FullVectorField(hol, anti)


def defining_function(tail: MixedPoly) -> MixedPoly:
    """``r = z1 + zbar1 + tail`` (the canonical ``2 Re z1`` convention)."""
    n = tail.nvars
    e1 = tuple(1 if i == 0 else 0 for i in range(n))
    z = (0,) * n
    return tail + MixedPoly({(e1, z): 1, (z, e1): 1}, n)


def partial_r(X: FullVectorField, r: MixedPoly) -> MixedPoly:
    """``dr(X)``: only the (1,0) components of ``X`` pair with ``dr``."""
    out = MixedPoly.zero(r.nvars)
    for k in range(1, X.n + 1):
        c = X.hol[k - 1]
        if c:
            out = out + c * r.diff(k)
    return out


@dataclass(frozen=True)
class DirectValue:
    value: MixedPoly
    constant: GaussianRational


def direct_L_partial_r(Ls: ListSpec, r_tail: MixedPoly) -> DirectValue:
    """``L^1 ... L^{l-2} dr([L^{l-1}, L^l])`` by full commutator calculus."""
    if len(Ls) < 2:
        raise ValueError("list must have length >= 2")
    r = defining_function(r_tail)
    full = {}
    for k, v in Ls.fields.items():
        full[k] = FullVectorField.tangential(v, r_tail)
    fields = [full[k].conjugate() if c else full[k] for k, c in Ls.entries]
    g = partial_r(fields[-2].bracket(fields[-1]), r)
    for X in reversed(fields[:-2]):
        g = X.apply(g)
    return DirectValue(g, g.constant_term())


# -- list enumeration -----------------------------------------------------------------

@dataclass
class EntryResult:
    value: object
    witness: ListSpec | None
    direction: tuple | None
    bound_exceeded: bool
    evaluated: int = 0


def default_directions(n: int, nu: int, extra: Iterable[Sequence] = ()) -> list[tuple]:
    """Unit vectors, ``e_p + e_q``, ``e_p - e_q`` and ``e_p + i e_q`` inside ``T_nu``."""
    size = n - 1
    out = []

    def unit(p):
        return [ONE if i == p - 2 else ZERO for i in range(size)]

    for p in range(nu, n + 1):
        out.append(tuple(unit(p)))
    for p, q in itertools.combinations(range(nu, n + 1), 2):
        for c in (ONE, -ONE, GR(0, 1)):
            row = unit(p)
            row[q - 2] = c
            out.append(tuple(row))
    for d in extra:
        d = tuple(GR.coerce(x) for x in d)
        if d not in out:
            out.append(d)
    return out


def _shapes(q: int, nu: int, max_len: int) -> Iterable[tuple]:
    labels = list(range(q + 2, nu + 1))
    for counts in itertools.product(range(max_len + 1), repeat=len(labels)):
        total = sum(counts)
        if counts[-1] >= 1 and 2 <= total <= max_len:
            yield dict(zip(labels, counts))


def _lists_for(counts: Mapping[int, int]) -> Iterable[list[tuple[int, bool]]]:
    """Ordered lists with the given label counts, one per (prefix conj counts, last pair)."""
    labels = []
    for k in sorted(counts, reverse=True):
        labels += [k] * counts[k]
    prefix, last = labels[:-2], labels[-2:]
    blocks: dict[int, int] = {}
    for k in prefix:
        blocks[k] = blocks.get(k, 0) + 1
    keys = sorted(blocks, reverse=True)
    for conj_counts in itertools.product(*(range(blocks[k] + 1) for k in keys)):
        head = []
        for k, b in zip(keys, conj_counts):
            head += [(k, False)] * (blocks[k] - b) + [(k, True)] * b
        for c1, c2 in itertools.product((False, True), repeat=2):
            if last[0] == last[1] and c1 == c2:
                continue  # [L, L] = 0
            yield head + [(last[0], c1), (last[1], c2)]


def brute_commutator_entry(nu: int, generators: Sequence[HoloPoly], c_prev: Mapping[int, object],
                           q: int = 0, max_len: int = 8,
                           directions: Iterable[Sequence] | None = None,
                           max_denominator: int | None = None) -> EntryResult:
    """Smallest ``c(L)`` over ordered ``nu``-admissible lists with nonzero ``L dr(0)``.

    Fields ``L_k`` for ``q+2 <= k < nu`` are ``d/dz_k``; ``L_nu`` ranges over the
    direction family.  ``c(L)`` solves ``sum_{k<nu} l_k / c_k + l_nu / c = 1``.
    """
    gens = [g for g in generators if g]
    n = gens[0].nvars
    tail = expand_squares(gens)
    dirs = list(directions) if directions is not None else default_directions(n, nu)
    scored = []
    for counts in _shapes(q, nu, max_len):
        used = sum(Fraction(l) / c_prev[k] for k, l in counts.items() if k < nu and c_prev[k] != INF)
        if used >= 1:
            continue
        value = Fraction(counts[nu]) / (1 - used)
        if max_denominator and value.denominator > max_denominator:
            continue
        scored.append((value, sum(counts.values()), sorted(counts.items()), counts))
    scored.sort(key=lambda t: (t[0], t[1], t[2]))
    evaluated = 0
    for value, _, _, counts in scored:
        for d in dirs:
            fields = {k: VectorField.coordinate(n, k) for k in counts if k != nu}
            fields[nu] = VectorField.constant(n, d)
            for entries in _lists_for(counts):
                Ls = ListSpec(entries, fields)
                evaluated += 1
                if direct_L_partial_r(Ls, tail).constant:
                    return EntryResult(value, Ls, tuple(d), False, evaluated)
    return EntryResult(INF, None, None, True, evaluated)


# -- distinguished-weight search -------------------------------------------------------

@dataclass
class OracleBounds:
    max_value: Fraction = Fraction(10 ** 6)
    max_family: int = 400
    shear_depth: int | None = None
    extra_changes: Sequence[CoordChange] = ()


@dataclass
class OracleResult:
    weight: Weight
    change: CoordChange
    bound_exceeded: bool
    family_size: int
    per_coordinates: list = field(default_factory=list)


def greedy_weight(gens: Sequence[HoloPoly], n: int) -> Weight | None:
    """Lex-largest distinguished weight in the given coordinates, or None if none is ordered.

    With the prefix fixed and every later entry equal to ``lam_t``, each tail
    term ``z^alpha zbar^beta`` has weighted degree ``a + b / lam_t``; feasibility
    is ``lam_t <= b / (1 - a)`` whenever ``a < 1``.
    """
    gens = [g for g in gens if g]
    lam: list = [Fraction(1)]
    if not gens:
        return Weight(lam + [INF] * (n - 1))
    tail = expand_squares(gens)
    terms = [(tuple(x + y for x, y in zip(a, b))) for (a, b) in tail.terms]
    for t in range(2, n + 1):
        best = INF
        for e in terms:
            a = sum((Fraction(e[j - 1]) / lam[j - 1] for j in range(2, t) if e[j - 1] and lam[j - 1] != INF),
                    Fraction(0))
            b = sum(e[t - 1:])
            if a >= 1:
                continue
            if b == 0:
                return None
            best = min(best, Fraction(b) / (1 - a))
        if best != INF and best < lam[-1]:
            return None
        lam.append(best)
        if best == INF:
            lam += [INF] * (n - t)
            break
    w = Weight(lam)
    if not is_distinguished(gens, w)[0] or not is_weight(w)[0]:
        return None
    return w


def _permutations(n: int) -> list[CoordChange]:
    out = []
    for perm in itertools.permutations(range(n - 1)):
        M = [[ONE if perm[i] == j else ZERO for j in range(n - 1)] for i in range(n - 1)]
        out.append(CoordChange.linear(n, M))
    return out


def derived_shears(gens: Sequence[HoloPoly], n: int) -> list[CoordChange]:
    """Shears ``z_p -> z_p - Psi / K`` read off derivatives ``d^gamma g = K z_p + Psi``."""
    out = []
    seen = set()
    for g in gens:
        deg = g.degree()
        exps = {m for m in g.terms}
        gammas = {(0,) * n}
        for m in exps:
            for sub in itertools.product(*(range(e + 1) for e in m)):
                if sum(sub) < deg:
                    gammas.add(sub)
        for gamma in sorted(gammas):
            d = g.diff_multi(gamma)
            if d.constant_term() or not d:
                continue
            lin = d.linear_part()
            for p, K in sorted(lin.items()):
                if p == 1:
                    continue
                psi = d - HoloPoly.var(n, p).scale(K)
                if not psi or psi.depends_on(p) or psi.depends_on(1):
                    continue
                ch = CoordChange.shear(n, p, ONE, psi.scale(-ONE / K))
                if ch.images not in seen:
                    seen.add(ch.images)
                    out.append(ch)
    return out


def coordinate_family(gens: Sequence[HoloPoly], n: int, depth: int, cap: int) -> list[CoordChange]:
    """Identity, shear chains up to ``depth`` derived recursively from the generators, and
    every variable permutation applied after them."""
    family = [CoordChange.identity(n)]
    frontier = [(CoordChange.identity(n), list(gens))]
    seen = {family[0].images}
    for _ in range(depth):
        nxt = []
        for ch, cur in frontier:
            for sh in derived_shears(cur, n):
                total = ch.then(sh)
                if total.images in seen:
                    continue
                seen.add(total.images)
                family.append(total)
                nxt.append((total, [substitute(g, sh) for g in cur]))
                if len(family) >= cap:
                    break
            if len(family) >= cap:
                break
        frontier = nxt
        if not frontier or len(family) >= cap:
            break
    perms = _permutations(n)
    return [ch.then(p) for ch in family for p in perms]


def brute_multitype(generators: Sequence[HoloPoly], bounds: OracleBounds | None = None) -> OracleResult:
    """Lex-largest distinguished weight over the coordinate family."""
    bounds = bounds or OracleBounds()
    gens = [g for g in generators if g]
    n = gens[0].nvars
    depth = bounds.shear_depth if bounds.shear_depth is not None else n - 1
    family = coordinate_family(gens, n, depth, bounds.max_family)
    for extra in bounds.extra_changes:
        family.append(extra)
    best = None
    best_change = family[0]
    per = []
    for ch in family:
        cur = [substitute(g, ch) for g in gens]
        w = greedy_weight(cur, n)
        per.append((ch, w))
        if w is None:
            continue
        if best is None or lex_compare(w, best) > 0:
            best, best_change = w, ch
    if best is None:
        best = Weight([1] + [INF] * (n - 1))
    exceeded = any(x != INF and x > bounds.max_value for x in best)
    return OracleResult(best, best_change, exceeded, len(family), per)
