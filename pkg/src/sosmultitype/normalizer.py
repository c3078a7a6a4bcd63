"""Shear extraction from model derivatives, complete normalization, balanced chains
and the torsion sweep."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (CoordChange, GaussianRational, HoloPoly, MixedPoly, Monomial, ONE, ZERO as ZERO_GR,
                      expand_squares, grlex_key, substitute)
from .engine import (EngineOptions, _directions, _levi_reduce, _relabel, _shape_counts, _shapes, compute,
                     evaluate_params, levi_rank, symbolic_F0)
from .errors import NotAdmissible, TorsionDetected, ZeroPivot
from .weights import HALF, INF, Weight, is_distinguished, model_extract, weighted_degree


@dataclass(frozen=True)
class ShearResult:
    K: GaussianRational
    pivot: int
    Psi: HoloPoly
    F: HoloPoly
    monomial: Monomial

    def change(self) -> CoordChange:
        """``z_pivot -> z_pivot - Psi / K``: afterwards ``F`` is ``K z_pivot``."""
        n = self.F.nvars
        return CoordChange.shear(n, self.pivot, ONE, self.Psi.scale(-ONE / self.K))


def _unit(n: int, var: int) -> Monomial:
    return tuple(1 if i == var - 1 else 0 for i in range(n))


def derivative_F(tail: MixedPoly, alpha: Monomial, pivot: int) -> MixedPoly:
    """``D^{alpha - e_pivot} Dbar^{alpha}`` applied to the tail."""
    alpha0 = tuple(a - (1 if i == pivot - 1 else 0) for i, a in enumerate(alpha))
    return tail.diff_multi(alpha0, alpha)


def lemma_shear(model_gens: Sequence[HoloPoly], f: Monomial, lam: Weight | Sequence,
                pivot: int | None = None, tail: MixedPoly | None = None) -> ShearResult:
    """Differentiate the model tail along ``f`` and split the result as ``K z_pivot + Psi``.

    The pivot defaults to the smallest index in the support of ``f``.
    """
    gens = [g for g in model_gens if g]
    if not gens:
        raise ValueError("lemma_shear needs a nonzero model generator")
    n = gens[0].nvars
    for g in gens:
        for m in g.terms:
            if weighted_degree(m, None, lam) != HALF:
                raise ValueError(f"not a model: a term has weighted degree {weighted_degree(m, None, lam)}")
    if not any(f in g.terms for g in gens):
        raise ValueError(f"monomial {f} does not occur in the model generators")
    if weighted_degree(f, None, lam) != HALF:
        raise ValueError(f"monomial {f} does not have weighted degree 1/2")
    support = [i + 1 for i, e in enumerate(f) if e]
    pivot = pivot if pivot is not None else support[0]
    if pivot not in support:
        raise ValueError(f"pivot z{pivot} is not in the support of the monomial")
    if tail is None:
        tail = expand_squares(gens)
    F = derivative_F(tail, f, pivot)
    if not F.is_holomorphic():
        raise TorsionDetected(f"antiholomorphic terms in F: {F}")
    Fh = F.to_holo()
    K = Fh.coeff(_unit(n, pivot))
    if not K:
        raise ZeroPivot(f"coefficient of z{pivot} vanishes in F = {Fh}")
    Psi = Fh - HoloPoly.var(n, pivot).scale(K)
    if Psi.depends_on(pivot):
        raise TorsionDetected(f"Psi depends on the pivot z{pivot}: {Psi}")
    return ShearResult(K, pivot, Psi, Fh, f)


def psi_weights_ok(res: ShearResult, lam: Weight | Sequence) -> bool:
    """Every monomial of ``Psi`` weighs exactly ``1 / lam_pivot`` (the weight of ``z_pivot``)."""
    target = weighted_degree(_unit(res.F.nvars, res.pivot), None, lam)
    return all(weighted_degree(m, None, lam) == target for m in res.Psi.terms)


# -- balanced chains ------------------------------------------------------------------

def _max_support(m: Monomial) -> int:
    return max((i + 1 for i, e in enumerate(m) if e), default=0)


def find_balanced_chain(model_gens: Sequence[HoloPoly], lam: Weight | Sequence) -> list[Monomial] | None:
    """Monomials ``f(j) = z_2^{k_j2} ... z_j^{k_jj}`` with ``k_jj > 0`` for ``j = 2..n``.

    A member must be (a scalar multiple of) a whole generator of the model, so
    that ``|f(j)|^2`` is a genuine square of the sum.
    """
    gens = [g for g in model_extract(model_gens, lam) if g]
    if not gens:
        return None
    n = gens[0].nvars
    singles = sorted({next(iter(g.terms)) for g in gens if len(g) == 1}, key=grlex_key)
    chain = []
    for j in range(2, n + 1):
        pick = next((m for m in singles if _max_support(m) == j), None)
        if pick is None:
            return None
        chain.append(pick)
    return chain


# -- torsion ---------------------------------------------------------------------------

@dataclass
class TorsionReport:
    checked: int = 0
    violations: list = field(default_factory=list)  # (monomial, reason)

    @property
    def torsion_free(self) -> bool:
        return not self.violations


def torsion_check(model_gens: Sequence[HoloPoly], lam: Weight | Sequence,
                  tail: MixedPoly | None = None) -> TorsionReport:
    """Run the shear extraction on every weight-1/2 monomial of every generator."""
    gens = [g for g in model_extract(model_gens, lam) if g]
    report = TorsionReport()
    if not gens:
        return report
    if tail is None:
        tail = expand_squares(gens)
    seen = set()
    for g in gens:
        for m in g.monomials():
            if m in seen:
                continue
            seen.add(m)
            report.checked += 1
            F = derivative_F(tail, m, _min_support(m))
            if not F.is_holomorphic():
                report.violations.append((m, f"antiholomorphic terms {F.antiholomorphic_terms()[:3]}"))
    return report


def _min_support(m: Monomial) -> int:
    return min(i + 1 for i, e in enumerate(m) if e)


# -- complete normalization ----------------------------------------------------------

@dataclass
class NormalizationResult:
    generators: list
    changes: list
    composite: CoordChange
    shears: list  # ShearResult per normalized index, from the final pass
    chain: list | None
    rounds: int = 0


def _stage_witness(gens: list[HoloPoly], n: int, j: int, q: int, c_prev: dict, target):
    """Witness shape and concrete direction for index ``j``, chosen exactly as the engine does."""
    shapes = _shapes(gens, j, c_prev, q).get(target, [])
    for shape in shapes:
        counts = _shape_counts(shape, q, j)
        F0 = symbolic_F0(gens, n, j, counts)
        if F0.is_zero():
            continue
        for t in _directions(n - j + 1, EngineOptions().grid):
            if evaluate_params(F0, n, t):
                return counts, [ZERO_GR] * (j - 2) + t
    return None


def normalize_boundary_system(generators: Sequence[HoloPoly], lam: Weight | Sequence,
                              max_rounds: int = 8) -> NormalizationResult:
    """Bring distinguished coordinates to the form where every ``F_j`` is ``K_j z_j``.

    For each finite entry the witness direction is turned into the ``j``-th axis
    by a linear change inside the block of variables of equal weight, then the
    shear ``z_j -> z_j - Psi_j / K_j`` from the model derivative is applied.
    Sweeps repeat until a full pass changes nothing.  Coordinates that are not yet
    distinguished for ``lam`` are first moved by the engine's own changes, which
    is only allowed when ``lam`` is the multitype.
    """
    gens = [g for g in generators if g]
    n = gens[0].nvars
    lam = Weight(lam)
    changes: list[CoordChange] = []
    ok, offender = is_distinguished(gens, lam)
    if not ok:
        res = compute(gens)
        if res.multitype != lam:
            raise NotAdmissible(f"coordinates are not distinguished for {lam}: offending term {offender}")
        changes += res.changes
        gens = list(res.final_generators)
    levi = levi_rank(gens, n)
    q = levi.q
    if any(lam[k - 1] != 2 for k in range(2, q + 2)) or any(lam[k - 1] == 2 for k in range(q + 2, n + 1)):
        raise NotAdmissible(f"weight {lam} does not match the Levi rank {q}")
    gens, _ = _levi_reduce(gens, n, levi, changes)
    c_prev = {k: lam[k - 1] for k in range(2, n + 1)}
    shears: list = []
    rounds = 0
    for rounds in range(1, max_rounds + 1):
        moved = False
        shears = []
        for j in range(q + 2, n + 1):
            if lam[j - 1] == INF:
                break
            found = _stage_witness(gens, n, j, q, c_prev, lam[j - 1])
            if found is None:
                raise NotAdmissible(f"no witness direction for index {j} at weight {lam[j - 1]}")
            counts, direction = found
            relabel = _relabel(n, j, direction)
            if not relabel.is_identity():
                gens = [substitute(g, relabel) for g in gens]
                changes.append(relabel)
                moved = True
            f = tuple(counts.get(k, 0) for k in range(1, n + 1))
            model = [g for g in model_extract(gens, lam) if g]
            res = lemma_shear(model, f, lam, pivot=j)
            shears.append(res)
            if res.Psi:
                ch = res.change()
                gens = [substitute(g, ch) for g in gens]
                changes.append(ch)
                moved = True
        if not moved:
            break
    composite = CoordChange.identity(n)
    for ch in changes:
        composite = composite.then(ch)
    return NormalizationResult(gens, changes, composite, shears, find_balanced_chain(gens, lam), rounds)
