"""Commutator multitype, boundary systems and the boundary-system ideal.

The pipeline works on the generators of the ideal directly:

* the Levi block is split off by an exact linear change followed by pivot
  shears, giving ``c_2 = ... = c_{q+1} = 2``;
* for ``nu = q+2..n`` candidate values come from the moduli squares of
  generator monomials (crossterms never lower the infimum), and each candidate
  is certified by evaluating the derivative of the Levi form along a symbolic
  direction in ``T_nu``;
* the accepted direction becomes the ``nu``-th axis and a shear turns the
  function ``h_nu`` into a coordinate.

The result is only returned once the final weight passes the
distinguished-weight check on the transformed generators.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import (CoordChange, GaussianRational, HoloPoly, I_UNIT, MixedPoly, Monomial, ONE, ZERO,
                      grlex_key, substitute)
from .errors import (CandidateBoundExceeded, HolomorphyViolation, NormalizationFailure,
                     RequiresPreNormalization)
from .linalg import kernel, rank
from .machinery import Ideal, ListSpec, VectorField, apply_vf, derivative_ideal, h_function, script_L_partial_r, value_at_zero
from .weights import HALF, INF, Weight, is_distinguished, is_weight, model_extract

GR = GaussianRational


# -- X-value calculus ------------------------------------------------------------

def _prefix_sum(alpha: Monomial, nu: int, c_prev: Mapping[int, object]) -> Fraction:
    total = Fraction(0)
    for k in range(2, nu):
        a = alpha[k - 1]
        if a:
            ck = c_prev[k]
            if ck != INF:
                total += Fraction(a) / ck
    return total


def nu_part(alpha: Monomial, nu: int) -> int:
    """Total degree in ``z_nu..z_n``: every such variable is a ``T_nu`` direction."""
    return sum(alpha[nu - 1:])


def x_square(alpha: Monomial, nu: int, c_prev: Mapping[int, object]):
    """``X(|z^alpha|^2) = s_nu / (1/2 - sum_{k<nu} alpha_k / c_k)``, or ``inf``."""
    s = nu_part(alpha, nu)
    gap = HALF - _prefix_sum(alpha, nu, c_prev)
    if s == 0 or gap <= 0:
        return INF
    return Fraction(s) / gap


def x_crossterm(alpha_f: Monomial, alpha_g: Monomial, nu: int, c_prev: Mapping[int, object]):
    """``X(f gbar) = (l_nu + lhat_nu) / (1 - sum_{k<nu} (l_k + lhat_k) / c_k)``, or ``inf``."""
    s = nu_part(alpha_f, nu) + nu_part(alpha_g, nu)
    gap = 1 - _prefix_sum(alpha_f, nu, c_prev) - _prefix_sum(alpha_g, nu, c_prev)
    if s == 0 or gap <= 0:
        return INF
    return Fraction(s) / gap


@dataclass(frozen=True)
class CrosstermVerdict:
    label: str  # "A(i)", "A(ii)", "B(i)", "B(ii)" or "outside"
    ok: bool
    x_f: object
    x_g: object
    x_fg: object
    detail: str = ""


def is_model_monomial(alpha: Monomial, nu: int, c_prev: Mapping[int, object]) -> bool:
    """Monomials with no ``T_nu`` part already weigh at least 1/2 (earlier stages are distinguished)."""
    return nu_part(alpha, nu) > 0 or _prefix_sum(alpha, nu, c_prev) >= HALF


def crossterm_verdict(f: Monomial, g: Monomial, nu: int, c_prev: Mapping[int, object]) -> CrosstermVerdict:
    """Classify a crossterm and check the matching (in)equality exactly."""
    xf, xg, xfg = x_square(f, nu, c_prev), x_square(g, nu, c_prev), x_crossterm(f, g, nu, c_prev)
    if not (is_model_monomial(f, nu, c_prev) and is_model_monomial(g, nu, c_prev)):
        return CrosstermVerdict("outside", True, xf, xg, xfg,
                                "a monomial without T_nu part weighs < 1/2; no claim")
    if xf != INF and xg != INF:
        lo, hi = min(xf, xg), max(xf, xg)
        if lo == hi:
            return CrosstermVerdict("A(i)", xfg == lo, xf, xg, xfg)
        return CrosstermVerdict("A(ii)", lo < xfg < hi, xf, xg, xfg)
    if xf == INF and xg == INF:
        return CrosstermVerdict("B(i)", xfg == INF, xf, xg, xfg)
    finite = xg if xf == INF else xf
    return CrosstermVerdict("B(ii)", xfg >= finite, xf, xg, xfg)


def candidate_values(gens: Sequence[HoloPoly], nu: int, c_prev: Mapping[int, object],
                     crossterms: bool = False, skip_vars: Sequence[int] = ()) -> set:
    """Finite X-values of all squares (and optionally all crossterms within a generator)."""
    out = set()
    for g in gens:
        monos = [m for m in g.terms if not any(m[k - 1] for k in skip_vars)]
        for m in monos:
            x = x_square(m, nu, c_prev)
            if x != INF:
                out.add(x)
        if crossterms:
            for a, b in itertools.combinations(monos, 2):
                x = x_crossterm(a, b, nu, c_prev)
                if x != INF:
                    out.add(x)
    return out


# -- results ------------------------------------------------------------------------

@dataclass
class EngineOptions:
    max_candidate: Fraction | None = None
    verify_oracle: bool = False
    # testing hook: discard this many certified candidates at the first commutator stage
    sabotage_skip: int = 0
    grid: tuple = (1, 2, -1, I_UNIT, 3)


@dataclass
class StageRecord:
    index: int
    c: object
    kind: str  # "levi" or "commutator"
    counts: dict  # s_k for the holomorphic half of the witness list
    direction: tuple  # concrete row in the coordinates before relabelling
    relabel: CoordChange
    shear: CoordChange
    h: HoloPoly  # h_nu in the relabelled coordinates, before the shear
    C: GaussianRational
    psi: HoloPoly
    r_choice: str
    generators_before: list
    generators_after: list
    rejected: list = field(default_factory=list)  # (value, counts) with vanishing F(0)
    symbolic_value: MixedPoly | None = None
    h_final: HoloPoly | None = None
    psi_model: HoloPoly | None = None  # model-level part of psi; zero in normalized coordinates

    def witness_entries(self) -> list[tuple[int, bool]]:
        entries = []
        for k in sorted(self.counts, reverse=True):
            entries += [(k, False), (k, True)] * self.counts[k]
        return entries

    def witness_names(self) -> list[str]:
        return [f"L{k}bar" if c else f"L{k}" for k, c in self.witness_entries()]


@dataclass
class LeviData:
    q: int
    fields: list  # rows v_2..v_{q+1} (original coordinates)
    kernel: list  # basis rows of the complementary kernel
    matrix: list  # linear parts, one row per generator


@dataclass
class BoundarySystem:
    n: int
    q: int
    stages: list
    changes: list

    def c_entries(self) -> list:
        return [s.c for s in self.stages]

    def fields(self) -> list[VectorField]:
        return [VectorField.coordinate(self.n, s.index) for s in self.stages]


@dataclass
class MultitypeResult:
    n: int
    multitype: Weight
    levi: LeviData
    boundary_system: BoundarySystem
    ideal: list
    changes: list
    composite: CoordChange
    input_generators: list
    canonical_generators: list
    final_generators: list
    verified: bool
    bound: Fraction

    def as_tuple(self):
        return self.multitype, self.boundary_system, self.ideal, self.changes


# -- helpers ------------------------------------------------------------------------

def canonicalize(gens: Sequence[HoloPoly]) -> list[HoloPoly]:
    """Drop zeros, rotate each generator by a unit so its leading coefficient is in the
    first quadrant, and sort.  The expanded tail is unchanged."""
    out = []
    for g in gens:
        if not g:
            continue
        c = g.items()[0][1]
        unit = ONE
        for _ in range(4):
            cc = c * unit
            if cc.re > 0 and cc.im >= 0:
                break
            unit = unit * I_UNIT
        out.append(g.scale(unit))
    return sorted(out, key=lambda p: [(grlex_key(m), c.re, c.im) for m, c in p.items()])


def _apply(gens: Sequence[HoloPoly], ch: CoordChange) -> list[HoloPoly]:
    return [substitute(g, ch) for g in gens]


def levi_rank(I: Ideal | Sequence[HoloPoly], n: int | None = None) -> LeviData:
    gens = list(I)
    n = n or (gens[0].nvars if gens else 2)
    mat = []
    for g in gens:
        lin = g.linear_part()
        mat.append([lin.get(k, ZERO) for k in range(2, n + 1)])
    q = rank(mat) if mat else 0
    ker = kernel(mat, n - 1) if mat else [[ONE if i == j else ZERO for i in range(n - 1)] for j in range(n - 1)]
    # complement of the kernel from standard vectors, then Gram-Schmidt for the Levi form
    chosen: list = []
    for j in range(n - 1):
        if len(chosen) == q:
            break
        e = [ONE if i == j else ZERO for i in range(n - 1)]
        if rank(ker + chosen + [e]) > len(ker) + len(chosen):
            chosen.append(e)
    fields = _levi_gram_schmidt(chosen, mat)
    return LeviData(q, fields, ker, mat)


def _levi_gram_schmidt(vectors: list, mat: list) -> list:
    def form(u, w):
        return sum(((sum((a * x for a, x in zip(row, u)), ZERO)) *
                    (sum((a * x for a, x in zip(row, w)), ZERO)).conjugate() for row in mat), ZERO)

    out = []
    for u in vectors:
        w = list(u)
        for b in out:
            k = form(w, b) / form(b, b)
            w = [x - k * y for x, y in zip(w, b)]
        out.append(w)
    return out


def _levi_reduce(gens: list[HoloPoly], n: int, levi: LeviData, log: list):
    """Make the Levi generators coordinates; returns stages and the new generators."""
    q = levi.q
    stages = []
    if q == 0:
        return gens, stages
    cols = levi.fields + levi.kernel
    M = [[cols[j][i] for j in range(n - 1)] for i in range(n - 1)]
    lin = CoordChange.linear(n, M)
    if not lin.is_identity():
        gens = _apply(gens, lin)
        log.append(lin)
    for k in range(2, q + 2):
        before = list(gens)
        consts = [g.diff(k).constant_term() for g in gens]
        h = HoloPoly.zero(n)
        for g, c in zip(gens, consts):
            if c:
                h = h + g.scale(c.conjugate())
        C, psi = split_coordinate(h, k)
        if not C:
            raise RequiresPreNormalization(
                f"Levi function h_{k} = {h} cannot be made a coordinate by a polynomial shear")
        shear = CoordChange.shear(n, k, ONE, psi.scale(-ONE / C))
        if not shear.is_identity():
            gens = _apply(gens, shear)
            log.append(shear)
        stages.append(StageRecord(
            index=k, c=Fraction(2), kind="levi", counts={k: 1},
            direction=tuple(ONE if j == k else ZERO for j in range(2, n + 1)),
            relabel=CoordChange.identity(n), shear=shear, h=h, C=C, psi=psi, r_choice="Re",
            generators_before=before, generators_after=list(gens), psi_model=psi))
    return gens, stages


def _shapes(gens: Sequence[HoloPoly], nu: int, c_prev: Mapping[int, object], q: int) -> dict:
    """Map candidate value -> sorted list of shape tuples ``(s_{q+2}, ..., s_nu)``."""
    out: dict = {}
    for g in gens:
        for m in g.terms:
            if any(m[k - 1] for k in range(1, q + 2)):
                continue
            x = x_square(m, nu, c_prev)
            if x == INF:
                continue
            shape = tuple(m[k - 1] for k in range(q + 2, nu)) + (nu_part(m, nu),)
            out.setdefault(x, set()).add(shape)
    return {x: sorted(v, key=lambda s: (sum(s), tuple(-a for a in s))) for x, v in out.items()}


def _shape_counts(shape: tuple, q: int, nu: int) -> dict:
    counts = {k: shape[k - q - 2] for k in range(q + 2, nu) if shape[k - q - 2]}
    counts[nu] = shape[-1]
    return counts


def symbolic_F0(gens: Sequence[HoloPoly], n: int, nu: int, counts: Mapping[int, int]) -> MixedPoly:
    """``F(0)`` for the witness shape with a symbolic direction ``sum_k t_k e_k`` over ``k >= nu``."""
    m = n - nu + 1
    basis = [[ONE if j == k else ZERO for j in range(2, n + 1)] for k in range(nu, n + 1)]
    nv = n + m
    fields = {k: VectorField.coordinate(n, k, nv) for k in counts if k != nu}
    fields[nu] = VectorField.symbolic(n, basis, nvars=nv)
    Ls = ListSpec.equally_ordered(counts, fields)
    value = script_L_partial_r(Ls, [g.extend(nv) for g in gens])
    return value_at_zero(value, n)


def concrete_F0(gens: Sequence[HoloPoly], n: int, nu: int, counts: Mapping[int, int],
                direction: Sequence) -> GaussianRational:
    """``F(0)`` for the witness shape along a concrete constant direction."""
    fields = {k: VectorField.coordinate(n, k) for k in counts if k != nu}
    fields[nu] = VectorField.constant(n, direction)
    Ls = ListSpec.equally_ordered(counts, fields)
    return script_L_partial_r(Ls, gens).constant_term()


def evaluate_params(p: MixedPoly, n: int, values: Sequence[GaussianRational]) -> GaussianRational:
    vals = [GR.coerce(v) for v in values]
    conj = [v.conjugate() for v in vals]
    total = ZERO
    for (a, b), c in p.terms.items():
        t = c
        for i in range(n, p.nvars):
            if a[i]:
                t = t * vals[i - n] ** a[i]
            if b[i]:
                t = t * conj[i - n] ** b[i]
        total = total + t
    return total


def _directions(m: int, grid: Sequence) -> list[list[GaussianRational]]:
    """Unit vectors, then pairwise sums, then a small grid (all over ``m`` slots)."""
    out = []
    for i in range(m):
        out.append([ONE if j == i else ZERO for j in range(m)])
    for i, j in itertools.combinations(range(m), 2):
        out.append([ONE if k in (i, j) else ZERO for k in range(m)])
    vals = [GR.coerce(x) for x in grid]
    for combo in itertools.product([ZERO] + vals, repeat=m):
        if any(combo):
            out.append(list(combo))
    return out


def _relabel(n: int, nu: int, d: Sequence[GaussianRational]) -> CoordChange:
    """Linear change whose ``nu``-th axis is ``d`` (supported on ``nu..n``)."""
    size = n - 1
    M = [[ONE if i == j else ZERO for j in range(size)] for i in range(size)]
    col = nu - 2
    p = next(i for i in range(size) if d[i])
    for i in range(size):
        M[i][col] = d[i]
    if p != col:
        for i in range(size):
            M[i][p] = ONE if i == col else ZERO
    return CoordChange.linear(n, M)


def provisional_weight(n: int, q: int, c_prev: Mapping[int, object], nu: int, c_nu) -> Weight:
    entries = [Fraction(1)] + [Fraction(2)] * q
    entries += [c_prev[k] for k in range(q + 2, nu)]
    entries += [c_nu] * (n - nu + 1)
    return Weight(entries)


def split_coordinate(h: HoloPoly, var: int) -> tuple[GaussianRational, HoloPoly]:
    """``h = C z_var + Psi + z_var R`` with ``Psi`` free of ``z_var``; returns ``(C, Psi)``.

    The ``z_var R`` part only multiplies the new coordinate by a unit near 0.
    """
    n = h.nvars
    e = tuple(1 if i == var - 1 else 0 for i in range(n))
    psi = HoloPoly({m: c for m, c in h.terms.items() if not m[var - 1]}, n)
    return h.coeff(e), psi


def frozen_h(Lh: Sequence[VectorField], gens: Sequence[HoloPoly]) -> HoloPoly:
    """``sum_j (L'_h f_j) conj((L_h f_j)(0))``: the h function with the top derivative frozen at 0.

    At model level ``L_h f_j`` is constant, so this is the usual h function.
    """
    lower = derivative_ideal(Lh[1:], gens)
    top = apply_vf(Lh[0], lower)
    n = gens[0].nvars
    out = HoloPoly.zero(n)
    for a, b in zip(lower, top):
        c = b.constant_term()
        if c and a:
            out = out + a.scale(c.conjugate())
    return out


def default_bound(gens: Sequence[HoloPoly], n: int) -> Fraction:
    D = max((g.degree() for g in gens), default=1)
    return Fraction(2 * max(D, 1) ** max(n - 1, 1))


# -- the pipeline ---------------------------------------------------------------------

def compute(generators: Sequence[HoloPoly], opts: EngineOptions | None = None) -> MultitypeResult:
    opts = opts or EngineOptions()
    gens_in = list(generators)
    if not gens_in:
        raise ValueError("at least one generator is required")
    n = gens_in[0].nvars
    if n < 2:
        raise ValueError("need n >= 2")
    for g in gens_in:
        if g.nvars != n:
            raise ValueError("generators have mismatched nvars")
        if g.depends_on(1):
            raise ValueError("generators must not depend on z1")
        if g.constant_term():
            raise ValueError("generators must vanish at the origin")
    canon = canonicalize(gens_in)
    bound = opts.max_candidate if opts.max_candidate is not None else default_bound(canon, n)

    log: list[CoordChange] = []
    levi = levi_rank(canon, n)
    gens, stages = _levi_reduce(list(canon), n, levi, log)
    q = levi.q
    c_prev: dict = {k: Fraction(2) for k in range(2, q + 2)}
    sabotage = opts.sabotage_skip

    nu = q + 2
    while nu <= n:
        shapes = _shapes(gens, nu, c_prev, q)
        rejected = []
        found = None
        for x in sorted(shapes):
            for shape in shapes[x]:
                counts = _shape_counts(shape, q, nu)
                F0 = symbolic_F0(gens, n, nu, counts)
                if F0.is_zero():
                    rejected.append((x, counts))
                    continue
                if sabotage:
                    sabotage -= 1
                    rejected.append((x, counts))
                    continue
                found = (x, counts, F0)
                break
            if found:
                break
        if found is None:
            for k in range(nu, n + 1):
                c_prev[k] = INF
            break
        x, counts, F0 = found
        if x > bound:
            raise CandidateBoundExceeded(f"c_{nu} = {x} exceeds the candidate bound {bound}")
        m = n - nu + 1
        direction = None
        for t in _directions(m, opts.grid):
            if evaluate_params(F0, n, t):
                direction = [ZERO] * (nu - 2) + t
                break
        if direction is None:
            raise NormalizationFailure(f"no concrete direction found for c_{nu} = {x}")
        before = list(gens)
        relabel = _relabel(n, nu, direction)
        if not relabel.is_identity():
            gens = _apply(gens, relabel)
            log.append(relabel)
        lam = provisional_weight(n, q, c_prev, nu, x)
        model = model_extract(gens, lam)
        Lh = []
        for k in sorted(counts, reverse=True):
            Lh += [VectorField.coordinate(n, k)] * counts[k]
        h_mixed = h_function(Lh, model)
        if not h_mixed.is_holomorphic():
            raise HolomorphyViolation(f"h_{nu} has antiholomorphic terms: {h_mixed}")
        h_model = h_mixed.to_holo()
        C, psi_model = split_coordinate(h_model, nu)
        if not C or psi_model.depends_on(nu) or h_model != psi_model + HoloPoly.var(n, nu).scale(C):
            raise NormalizationFailure(f"h_{nu} = {h_model} is not of the form C z_{nu} + Psi")
        # the shear itself comes from the full generators; only the model part must be exact
        h = frozen_h(Lh, gens)
        C_full, psi = split_coordinate(h, nu)
        if C_full != C:
            raise NormalizationFailure(f"h_{nu}: model and full coefficients of z{nu} differ")
        r_choice = "Re" if C.re else "Im"
        shear = CoordChange.shear(n, nu, ONE, psi.scale(-ONE / C))
        if not shear.is_identity():
            gens = _apply(gens, shear)
            log.append(shear)
        c_prev[nu] = x
        stages.append(StageRecord(
            index=nu, c=x, kind="commutator", counts=counts, direction=tuple(direction),
            relabel=relabel, shear=shear, h=h, C=C, psi=psi, r_choice=r_choice,
            generators_before=before, generators_after=list(gens), rejected=rejected,
            symbolic_value=F0, psi_model=psi_model))
        if nu > q + 2 and c_prev[nu] < c_prev[nu - 1]:
            raise NormalizationFailure(f"c_{nu} = {x} < c_{nu - 1} = {c_prev[nu - 1]}")
        nu += 1

    entries = [Fraction(1)] + [c_prev[k] for k in range(2, n + 1)]
    lam = Weight(entries)
    ok, offender = is_distinguished(gens, lam)
    if not ok:
        raise NormalizationFailure(
            f"computed weight {lam} is not distinguished; offending term {offender}")
    if not is_weight(lam)[0]:
        raise NormalizationFailure(f"computed tuple {lam} is not a weight")

    composite = CoordChange.identity(n)
    for ch in log:
        composite = composite.then(ch)
    _finalize_h(stages, n)
    system = BoundarySystem(n, q, stages, log)
    ideal = boundary_system_ideal(system)
    return MultitypeResult(n=n, multitype=lam, levi=levi, boundary_system=system, ideal=ideal,
                           changes=log, composite=composite, input_generators=gens_in,
                           canonical_generators=canon, final_generators=gens, verified=True,
                           bound=bound)


def _finalize_h(stages: list[StageRecord], n: int) -> None:
    """Pull each stage's ``h`` through the shear and every later change."""
    for i, st in enumerate(stages):
        h = substitute(st.h, st.shear)
        for later in stages[i + 1:]:
            h = substitute(substitute(h, later.relabel), later.shear)
        st.h_final = h


def boundary_system_ideal(B: BoundarySystem) -> list[HoloPoly]:
    """``<h_2, ..., h_nu>`` in final coordinates, with the Jacobian conditions checked."""
    out = []
    for st in B.stages:
        h = st.h_final if st.h_final is not None else st.h
        if not isinstance(h, HoloPoly):
            raise HolomorphyViolation(f"h_{st.index} is not holomorphic")
        tau = st.index
        if not h.diff(tau).constant_term():
            raise HolomorphyViolation(f"v_{tau} J(h_{tau})(0) vanishes")
        for other in B.stages:
            if other.index > tau and h.diff(other.index).constant_term():
                raise HolomorphyViolation(f"v_{other.index} J(h_{tau})(0) is nonzero")
        out.append(h)
    return out
