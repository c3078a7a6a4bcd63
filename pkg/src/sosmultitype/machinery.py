"""Jacobians, derivatives of ideals along holomorphic fields, and Levi-form products.

A tangential (1,0) field is stored by its row ``v = (v_2, ..., v_n)``; the
generators never depend on ``z1`` so the row determines every ideal-level
computation.  Rows may live in a larger ring ``z1..zn, t_1..t_m`` where the
extra variables are symbolic direction parameters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import GaussianRational, HoloPoly, MixedPoly, expand_squares
from .errors import NotAdmissible
from .weights import HALF, INF


@dataclass(frozen=True)
class VectorField:
    """Row ``(v_2, ..., v_n)`` of holomorphic coefficients."""

    coeffs: tuple
    n: int  # number of geometric variables z1..zn

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} coefficients, got {len(self.coeffs)}")

    @property
    def nvars(self) -> int:
        return self.coeffs[0].nvars

    @classmethod
    def constant(cls, n: int, row: Sequence, nvars: int | None = None) -> VectorField:
        nv = nvars or n
        return cls(tuple(HoloPoly.const(nv, GaussianRational.coerce(x)) for x in row), n)

    @classmethod
    def coordinate(cls, n: int, k: int, nvars: int | None = None) -> VectorField:
        """``d/dz_k`` for ``2 <= k <= n``."""
        if not 2 <= k <= n:
            raise ValueError(f"coordinate field index {k} outside 2..{n}")
        return cls.constant(n, [1 if j == k else 0 for j in range(2, n + 1)], nvars)

    @classmethod
    def symbolic(cls, n: int, basis: Sequence[Sequence], offset: int = 0,
                 nvars: int | None = None) -> VectorField:
        """``sum_i t_{offset+i} * basis[i]`` with ``t_k`` the ring variable ``z_{n+k}``."""
        nv = nvars or n + offset + len(basis)
        coeffs = []
        for slot in range(n - 1):
            p = HoloPoly.zero(nv)
            for i, b in enumerate(basis):
                c = GaussianRational.coerce(b[slot])
                if c:
                    p = p + HoloPoly.var(nv, n + offset + i + 1).scale(c)
            coeffs.append(p)
        return cls(tuple(coeffs), n)

    def extend(self, nvars: int) -> VectorField:
        return VectorField(tuple(c.extend(nvars) for c in self.coeffs), self.n)

    def is_constant(self) -> bool:
        return all(all(not any(m) for m in c.terms) for c in self.coeffs)

    def constant_row(self) -> list[GaussianRational]:
        if not self.is_constant():
            raise ValueError("vector field has non-constant coefficients")
        return [c.constant_term() for c in self.coeffs]

    def apply(self, p: HoloPoly) -> HoloPoly:
        if p.nvars != self.nvars:
            p = p.extend(self.nvars)
        out = HoloPoly.zero(self.nvars)
        for k in range(2, self.n + 1):
            c = self.coeffs[k - 2]
            if c:
                d = p.diff(k)
                if d:
                    out = out + c * d
        return out

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.n)

    def scale(self, c) -> VectorField:
        return VectorField(tuple(a.scale(c) for a in self.coeffs), self.n)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class Ideal:
    gens: tuple

    def __init__(self, gens: Sequence[HoloPoly]) -> None:
        object.__setattr__(self, "gens", tuple(gens))

    @property
    def nvars(self) -> int:
        return self.gens[0].nvars if self.gens else 0

    def extend(self, nvars: int) -> Ideal:
        return Ideal([g.extend(nvars) for g in self.gens])

    def is_zero(self) -> bool:
        return all(not g for g in self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __getitem__(self, i):
        return self.gens[i]


@dataclass(frozen=True)
class ListSpec:
    """A list of fields ``L^1..L^l``; each entry is ``(field label, conjugated)``."""

    entries: tuple
    fields: Mapping = field(default_factory=dict)

    def __init__(self, entries: Sequence[tuple[int, bool]], fields: Mapping[int, VectorField] | None = None
                 ) -> None:
        object.__setattr__(self, "entries", tuple((int(k), bool(c)) for k, c in entries))
        object.__setattr__(self, "fields", dict(fields or {}))

    @classmethod
    def equally_ordered(cls, counts: Mapping[int, int], fields: Mapping[int, VectorField]) -> ListSpec:
        """Build ``L_k, Lbar_k`` pairs, highest label first, ``counts[k]`` pairs each."""
        entries = []
        for k in sorted(counts, reverse=True):
            entries += [(k, False), (k, True)] * counts[k]
        return cls(entries, fields)

    @classmethod
    def holomorphic(cls, labels: Sequence[int], fields: Mapping[int, VectorField]) -> ListSpec:
        return cls([(k, False) for k in labels], fields)

    def __len__(self) -> int:
        return len(self.entries)

    def counts(self) -> dict[int, int]:
        """``l_k``: occurrences of ``L_k`` or ``Lbar_k``."""
        out: dict[int, int] = {}
        for k, _ in self.entries:
            out[k] = out.get(k, 0) + 1
        return out

    def is_ordered(self) -> bool:
        labels = [k for k, _ in self.entries]
        return all(a >= b for a, b in zip(labels, labels[1:]))

    def is_equally_ordered(self) -> bool:
        if not self.entries or len(self.entries) % 2 or not self.is_ordered():
            return False
        for i in range(0, len(self.entries), 2):
            (k1, c1), (k2, c2) = self.entries[i], self.entries[i + 1]
            if k1 != k2 or c1 or not c2:
                return False
        return True

    def holomorphic_half(self) -> list[VectorField]:
        if not self.is_equally_ordered():
            raise ValueError("list is not equally ordered")
        return [self.fields[k] for k, _ in self.entries[0::2]]

    def half_counts(self) -> dict[int, int]:
        """``s_k``: occurrences of ``L_k`` in the holomorphic half."""
        return {k: v // 2 for k, v in self.counts().items()}


def jacobian(I: Ideal | Sequence[HoloPoly], n: int | None = None) -> list[list[HoloPoly]]:
    """``(n-1) x N`` matrix with entry ``(l, j) = d f_j / d z_{l+2}``."""
    gens = list(I)
    if not gens:
        return []
    n = n or gens[0].nvars
    return [[g.diff(l) for g in gens] for l in range(2, n + 1)]


def apply_vf(L: VectorField, I: Ideal | Sequence[HoloPoly]) -> Ideal:
    return Ideal([L.apply(g) for g in I])


def derivative_ideal(Lh: Sequence[VectorField] | ListSpec, I: Ideal | Sequence[HoloPoly]) -> Ideal:
    """``<(L^1 ... L^k) f>``: ``L^k`` is applied first and ``L^1`` last."""
    if isinstance(Lh, ListSpec):
        if any(c for _, c in Lh.entries):
            raise ValueError("derivative_ideal takes unconjugated fields only")
        Lh = [Lh.fields[k] for k, _ in Lh.entries]
    out = Ideal(list(I))
    for L in reversed(list(Lh)):
        out = apply_vf(L, out)
    return out


def levi_product(A: Ideal | Sequence[HoloPoly], B: Ideal | Sequence[HoloPoly],
                 v: VectorField, w: VectorField) -> MixedPoly:
    """``v J(A) J*(B) w*`` as a mixed polynomial."""
    A, B = list(A), list(B)
    if len(A) != len(B):
        raise ValueError(f"generator-count mismatch: {len(A)} vs {len(B)}")
    nv = max(v.nvars, w.nvars, *(g.nvars for g in A + B))
    v, w = v.extend(nv), w.extend(nv)
    out = MixedPoly.zero(nv)
    for a, b in zip(A, B):
        va = v.apply(a.extend(nv) if a.nvars < nv else a)
        wb = w.apply(b.extend(nv) if b.nvars < nv else b)
        if va and wb:
            out = out + va.to_mixed() * wb.conjugate()
    return out


def script_L_partial_r(Ls: ListSpec, I: Ideal | Sequence[HoloPoly]) -> MixedPoly:
    """``L^1 ... L^{l-2} dr([L^{l-1}, L^l])`` for an equally-ordered list.

    Equals ``v^1 J(L'_h f) J*(L'_h f) (v^1)*`` where ``L'_h`` drops the first
    holomorphic field.
    """
    if len(Ls) < 2 or not Ls.is_equally_ordered():
        raise ValueError("script_L_partial_r needs an equally-ordered list of length >= 2")
    Lh = Ls.holomorphic_half()
    F = derivative_ideal(Lh[1:], I)
    return levi_product(F, F, Lh[0], Lh[0])


def h_function(Lh: Sequence[VectorField], I: Ideal | Sequence[HoloPoly]) -> MixedPoly:
    """``v^2 J(L''_h f) J*(L'_h f) (v^1)*``, read as ``sum_j (L'_h f)_j conj((L_h f)_j)``.

    For a one-element list this is ``sum_j f_j conj(L f_j)``.
    """
    Lh = list(Lh)
    if not Lh:
        raise ValueError("h_function needs a nonempty holomorphic list")
    lower = derivative_ideal(Lh[1:], I)
    full = apply_vf(Lh[0], lower)
    nv = full.nvars
    out = MixedPoly.zero(nv)
    for a, b in zip(lower, full):
        if a and b:
            out = out + a.extend(nv).to_mixed() * b.conjugate()
    return out


def value_at_zero(p: MixedPoly, n: int) -> MixedPoly:
    """Set ``z1..zn`` (and conjugates) to zero, keeping any symbolic parameters."""
    return p.restrict(range(n + 1, p.nvars + 1))


def solve_c(s_counts: Mapping[int, int], c_prev: Mapping[int, object], nu: int) -> Fraction:
    """Solve ``sum_{k<nu} s_k / c_k + s_nu / c = 1/2`` for ``c``."""
    s_nu = s_counts.get(nu, 0)
    if s_nu <= 0:
        raise NotAdmissible(f"s_{nu} = 0: list is not {nu}-admissible")
    gap = HALF
    for k, s in s_counts.items():
        if k < nu and s:
            ck = c_prev[k]
            if ck != INF:
                gap -= Fraction(s) / ck
        elif k > nu and s:
            raise NotAdmissible(f"field index {k} exceeds nu = {nu}")
    if gap <= 0:
        raise NotAdmissible(f"accumulated weight leaves no room (gap {gap})")
    return Fraction(s_nu) / gap


def to_ideal(gens: Sequence[HoloPoly]) -> Ideal:
    return Ideal(gens)


def levi_identity_holds(I: Ideal, v: VectorField) -> bool:
    """``levi_product(I, I, v, v) == expand_squares(apply_vf(v, I))``."""
    lhs = levi_product(I, I, v, v)
    gens = [g for g in apply_vf(v, I) if g]
    if not gens:
        return lhs.is_zero()
    return lhs == expand_squares(gens)
