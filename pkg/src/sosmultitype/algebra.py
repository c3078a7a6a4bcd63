"""Exact Gaussian-rational polynomial arithmetic.

Polynomials are sparse maps from exponent tuples to coefficients. A monomial
in ``n`` complex variables is a tuple of ``n`` nonnegative integers where slot
``0`` belongs to ``z1``.  Mixed polynomials in ``z`` and ``zbar`` are keyed by
pairs ``(alpha, beta)`` of such tuples.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

Monomial = tuple  # tuple[int, ...], slot i-1 holds the exponent of z_i
Number = Union[int, Fraction, "GaussianRational"]


class GaussianRational:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0) -> None:
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x: Number) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {x!r} to GaussianRational")

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other: Number) -> GaussianRational:
        if not isinstance(other, GaussianRational):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return GaussianRational(self.re + other, self.im)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: Number) -> GaussianRational:
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other: Number) -> GaussianRational:
        return GaussianRational.coerce(other) - self

    def __mul__(self, other: Number) -> GaussianRational:
        if not isinstance(other, GaussianRational):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return GaussianRational(self.re * other, self.im * other)
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> GaussianRational:
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        other = GaussianRational.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other: Number) -> GaussianRational:
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int) -> GaussianRational:
        if k < 0:
            return GaussianRational(1) / (self ** -k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"


def _imag_str(q: Fraction) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{q}i"


GR = GaussianRational
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


# -- monomials -----------------------------------------------------------------

def monomial(n: int, exps: Mapping[int, int] | None = None) -> Monomial:
    """Build an exponent tuple from a ``{variable index: exponent}`` map."""
    slots = [0] * n
    for var, e in (exps or {}).items():
        if not 1 <= var <= n:
            raise ValueError(f"variable z{var} outside z1..z{n}")
        if e < 0:
            raise ValueError("negative exponent")
        slots[var - 1] = e
    return tuple(slots)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_support(a: Monomial) -> list[int]:
    """Variable indices (1-based) with positive exponent."""
    return [i + 1 for i, e in enumerate(a) if e]


def grlex_key(a: Monomial) -> tuple:
    # lower degree first; within a degree z2^2 < z2*z3 < z3^2
    return (sum(a), tuple(-e for e in a))


def mono_str(a: Monomial, bar: bool = False) -> str:
    parts = []
    for i, e in enumerate(a):
        if not e:
            continue
        name = f"zbar{i + 1}" if bar else f"z{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _coeff_prefix(c: GaussianRational, first: bool, has_mono: bool) -> tuple[str, str]:
    """Sign and coefficient text for one term in a printed polynomial."""
    if c.im == 0:
        sign = "-" if c.re < 0 else "+"
        mag = abs(c.re)
        text = "" if (mag == 1 and has_mono) else str(mag)
    elif c.re == 0:
        sign = "-" if c.im < 0 else "+"
        mag = abs(c.im)
        text = "i" if mag == 1 else f"{mag}i"
    else:
        sign = "+"
        text = f"({c})"
    return sign, text


def _format_terms(items: list[tuple[str, GaussianRational]]) -> str:
    if not items:
        return "0"
    out = []
    for k, (mono, c) in enumerate(items):
        sign, text = _coeff_prefix(c, k == 0, bool(mono))
        body = text + ("*" if text and mono else "") + mono
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# -- polynomials ---------------------------------------------------------------

class _SparsePoly:
    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), nvars: int = 0) -> None:
        clean: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            c = GaussianRational.coerce(c)
            if c:
                prev = clean.get(key)
                if prev is None:
                    clean[key] = c
                else:
                    s = prev + c
                    if s:
                        clean[key] = s
                    else:
                        del clean[key]
        self.terms: dict = clean
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.nvars = nvars
        obj._hash = None
        return obj

    def _check(self, other: _SparsePoly) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError(f"mismatched nvars: {self.nvars} vs {other.nvars}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = type(self).const(self.nvars, other)
        if type(other) is not type(self):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = type(self).const(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            prev = terms.get(k)
            if prev is None:
                terms[k] = c
            else:
                s = prev + c
                if s:
                    terms[k] = s
                else:
                    del terms[k]
        return type(self)._raw(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw({k: -c for k, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = type(self).const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Number):
        c = GaussianRational.coerce(c)
        if not c:
            return type(self)._raw({}, self.nvars)
        return type(self)._raw({k: v * c for k, v in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        self._check(other)
        combine = self._combine
        terms: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = combine(k1, k2)
                prod = c1 * c2
                prev = terms.get(k)
                if prev is None:
                    terms[k] = prod
                else:
                    s = prev + prod
                    if s:
                        terms[k] = s
                    else:
                        del terms[k]
        return type(self)._raw(terms, self.nvars)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = type(self).const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def map_coefficients(self, fn: Callable[[GaussianRational], GaussianRational]):
        return type(self)(((k, fn(c)) for k, c in self.terms.items()), self.nvars)


class HoloPoly(_SparsePoly):
    """Polynomial in ``z1..zn`` (no conjugate variables)."""

    __slots__ = ()

    @staticmethod
    def _combine(a: Monomial, b: Monomial) -> Monomial:
        return tuple(x + y for x, y in zip(a, b))

    @classmethod
    def const(cls, n: int, c: Number) -> HoloPoly:
        return cls({(0,) * n: c}, n)

    @classmethod
    def zero(cls, n: int) -> HoloPoly:
        return cls._raw({}, n)

    @classmethod
    def var(cls, n: int, i: int) -> HoloPoly:
        return cls({monomial(n, {i: 1}): 1}, n)

    @classmethod
    def from_dict(cls, n: int, terms: Mapping[Mapping[int, int] | Monomial, Number]) -> HoloPoly:
        out = []
        for key, c in terms.items():
            mono = key if isinstance(key, tuple) else monomial(n, key)
            out.append((mono, c))
        return cls(out, n)

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, key=grlex_key)

    def items(self) -> list[tuple[Monomial, GaussianRational]]:
        return [(m, self.terms[m]) for m in self.monomials()]

    def coeff(self, mono: Monomial) -> GaussianRational:
        return self.terms.get(mono, ZERO)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0,) * self.nvars, ZERO)

    def linear_part(self) -> dict[int, GaussianRational]:
        out = {}
        for m, c in self.terms.items():
            if sum(m) == 1:
                out[m.index(1) + 1] = c
        return out

    def depends_on(self, var: int) -> bool:
        return any(m[var - 1] for m in self.terms)

    def variables(self) -> set[int]:
        return {i + 1 for m in self.terms for i, e in enumerate(m) if e}

    def diff(self, var: int, conjugate: bool = False) -> HoloPoly:
        if conjugate:
            raise ValueError("antiholomorphic derivative of a holomorphic polynomial")
        j = var - 1
        terms = {}
        for m, c in self.terms.items():
            e = m[j]
            if e:
                terms[m[:j] + (e - 1,) + m[j + 1:]] = c * e
        return HoloPoly._raw(terms, self.nvars)

    def diff_multi(self, exps: Sequence[int]) -> HoloPoly:
        """Apply ``D^exps`` (exps indexed like a monomial)."""
        terms = {}
        for m, c in self.terms.items():
            if all(a >= b for a, b in zip(m, exps)):
                k = 1
                for a, b in zip(m, exps):
                    k *= factorial(a) // factorial(a - b)
                terms[tuple(a - b for a, b in zip(m, exps))] = c * k
        return HoloPoly._raw(terms, self.nvars)

    def conjugate(self) -> MixedPoly:
        """The antiholomorphic polynomial ``conj(p)`` as a MixedPoly."""
        z = (0,) * self.nvars
        return MixedPoly._raw({(z, m): c.conjugate() for m, c in self.terms.items()}, self.nvars)

    def to_mixed(self) -> MixedPoly:
        z = (0,) * self.nvars
        return MixedPoly._raw({(m, z): c for m, c in self.terms.items()}, self.nvars)

    def evaluate(self, point: Sequence[Number]) -> GaussianRational:
        vals = [GaussianRational.coerce(x) for x in point]
        total = ZERO
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = t * v ** e
            total = total + t
        return total

    def restrict(self, keep: Iterable[int]) -> HoloPoly:
        """Set every variable outside ``keep`` (1-based indices) to zero."""
        kill = [i for i in range(self.nvars) if i + 1 not in set(keep)]
        return HoloPoly._raw(
            {m: c for m, c in self.terms.items() if not any(m[i] for i in kill)}, self.nvars)

    def extend(self, nvars: int) -> HoloPoly:
        pad = (0,) * (nvars - self.nvars)
        return HoloPoly._raw({m + pad: c for m, c in self.terms.items()}, nvars)

    def truncate(self, nvars: int) -> HoloPoly:
        if any(any(m[nvars:]) for m in self.terms):
            raise ValueError("polynomial uses variables beyond the truncation")
        return HoloPoly._raw({m[:nvars]: c for m, c in self.terms.items()}, nvars)

    def __repr__(self) -> str:
        return f"HoloPoly({str(self)!r}, nvars={self.nvars})"

    def __str__(self) -> str:
        return _format_terms([(mono_str(m), c) for m, c in self.items()])


def _mixed_key(k: tuple[Monomial, Monomial]) -> tuple:
    a, b = k
    return (sum(a) + sum(b), grlex_key(a), grlex_key(b))


class MixedPoly(_SparsePoly):
    """Polynomial in ``z`` and ``zbar``; keys are ``(alpha, beta)`` pairs."""

    __slots__ = ()

    @staticmethod
    def _combine(a, b):
        return (tuple(x + y for x, y in zip(a[0], b[0])), tuple(x + y for x, y in zip(a[1], b[1])))

    @classmethod
    def const(cls, n: int, c: Number) -> MixedPoly:
        z = (0,) * n
        return cls({(z, z): c}, n)

    @classmethod
    def zero(cls, n: int) -> MixedPoly:
        return cls._raw({}, n)

    def keys_sorted(self) -> list[tuple[Monomial, Monomial]]:
        return sorted(self.terms, key=_mixed_key)

    def items(self) -> list[tuple[tuple[Monomial, Monomial], GaussianRational]]:
        return [(k, self.terms[k]) for k in self.keys_sorted()]

    def coeff(self, alpha: Monomial, beta: Monomial) -> GaussianRational:
        return self.terms.get((alpha, beta), ZERO)

    def constant_term(self) -> GaussianRational:
        z = (0,) * self.nvars
        return self.terms.get((z, z), ZERO)

    def conjugate(self) -> MixedPoly:
        return MixedPoly._raw({(b, a): c.conjugate() for (a, b), c in self.terms.items()}, self.nvars)

    def is_real(self) -> bool:
        """``coeff(a, b) == conj(coeff(b, a))`` for every pair."""
        for (a, b), c in self.terms.items():
            if self.terms.get((b, a), ZERO) != c.conjugate():
                return False
        return True

    def is_holomorphic(self) -> bool:
        return all(not any(b) for (_, b) in self.terms)

    def antiholomorphic_terms(self) -> list[tuple[Monomial, Monomial]]:
        return [k for k in self.keys_sorted() if any(k[1])]

    def to_holo(self) -> HoloPoly:
        if not self.is_holomorphic():
            raise ValueError("polynomial has antiholomorphic terms")
        return HoloPoly._raw({a: c for (a, _), c in self.terms.items()}, self.nvars)

    def diff(self, var: int, conjugate: bool = False) -> MixedPoly:
        j = var - 1
        side = 1 if conjugate else 0
        terms = {}
        for key, c in self.terms.items():
            m = key[side]
            e = m[j]
            if e:
                m2 = m[:j] + (e - 1,) + m[j + 1:]
                terms[(m2, key[1]) if side == 0 else (key[0], m2)] = c * e
        return MixedPoly._raw(terms, self.nvars)

    def diff_multi(self, alpha: Sequence[int], beta: Sequence[int]) -> MixedPoly:
        """Apply ``D^alpha Dbar^beta``."""
        terms = {}
        for (a, b), c in self.terms.items():
            if all(x >= y for x, y in zip(a, alpha)) and all(x >= y for x, y in zip(b, beta)):
                k = 1
                for x, y in zip(a, alpha):
                    k *= factorial(x) // factorial(x - y)
                for x, y in zip(b, beta):
                    k *= factorial(x) // factorial(x - y)
                key = (tuple(x - y for x, y in zip(a, alpha)), tuple(x - y for x, y in zip(b, beta)))
                terms[key] = c * k
        return MixedPoly._raw(terms, self.nvars)

    def restrict(self, keep: Iterable[int]) -> MixedPoly:
        """Set every variable (and its conjugate) outside ``keep`` to zero."""
        keep = set(keep)
        kill = [i for i in range(self.nvars) if i + 1 not in keep]
        return MixedPoly._raw(
            {k: c for k, c in self.terms.items() if not any(k[0][i] or k[1][i] for i in kill)},
            self.nvars)

    def __repr__(self) -> str:
        return f"MixedPoly({str(self)!r}, nvars={self.nvars})"

    def __str__(self) -> str:
        items = []
        for (a, b), c in self.items():
            parts = [p for p in (mono_str(a), mono_str(b, bar=True)) if p]
            items.append(("*".join(parts), c))
        return _format_terms(items)


def expand_squares(generators: Sequence[HoloPoly]) -> MixedPoly:
    """``sum_j f_j * conj(f_j)`` with ``(alpha, beta)`` coefficient ``sum_j c_{j,alpha} conj(c_{j,beta})``."""
    if not generators:
        raise ValueError("expand_squares needs at least one generator to fix nvars")
    n = generators[0].nvars
    terms: dict = {}
    for f in generators:
        if f.nvars != n:
            raise ValueError("generators have mismatched nvars")
        if f.depends_on(1):
            raise ValueError("generators must not depend on z1")
        items = list(f.terms.items())
        for a, ca in items:
            for b, cb in items:
                c = ca * cb.conjugate()
                key = (a, b)
                prev = terms.get(key)
                terms[key] = c if prev is None else prev + c
    return MixedPoly(terms, n)


# -- coordinate changes --------------------------------------------------------

class CoordChange:
    """Polynomial change of variables ``z_j -> images[j]``.

    ``substitute(p, ch)`` is the pullback ``p(images(z))``.  Only changes with a
    known polynomial inverse are constructed by the helpers below.
    """

    __slots__ = ("nvars", "images", "inverse_images", "label")

    def __init__(self, images: Sequence[HoloPoly], inverse_images: Sequence[HoloPoly] | None = None,
                 label: str = "") -> None:
        self.nvars = len(images)
        self.images = tuple(images)
        self.inverse_images = tuple(inverse_images) if inverse_images is not None else None
        self.label = label
        for p in self.images:
            if p.nvars != self.nvars:
                raise ValueError("image polynomial has wrong nvars")

    @classmethod
    def identity(cls, n: int) -> CoordChange:
        ims = [HoloPoly.var(n, i) for i in range(1, n + 1)]
        return cls(ims, ims, "identity")

    @classmethod
    def shear(cls, n: int, var: int, scale: Number, psi: HoloPoly) -> CoordChange:
        """``z_var -> scale * z_var + psi`` with ``psi`` free of ``z_var``."""
        scale = GaussianRational.coerce(scale)
        if not scale:
            raise ValueError("shear scale must be nonzero")
        if psi.depends_on(var):
            raise ValueError(f"shear part depends on its own variable z{var}")
        ims = [HoloPoly.var(n, i) for i in range(1, n + 1)]
        inv = list(ims)
        zv = HoloPoly.var(n, var)
        ims[var - 1] = zv.scale(scale) + psi
        inv[var - 1] = (zv - psi).scale(ONE / scale)
        return cls(ims, inv, f"z{var} -> {ims[var - 1]}")

    @classmethod
    def linear(cls, n: int, matrix: Sequence[Sequence[Number]], first: int = 2) -> CoordChange:
        """``z_i -> sum_j M[i][j] z_j`` on the block ``z_first..z_n``."""
        from .linalg import inverse
        size = n - first + 1
        M = [[GaussianRational.coerce(x) for x in row] for row in matrix]
        if len(M) != size or any(len(r) != size for r in M):
            raise ValueError("linear change matrix has the wrong shape")
        Minv = inverse(M)
        if Minv is None:
            raise ValueError("linear change is singular")

        def images(A):
            ims = [HoloPoly.var(n, i) for i in range(1, n + 1)]
            for r in range(size):
                ims[first - 1 + r] = HoloPoly(
                    ((monomial(n, {first + c: 1}), A[r][c]) for c in range(size)), n)
            return ims

        fwd = images(M)
        desc = "; ".join(f"z{first + r} -> {fwd[first - 1 + r]}" for r in range(size)
                         if fwd[first - 1 + r] != HoloPoly.var(n, first + r))
        return cls(fwd, images(Minv), desc or "identity")

    def is_identity(self) -> bool:
        return all(p == HoloPoly.var(self.nvars, i + 1) for i, p in enumerate(self.images))

    def inverse(self) -> CoordChange:
        if self.inverse_images is None:
            raise ValueError("change of coordinates has no recorded inverse")
        return CoordChange(self.inverse_images, self.images, f"inverse({self.label})")

    def then(self, other: CoordChange) -> CoordChange:
        """Composite whose pullback is ``substitute(substitute(p, self), other)``."""
        ims = [substitute(p, other) for p in self.images]
        inv = None
        if self.inverse_images is not None and other.inverse_images is not None:
            inv = [substitute(p, self.inverse()) for p in other.inverse_images]
        label = "; ".join(x for x in (self.label, other.label) if x and x != "identity")
        return CoordChange(ims, inv, label or "identity")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoordChange) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def describe(self) -> str:
        parts = [f"z{i + 1} -> {p}" for i, p in enumerate(self.images)
                 if p != HoloPoly.var(self.nvars, i + 1)]
        return "; ".join(parts) or "identity"

    def __repr__(self) -> str:
        return f"CoordChange({self.describe()})"


def substitute(p: HoloPoly | MixedPoly, ch: CoordChange) -> HoloPoly | MixedPoly:
    """Pull ``p`` back along ``ch`` (replace ``z_j`` by its image, ``zbar_j`` by the conjugate)."""
    if ch.inverse_images is None:
        raise ValueError("substitute needs an invertible change of coordinates")
    if p.nvars != ch.nvars:
        raise ValueError(f"mismatched nvars: {p.nvars} vs {ch.nvars}")
    n = p.nvars
    if isinstance(p, HoloPoly):
        cache: dict = {}
        out = HoloPoly.zero(n)
        for m, c in p.terms.items():
            term = HoloPoly.const(n, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = ch.images[i] ** e
                    term = term * cache[key]
            out = out + term
        return out
    hol = [q.to_mixed() for q in ch.images]
    anti = [q.conjugate() for q in ch.images]
    cache = {}
    out = MixedPoly.zero(n)
    for (a, b), c in p.terms.items():
        term = MixedPoly.const(n, c)
        for side, m, src in ((0, a, hol), (1, b, anti)):
            for i, e in enumerate(m):
                if e:
                    key = (side, i, e)
                    if key not in cache:
                        cache[key] = src[i] ** e
                    term = term * cache[key]
        out = out + term
    return out


def poly_arith(a: HoloPoly | MixedPoly, b: HoloPoly | MixedPoly, op: str) -> HoloPoly | MixedPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def diff(p: HoloPoly | MixedPoly, var: int, conjugate: bool = False) -> HoloPoly | MixedPoly:
    if not 1 <= var <= p.nvars:
        raise ValueError(f"variable z{var} outside z1..z{p.nvars}")
    return p.diff(var, conjugate)


def iter_monomials(gens: Iterable[HoloPoly]) -> Iterator[tuple[int, Monomial, GaussianRational]]:
    for j, g in enumerate(gens):
        for m, c in g.items():
            yield j, m, c
