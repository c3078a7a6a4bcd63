"""Reader and printer for the domain description language.

    n = 3
    generators: z2^2 + (1/2 - 1/3 i)*z3^3, i*z2*z3
    weight: 1,4,6          # optional
    normal: Re z1          # optional, default 2Re z1

``#`` starts a comment.  A generator list may continue on following lines as
long as the previous line ends with a comma.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import GaussianRational, HoloPoly, monomial
from .errors import ParseError
from .weights import Weight

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>z\d+)|(?P<i>i)|(?P<op>[-+*/^(),]))")


@dataclass
class DomainSpec:
    n: int
    generators: list
    weight: Weight | None = None
    z1_factor: Fraction = field(default_factory=lambda: Fraction(2))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DomainSpec):
            return NotImplemented
        return (self.n == other.n and self.generators == other.generators
                and self.weight == other.weight and self.z1_factor == other.z1_factor)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, positions: list[tuple[int, int]]) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            line, col = positions[pos]
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        start = m.start(kind)
        line, col = positions[start]
        toks.append(_Tok(kind, m.group(kind), line, col))
        pos = m.end()
    return toks


class _PolyParser:
    def __init__(self, toks: list[_Tok], n: int, end: tuple[int, int]) -> None:
        self.toks = toks
        self.i = 0
        self.n = n
        self.end = end

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        line, col = (tok.line, tok.col) if tok else self.end
        raise ParseError(msg, line, col)

    def take(self, kind: str, text: str | None = None) -> _Tok:
        tok = self.peek()
        if tok is None or tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            self.error(f"expected {want!r}" + (f", found {tok.text!r}" if tok else ", found end of input"))
        self.i += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind and (text is None or tok.text == text)

    def generator_list(self) -> list[HoloPoly]:
        gens = [self.poly()]
        while self.at("op", ","):
            self.i += 1
            gens.append(self.poly())
        if self.peek() is not None:
            self.error(f"unexpected {self.peek().text!r}")
        return gens

    def poly(self) -> HoloPoly:
        sign = 1
        if self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take("op").text == "-" else 1
        total = self.term().scale(sign)
        while self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take("op").text == "-" else 1
            total = total + self.term().scale(sign)
        return total

    def rational(self) -> Fraction:
        num = int(self.take("int").text)
        if self.at("op", "/"):
            self.i += 1
            tok = self.take("int")
            den = int(tok.text)
            if den == 0:
                self.error("zero denominator", tok)
            return Fraction(num, den)
        return Fraction(num)

    def coeff(self) -> GaussianRational | None:
        if self.at("op", "("):
            self.i += 1
            c = self.paren_coeff()
            self.take("op", ")")
            return c
        if self.at("int"):
            q = self.rational()
            if self.at("i"):
                self.i += 1
                return GaussianRational(0, q)
            return GaussianRational(q)
        if self.at("i"):
            self.i += 1
            return GaussianRational(0, 1)
        return None

    def signed_part(self) -> GaussianRational:
        sign = 1
        if self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take("op").text == "-" else 1
        if self.at("i"):
            self.i += 1
            return GaussianRational(0, sign)
        q = self.rational() * sign
        if self.at("i"):
            self.i += 1
            return GaussianRational(0, q)
        return GaussianRational(q)

    def paren_coeff(self) -> GaussianRational:
        c = self.signed_part()
        while self.at("op", "+") or self.at("op", "-"):
            c = c + self.signed_part()
        return c

    def factor(self) -> dict[int, int]:
        tok = self.take("var")
        k = int(tok.text[1:])
        if k < 2 or k > self.n:
            self.error(f"variable {tok.text} outside z2..z{self.n}", tok)
        e = 1
        if self.at("op", "^"):
            self.i += 1
            e = int(self.take("int").text)
        return {k: e}

    def term(self) -> HoloPoly:
        start = self.peek()
        c = self.coeff()
        exps: dict[int, int] = {}
        if c is not None:
            if self.at("op", "*"):
                self.i += 1
                if not self.at("var"):
                    self.error("expected a variable after '*'")
            if not self.at("var"):
                return HoloPoly.const(self.n, c)
        else:
            c = GaussianRational(1)
            if not self.at("var"):
                self.error("expected a term", start)
        while True:
            for k, e in self.factor().items():
                exps[k] = exps.get(k, 0) + e
            if self.at("op", "*") and self.i + 1 < len(self.toks) and self.toks[self.i + 1].kind == "var":
                self.i += 1
                continue
            break
        return HoloPoly({monomial(self.n, exps): c}, self.n)


def _strip(line: str) -> str:
    return line.split("#", 1)[0]


def parse(text: str) -> DomainSpec:
    lines = text.splitlines()
    n = None
    weight = None
    factor = Fraction(2)
    gen_chunks: list[tuple[int, int, str]] = []  # (line, col offset, text)
    in_gens = False
    gens_line = 0
    for lineno, raw in enumerate(lines, 1):
        line = _strip(raw)
        if not line.strip():
            continue
        stripped = line.strip()
        key_match = re.match(r"\s*(n|generators|weight|normal)\s*([=:])", line)
        if key_match:
            in_gens = False
            key = key_match.group(1)
            rest = line[key_match.end():]
            col0 = key_match.end() + 1
            if key == "n":
                if not rest.strip().isdigit():
                    raise ParseError("n must be an integer", lineno, col0)
                n = int(rest.strip())
                if n < 2:
                    raise ParseError("n must be at least 2", lineno, col0)
            elif key == "generators":
                in_gens = True
                gens_line = lineno
                gen_chunks.append((lineno, key_match.end(), rest))
            elif key == "weight":
                try:
                    weight = Weight.parse(rest)
                except (ValueError, ZeroDivisionError) as exc:
                    raise ParseError(f"bad weight: {exc}", lineno, col0) from None
            else:
                norm = rest.replace(" ", "").lower()
                if norm in ("2rez1", "2re(z1)"):
                    factor = Fraction(2)
                elif norm in ("rez1", "re(z1)"):
                    factor = Fraction(1)
                else:
                    raise ParseError("normal must be 'Re z1' or '2Re z1'", lineno, col0)
            continue
        if in_gens and gen_chunks and _strip(lines[gen_chunks[-1][0] - 1]).rstrip().endswith(","):
            gen_chunks.append((lineno, 0, line))
            continue
        raise ParseError(f"unrecognized line {stripped!r}", lineno, 1)
    if n is None:
        raise ParseError("n missing", 1, 1)
    if not gen_chunks:
        raise ParseError("generators missing", 1, 1)
    body = []
    positions: list[tuple[int, int]] = []
    for lineno, off, chunk in gen_chunks:
        for j, ch in enumerate(chunk):
            body.append(ch)
            positions.append((lineno, off + j + 1))
        body.append(" ")
        positions.append((lineno, off + len(chunk) + 1))
    text_body = "".join(body)
    toks = _tokenize(text_body, positions)
    if not toks:
        raise ParseError("empty generator list", gens_line, 1)
    end = positions[-1] if positions else (gens_line, 1)
    gens = _PolyParser(toks, n, end).generator_list()
    if weight is not None and len(weight) != n:
        raise ParseError(f"weight has {len(weight)} entries, expected {n}", 1, 1)
    return DomainSpec(n, gens, weight, factor)


def format_spec(spec: DomainSpec) -> str:
    lines = [f"n = {spec.n}", "generators: " + ", ".join(str(g) for g in spec.generators)]
    if spec.weight is not None:
        lines.append(f"weight: {spec.weight}")
    if spec.z1_factor != 2:
        lines.append("normal: Re z1")
    return "\n".join(lines) + "\n"
