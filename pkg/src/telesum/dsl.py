"""Problem file format: a tiny language for summands and certificates.

Grammar (whitespace-insensitive, '#' starts a line comment):

    file        := {decl} "F" "=" term {cert-line}
    decl        := "param" ident {"," ident}
    cert-line   := ("R1"|"R2") "=" ratexpr | ("G1"|"G2") "=" term
    term        := factor {"*" factor}
    factor      := signfac | powfac | binomfac | "(" polyexpr ")" ["^" int]
    signfac     := "(-1)" "^" linform
    powfac      := "(" ratexpr ")" "^" linform | number "^" linform
    binomfac    := "binom" "(" linform "," linform ")" ["^" int]
    ratexpr     := polyexpr ["/" "(" polyexpr ")"]
    polyexpr    := integer-coefficient +,-,*,^ expression over identifiers
    linform     := polyexpr of total degree <= 1 with integer coefficients

Operator precedence inside polyexpr: ^ binds tighter than unary minus, which
binds tighter than *, which binds tighter than + and -.  ^ is non-associative;
towers need parentheses.  Power bases must be rational expressions in the
parameters only; binomial arguments must be integer-linear forms.  Violations
are reported with 1-based line/column positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .poly import Context, Polynomial, RationalFunction
from .term import HyperTerm, LinForm

RESERVED = {"param", "binom", "F", "R1", "R2", "G1", "G2"}
CERT_KEYS = ("R1", "R2", "G1", "G2")


class ParseError(ValueError):
    """Syntax or semantic error with a 1-based source position."""

    def __init__(self, line: int, column: int, expected: str, found: str):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        super().__init__(f"{line}:{column}: expected {expected}, found {found}")


@dataclass
class ProblemSpec:
    """Parsed problem file: summand F plus optional certificate pieces."""

    name: str
    ctx: Context
    f: HyperTerm
    r1: Optional[RationalFunction] = None
    r2: Optional[RationalFunction] = None
    g1: Optional[HyperTerm] = None
    g2: Optional[HyperTerm] = None

    @property
    def params(self):
        return self.ctx.params

    def __eq__(self, other):
        if not isinstance(other, ProblemSpec):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.f == other.f
            and self.r1 == other.r1
            and self.r2 == other.r2
            and self.g1 == other.g1
            and self.g2 == other.g2
        )


# -- tokenizer ---------------------------------------------------------------

_SYMBOLS = "=,()^*+-/"


@dataclass(frozen=True)
class _Tok:
    kind: str  # ident | number | symbol | eof
    text: str
    line: int
    col: int


def _tokenize(text: str):
    toks = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("number", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            toks.append(_Tok("symbol", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(line, col, "a token", repr(ch))
    last_line = line
    toks.append(_Tok("eof", "", last_line, col))
    return toks


# -- parser -------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def advance(self) -> _Tok:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def error(self, expected: str, tok: Optional[_Tok] = None):
        t = tok or self.peek()
        found = t.text if t.kind != "eof" else "end of input"
        raise ParseError(t.line, t.col, expected, found)

    def expect_symbol(self, sym: str) -> _Tok:
        t = self.peek()
        if t.kind == "symbol" and t.text == sym:
            return self.advance()
        self.error(f"'{sym}'")

    def at_symbol(self, sym: str) -> bool:
        t = self.peek()
        return t.kind == "symbol" and t.text == sym

    # file := {decl} "F" "=" term {cert-line}

    def parse_file(self, name: str) -> ProblemSpec:
        params = []
        while self.peek().kind == "ident" and self.peek().text == "param":
            self.advance()
            params.append(self._param_name(params))
            while self.at_symbol(","):
                self.advance()
                params.append(self._param_name(params))
        try:
            ctx = Context(params)
        except ValueError as exc:
            t = self.peek()
            raise ParseError(t.line, t.col, "valid parameter declarations", str(exc))
        t = self.peek()
        if not (t.kind == "ident" and t.text == "F"):
            self.error("'param' declaration or 'F ='")
        self.advance()
        self.expect_symbol("=")
        f = self.parse_term(ctx)
        spec = ProblemSpec(name=name, ctx=ctx, f=f)
        while self.peek().kind != "eof":
            t = self.peek()
            if t.kind != "ident" or t.text not in CERT_KEYS:
                self.error("'R1', 'R2', 'G1', 'G2' or end of input")
            key = t.text
            attr = key.lower()
            if getattr(spec, attr) is not None:
                raise ParseError(t.line, t.col, f"a single {key} line", f"duplicate {key}")
            self.advance()
            self.expect_symbol("=")
            if key in ("R1", "R2"):
                setattr(spec, attr, self.parse_ratexpr_line(ctx))
            else:
                setattr(spec, attr, self.parse_term(ctx))
        return spec

    def _param_name(self, seen) -> str:
        t = self.peek()
        if t.kind != "ident":
            self.error("a parameter name")
        if t.text in RESERVED or t.text in ("k", "l") or t.text in seen:
            raise ParseError(t.line, t.col, "a fresh parameter name", t.text)
        self.advance()
        return t.text

    # term := factor {"*" factor}

    def parse_term(self, ctx) -> HyperTerm:
        prefactor = Polynomial.one(ctx)
        sign = LinForm.zero(ctx)
        powers = []
        binoms = []
        while True:
            kind, payload, tok = self.parse_factor(ctx)
            if kind == "poly":
                prefactor = prefactor * payload
            elif kind == "sign":
                merged = tuple(a + b for a, b in zip(sign.coeffs, payload.coeffs))
                sign = LinForm(ctx, merged, sign.const + payload.const)
            elif kind == "power":
                powers.append(payload)
            else:
                binoms.append(payload)
            if self.at_symbol("*"):
                self.advance()
                continue
            break
        try:
            return HyperTerm(ctx, prefactor, sign, tuple(powers), tuple(binoms))
        except ValueError as exc:
            raise ParseError(tok.line, tok.col, "a well-formed term", str(exc))

    def parse_factor(self, ctx):
        t = self.peek()
        if t.kind == "ident" and t.text == "binom":
            return self._parse_binom(ctx)
        if t.kind == "number":
            self.advance()
            base = Fraction(int(t.text))
            if self.at_symbol("^"):
                self.advance()
                expo = self.parse_expfactor(ctx)
                return ("power", (RationalFunction.const(ctx, base), expo), t)
            return ("poly", Polynomial.const(ctx, base), t)
        if t.kind == "symbol" and t.text == "(":
            return self._parse_paren_factor(ctx)
        self.error("a factor (binom, number, or '(')")

    def _parse_binom(self, ctx):
        t = self.advance()  # binom
        self.expect_symbol("(")
        u = self.parse_linform(ctx, "binomial upper argument")
        self.expect_symbol(",")
        w = self.parse_linform(ctx, "binomial lower argument")
        self.expect_symbol(")")
        mult = 1
        if self.at_symbol("^"):
            self.advance()
            mtok = self.peek()
            mult = self._signed_int()
            if mult == 0:
                raise ParseError(mtok.line, mtok.col, "a nonzero multiplicity", "0")
        return ("binom", (u, w, mult), t)

    def _parse_paren_factor(self, ctx):
        t = self.advance()  # (
        num, num_tok = self.parse_polyexpr(ctx)
        den = None
        if self.at_symbol("/"):
            self.advance()
            self.expect_symbol("(")
            den, _ = self.parse_polyexpr(ctx)
            self.expect_symbol(")")
            if den.is_zero():
                raise ParseError(t.line, t.col, "a nonzero denominator", "0")
        self.expect_symbol(")")
        if self.at_symbol("^"):
            self.advance()
            if den is None and num.is_constant() and num.constant_value() == -1:
                expo = self.parse_expfactor(ctx)
                return ("sign", expo, t)
            if den is not None or not (num.uses("k") or num.uses("l")):
                base = RationalFunction(num, den if den is not None else Polynomial.one(ctx))
                if base.uses("k") or base.uses("l"):
                    raise ParseError(
                        t.line, t.col,
                        "a power base in the parameters only",
                        base.render(),
                    )
                if base.is_zero():
                    raise ParseError(t.line, t.col, "a nonzero power base", "0")
                expo = self.parse_expfactor(ctx)
                return ("power", (base, expo), t)
            # polynomial base in k, l: integer exponent only
            etok = self.peek()
            e = self._signed_int()
            if e < 0:
                raise ParseError(
                    etok.line, etok.col,
                    "a nonnegative exponent on a polynomial factor",
                    str(e),
                )
            return ("poly", num ** e, t)
        if den is not None:
            self.error("'^' after a rational power base")
        return ("poly", num, t)

    def _signed_int(self) -> int:
        neg = False
        if self.at_symbol("-"):
            self.advance()
            neg = True
        t = self.peek()
        if t.kind != "number":
            self.error("an integer")
        self.advance()
        v = int(t.text)
        return -v if neg else v

    # exponent of a sign or power factor: int | ident | "(" polyexpr ")"

    def parse_expfactor(self, ctx) -> LinForm:
        t = self.peek()
        if t.kind == "number" or self.at_symbol("-"):
            v = self._signed_int()
            return LinForm(ctx, (0,) * len(ctx.names), v)
        if t.kind == "ident":
            self.advance()
            if t.text not in ctx:
                raise ParseError(t.line, t.col, "a declared variable", t.text)
            coeffs = [0] * len(ctx.names)
            coeffs[ctx.index[t.text]] = 1
            return LinForm(ctx, tuple(coeffs), 0)
        if self.at_symbol("("):
            self.advance()
            p, tok = self.parse_polyexpr(ctx)
            self.expect_symbol(")")
            return self._to_linform(p, tok, "exponent")
        self.error("an exponent (integer, variable, or parenthesized linear form)")

    def parse_linform(self, ctx, what: str) -> LinForm:
        p, tok = self.parse_polyexpr(ctx)
        return self._to_linform(p, tok, what)

    def _to_linform(self, p: Polynomial, tok: _Tok, what: str) -> LinForm:
        try:
            return LinForm.from_poly(p)
        except ValueError as exc:
            raise ParseError(tok.line, tok.col, f"an integer-linear {what}", str(exc))

    # ratexpr on an R1/R2 line: polyexpr ["/" "(" polyexpr ")"]

    def parse_ratexpr_line(self, ctx) -> RationalFunction:
        num, tok = self.parse_polyexpr(ctx)
        den = Polynomial.one(ctx)
        if self.at_symbol("/"):
            self.advance()
            self.expect_symbol("(")
            den, dtok = self.parse_polyexpr(ctx)
            self.expect_symbol(")")
            if den.is_zero():
                raise ParseError(dtok.line, dtok.col, "a nonzero denominator", "0")
        return RationalFunction(num, den)

    # polyexpr with precedence ^ > unary - > * > +/-

    def parse_polyexpr(self, ctx):
        tok = self.peek()
        p = self._sum(ctx)
        return p, tok

    def _sum(self, ctx) -> Polynomial:
        p = self._product(ctx)
        while self.peek().kind == "symbol" and self.peek().text in "+-":
            op = self.advance().text
            q = self._product(ctx)
            p = p + q if op == "+" else p - q
        return p

    def _product(self, ctx) -> Polynomial:
        p = self._unary(ctx)
        while self.at_symbol("*"):
            # '*' also separates term factors; only consume it here when the
            # expression continues (inside parentheses this is always true)
            self.advance()
            p = p * self._unary(ctx)
        return p

    def _unary(self, ctx) -> Polynomial:
        if self.at_symbol("-"):
            self.advance()
            return -self._unary(ctx)
        return self._primary(ctx)

    def _primary(self, ctx) -> Polynomial:
        t = self.peek()
        if t.kind == "number":
            self.advance()
            p = Polynomial.const(ctx, int(t.text))
        elif t.kind == "ident":
            if t.text in RESERVED:
                self.error("a declared variable", t)
            if t.text not in ctx:
                raise ParseError(t.line, t.col, "a declared variable", t.text)
            self.advance()
            p = Polynomial.var(ctx, t.text)
        elif self.at_symbol("("):
            self.advance()
            p = self._sum(ctx)
            self.expect_symbol(")")
        else:
            self.error("a number, variable, or '('")
        if self.at_symbol("^"):
            self.advance()
            etok = self.peek()
            if etok.kind != "number":
                self.error("a nonnegative integer exponent")
            self.advance()
            p = p ** int(etok.text)
            if self.at_symbol("^"):
                nxt = self.peek()
                raise ParseError(nxt.line, nxt.col, "no exponent tower (parenthesize)", "^")
        return p


def parse_problem(text: str, name: str = "problem") -> ProblemSpec:
    """Parse a problem file; raises ParseError with a 1-based position."""
    parser = _Parser(text)
    return parser.parse_file(name)


def parse_polynomial(text: str, ctx: Context) -> Polynomial:
    """Parse a stand-alone polyexpr (e.g. an ansatz denominator)."""
    parser = _Parser(text)
    p, _ = parser.parse_polyexpr(ctx)
    t = parser.peek()
    if t.kind != "eof":
        raise ParseError(t.line, t.col, "end of expression", t.text)
    return p


# -- printer -------------------------------------------------------------------


def print_problem(spec: ProblemSpec) -> str:
    """Canonical text for a spec; parse(print(spec)) is structurally equal."""
    lines = []
    if spec.params:
        lines.append("param " + ", ".join(spec.params))
    lines.append("F = " + spec.f.render())
    if spec.r1 is not None:
        lines.append("R1 = " + spec.r1.render())
    if spec.r2 is not None:
        lines.append("R2 = " + spec.r2.render())
    if spec.g1 is not None:
        lines.append("G1 = " + spec.g1.render())
    if spec.g2 is not None:
        lines.append("G2 = " + spec.g2.render())
    return "\n".join(lines) + "\n"
