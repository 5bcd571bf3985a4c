"""Exact multivariate polynomials and rational functions over the rationals.

Polynomials live in a small declared variable context: the two summation
variables k, l plus any parameter variables (n, b, c, x, ...).  Terms are kept
in a map from dense exponent vectors to nonzero Fraction coefficients;
rendering and leading-term selection use graded lexicographic order, so equal
polynomials always look the same.  Rational-function equality is decided by
cross multiplication, never by gcd reduction.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd

SUMMATION_VARS = ("k", "l")


class ContextMismatch(ValueError):
    """Operands built over different variable contexts."""


class Context:
    """Ordered variable set: k and l (summation) followed by parameters."""

    __slots__ = ("names", "index")

    def __init__(self, params=()):
        params = tuple(params)
        seen = set(SUMMATION_VARS)
        for p in params:
            if not p.isidentifier():
                raise ValueError(f"bad variable name {p!r}")
            if p in seen:
                raise ValueError(f"duplicate or reserved variable {p!r}")
            seen.add(p)
        if 2 + len(params) > 6:
            raise ValueError("at most 6 variables per context")
        self.names = SUMMATION_VARS + params
        self.index = {name: i for i, name in enumerate(self.names)}

    @property
    def params(self):
        return self.names[2:]

    def is_param(self, name: str) -> bool:
        return name in self.index and name not in SUMMATION_VARS

    def __contains__(self, name: str) -> bool:
        return name in self.index

    def __eq__(self, other):
        return isinstance(other, Context) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Context{self.names}"


def _check_same(a, b):
    if a.ctx != b.ctx:
        raise ContextMismatch(f"{a.ctx} vs {b.ctx}")


def _grlex_key(exps):
    return (sum(exps), exps)


class Polynomial:
    """Multivariate polynomial with Fraction coefficients."""

    __slots__ = ("ctx", "terms", "_ev")

    def __init__(self, ctx: Context, terms=None):
        self.ctx = ctx
        self.terms = {}
        self._ev = None
        if terms:
            for exps, c in terms.items():
                if c:
                    self.terms[exps] = c if isinstance(c, Fraction) else Fraction(c)

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, ctx, c):
        p = cls(ctx)
        c = Fraction(c)
        if c:
            p.terms[(0,) * len(ctx.names)] = c
        return p

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def one(cls, ctx):
        return cls.const(ctx, 1)

    @classmethod
    def var(cls, ctx, name):
        if name not in ctx:
            raise ContextMismatch(f"variable {name} not in {ctx}")
        exps = [0] * len(ctx.names)
        exps[ctx.index[name]] = 1
        return cls(ctx, {tuple(exps): Fraction(1)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        i = self.ctx.index[name]
        return max((e[i] for e in self.terms), default=0)

    def uses(self, name: str) -> bool:
        i = self.ctx.index[name]
        return any(e[i] for e in self.terms)

    def leading_coeff(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.terms[max(self.terms, key=_grlex_key)]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        _check_same(self, other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            elif exps in out:
                del out[exps]
        return Polynomial(self.ctx, out)

    def __neg__(self):
        return Polynomial(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        _check_same(self, other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exps, 0) + c1 * c2
                if s:
                    out[exps] = s
                elif exps in out:
                    del out[exps]
        return Polynomial(self.ctx, out)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Polynomial(self.ctx)
        return Polynomial(self.ctx, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.one(self.ctx)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, name: str, c: int):
        """Substitute name -> name + c and expand."""
        if name not in self.ctx:
            raise ContextMismatch(f"variable {name} not in {self.ctx}")
        if c == 0 or not self.uses(name):
            return self
        i = self.ctx.index[name]
        out = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            for j in range(e + 1):
                w = coeff * comb(e, j) * c ** (e - j)
                ne = exps[:i] + (j,) + exps[i + 1:]
                s = out.get(ne, 0) + w
                if s:
                    out[ne] = s
                elif ne in out:
                    del out[ne]
        return Polynomial(self.ctx, out)

    # -- evaluation --------------------------------------------------------

    def _eval_terms(self):
        if self._ev is None:
            ev = []
            for exps, c in self.terms.items():
                ixs = tuple((i, e) for i, e in enumerate(exps) if e)
                ev.append((int(c) if c.denominator == 1 else c, ixs))
            self._ev = ev
        return self._ev

    def eval_vals(self, vals):
        """Evaluate at a value vector aligned with the context order."""
        tot = 0
        for c, ixs in self._eval_terms():
            m = c
            for i, e in ixs:
                m = m * vals[i] ** e
            tot += m
        return tot

    def eval(self, point):
        """Evaluate at {name: value}; every used variable must be assigned."""
        vals = []
        for name in self.ctx.names:
            if name in point:
                vals.append(point[name])
            elif self.uses(name):
                raise ContextMismatch(f"no value for variable {name}")
            else:
                vals.append(0)
        return self.eval_vals(vals)

    # -- equality / rendering ---------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def content(self) -> Fraction:
        """Positive rational c with self/c a primitive integer polynomial."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def render(self, compact: bool = False) -> str:
        """Canonical text form, graded-lex descending, e.g. 3*k*l + 4*l^2 - 3."""
        if not self.terms:
            return "0"
        names = self.ctx.names
        parts = []
        for exps in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[exps]
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, exps)
                if e
            )
            if not mono:
                body = _coeff_str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{_coeff_str(abs(c))}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            elif compact:
                parts.append(("+" if c > 0 else "-") + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({self.render()})"


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class RationalFunction:
    """Quotient of two polynomials, denominator nonzero.

    Normal form: leading coefficient of the denominator is 1 (both parts are
    scaled by the same constant), and 0 is always 0/1.  No gcd reduction is
    attempted; equality goes through `equal`.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        _check_same(num, den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator polynomial")
        if num.is_zero():
            den = Polynomial.one(num.ctx)
        else:
            lc = den.leading_coeff()
            if lc != 1:
                inv = 1 / lc
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    @property
    def ctx(self):
        return self.num.ctx

    @classmethod
    def from_poly(cls, p: Polynomial):
        return cls(p, Polynomial.one(p.ctx))

    @classmethod
    def const(cls, ctx, c):
        return cls(Polynomial.const(ctx, c), Polynomial.one(ctx))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def uses(self, name: str) -> bool:
        return self.num.uses(name) or self.den.uses(name)

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        other = self._coerce(other)
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            _check_same(self.num, other.num)
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction.const(self.ctx, other)
        raise TypeError(f"cannot combine RationalFunction with {type(other)}")

    def shift(self, name: str, c: int):
        return RationalFunction(self.num.shift(name, c), self.den.shift(name, c))

    def equal(self, other) -> bool:
        """Exact equality by cross multiplication (no gcd needed)."""
        other = self._coerce(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def eval(self, point):
        """Exact value at a point; raises ZeroDivisionError on a denominator zero."""
        d = self.den.eval(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at point")
        n = self.num.eval(point)
        if n == 0:
            return 0
        q = Fraction(n) / Fraction(d)
        return int(q) if q.denominator == 1 else q

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def render(self, compact: bool = True) -> str:
        """Canonical re-parseable form with jointly primitive integer parts."""
        num, den = self._integer_parts()
        if den.is_constant() and den.constant_value() == 1:
            return num.render(compact=compact)
        return f"{num.render(compact=compact)}/({den.render(compact=compact)})"

    def _integer_parts(self):
        """Scale num and den by one constant so both are integer polynomials
        with joint content 1 and positive denominator leading coefficient."""
        cn = self.num.content()
        cd = self.den.content()
        if cn == 0:
            scale = 1 / cd
        else:
            # joint content: gcd of numerators over lcm of denominators
            g = gcd(cn.numerator, cd.numerator)
            m = cn.denominator * cd.denominator // gcd(cn.denominator, cd.denominator)
            scale = Fraction(m, g)
        num = self.num.scale(scale)
        den = self.den.scale(scale)
        if den.leading_coeff() < 0:
            num = -num
            den = -den
        return num, den

    def __repr__(self):
        return f"RationalFunction({self.render()})"


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """add | sub | mul on polynomials sharing a context."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def ratfunc_arith(f: RationalFunction, g: RationalFunction, op: str) -> RationalFunction:
    """add | sub | mul on rational functions sharing a context."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def ratfunc_equal(f: RationalFunction, g: RationalFunction) -> bool:
    return f.equal(g)
