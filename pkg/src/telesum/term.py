"""Factored bivariate hypergeometric terms.

A HyperTerm is a product of a polynomial prefactor, a sign (-1)^(linear form),
power factors base^(linear form) whose bases are rational expressions in the
parameters only, and binomial factors binom(linear, linear)^multiplicity.
Every summand, certificate product and closed boundary form handled by this
package has that shape.  The two operations that matter are exact evaluation
at integer points of (k, l) and extraction of the shift quotients
t(v+1)/t(v), which are rational functions by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import binomial, exact_int_or_fraction
from .poly import Context, ContextMismatch, Polynomial, RationalFunction

SHIFT_VARS = ("k", "l")

# Process-local count of HyperTerm evaluations; the benchmark contract for
# naive vs reduced summation is expressed in these counts.
_EVALS = 0


def reset_eval_count():
    global _EVALS
    _EVALS = 0


def eval_count() -> int:
    return _EVALS


class PoleAtPoint(ArithmeticError):
    """Evaluation hit a zero base/denominator raised to a negative power."""


@dataclass(frozen=True)
class LinForm:
    """Integer-linear form a*k + b*l + sum(c_i * param_i) + d."""

    ctx: Context
    coeffs: tuple
    const: int

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, (0,) * len(ctx.names), 0)

    @classmethod
    def from_poly(cls, p: Polynomial):
        coeffs = [0] * len(p.ctx.names)
        const = 0
        for exps, c in p.terms.items():
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c} in linear form")
            deg = sum(exps)
            if deg == 0:
                const = int(c)
            elif deg == 1:
                coeffs[exps.index(1)] = int(c)
            else:
                raise ValueError(f"total degree {deg} > 1 in linear form")
        return cls(p.ctx, tuple(coeffs), const)

    def to_poly(self) -> Polynomial:
        terms = {}
        n = len(self.ctx.names)
        for i, c in enumerate(self.coeffs):
            if c:
                exps = [0] * n
                exps[i] = 1
                terms[tuple(exps)] = Fraction(c)
        if self.const:
            terms[(0,) * n] = Fraction(self.const)
        return Polynomial(self.ctx, terms)

    def coeff_of(self, name: str) -> int:
        return self.coeffs[self.ctx.index[name]]

    def is_zero(self) -> bool:
        return self.const == 0 and not any(self.coeffs)

    def eval_vals(self, vals) -> int:
        tot = self.const
        for c, v in zip(self.coeffs, vals):
            if c:
                tot += c * v
        if isinstance(tot, Fraction):
            if tot.denominator != 1:
                raise ValueError(f"linear form {self.render()} is not an integer at point")
            return int(tot)
        return tot

    def render(self) -> str:
        return self.to_poly().render(compact=True)

    def __repr__(self):
        return f"LinForm({self.render()})"


class HyperTerm:
    """Factored hypergeometric term of k and l with parameters."""

    __slots__ = ("ctx", "prefactor", "sign", "powers", "binoms")

    def __init__(self, ctx, prefactor=None, sign=None, powers=(), binoms=()):
        self.ctx = ctx
        self.prefactor = prefactor if prefactor is not None else Polynomial.one(ctx)
        self.sign = sign if sign is not None else LinForm.zero(ctx)
        self.powers = tuple(powers)
        self.binoms = tuple(binoms)
        if self.prefactor.ctx != ctx or self.sign.ctx != ctx:
            raise ContextMismatch("mixed contexts in HyperTerm")
        for base, expo in self.powers:
            if base.ctx != ctx or expo.ctx != ctx:
                raise ContextMismatch("mixed contexts in power factor")
            if base.is_zero():
                raise ValueError("power base is the zero rational function")
            if base.uses("k") or base.uses("l"):
                raise ValueError("power base may depend on parameters only")
        for u, w, mult in self.binoms:
            if u.ctx != ctx or w.ctx != ctx:
                raise ContextMismatch("mixed contexts in binomial factor")
            if mult == 0:
                raise ValueError("binomial multiplicity must be nonzero")

    # -- evaluation ---------------------------------------------------------

    def eval(self, point):
        """Exact value at integer (k, l) and rational parameter values.

        Conventions: 0^0 = 1; a zero power base or binomial raised to a
        negative exponent raises PoleAtPoint.
        """
        global _EVALS
        _EVALS += 1
        vals = [point[name] for name in self.ctx.names]
        acc = self.prefactor.eval_vals(vals)
        if self.sign.eval_vals(vals) & 1:
            acc = -acc
        for base, expo in self.powers:
            e = expo.eval_vals(vals)
            bden = base.den.eval_vals(vals)
            if bden == 0:
                raise PoleAtPoint(f"power base {base.render()} undefined at point")
            bnum = base.num.eval_vals(vals)
            if bnum == 0:
                if e == 0:
                    continue
                if e < 0:
                    raise PoleAtPoint(f"zero base with negative exponent {e}")
                acc = 0
                continue
            b = Fraction(bnum) / Fraction(bden)
            if b.denominator == 1 and e >= 0:
                acc = acc * int(b) ** e
            else:
                acc = acc * b ** e
        for u, w, mult in self.binoms:
            bv = binomial(u.eval_vals(vals), w.eval_vals(vals))
            if mult > 0:
                acc = acc * bv ** mult
            else:
                if bv == 0:
                    raise PoleAtPoint(
                        f"binom({u.render()},{w.render()}) = 0 with multiplicity {mult}"
                    )
                acc = acc * Fraction(1, int(bv) ** (-mult))
        # gmpy2 values (mpz/mpq) must not escape: plain int or Fraction only
        return exact_int_or_fraction(acc)

    # -- shift quotients ----------------------------------------------------

    def shift_quotient(self, var: str) -> RationalFunction:
        """The rational function t(v+1, .)/t(v, .) for v in {k, l}.

        Assembled factor by factor: the prefactor contributes P(v+1)/P(v),
        the sign contributes (-1)^(coefficient of v), each power factor
        contributes base^(coefficient of v), and each binomial contributes a
        product of degree-one factors obtained by composing the unit-shift
        rules binom(u+1,w)/binom(u,w) = (u+1)/(u+1-w) and
        binom(u,w+1)/binom(u,w) = (u-w)/(w+1) along the integer shifts the
        substitution v -> v+1 induces in its two arguments.
        """
        if var not in SHIFT_VARS:
            raise ValueError(f"shift variable must be one of {SHIFT_VARS}")
        if self.prefactor.is_zero():
            raise ValueError("shift quotient of the zero term")
        ctx = self.ctx
        out = RationalFunction(self.prefactor.shift(var, 1), self.prefactor)
        if self.sign.coeff_of(var) & 1:
            out = -out
        for base, expo in self.powers:
            c = expo.coeff_of(var)
            if c:
                out = out * base ** c
        one = Polynomial.one(ctx)
        for u, w, mult in self.binoms:
            du = u.coeff_of(var)
            dw = w.coeff_of(var)
            if du == 0 and dw == 0:
                continue
            num = one
            den = one
            up = u.to_poly()
            wp = w.to_poly()
            if du > 0:
                for i in range(du):
                    # binom(U+1, w)/binom(U, w) with U = u + i
                    num = num * (up + Polynomial.const(ctx, i + 1))
                    den = den * (up + Polynomial.const(ctx, i + 1) - wp)
            else:
                for i in range(-du):
                    # binom(U-1, w)/binom(U, w) with U = u - i
                    shifted = up - Polynomial.const(ctx, i)
                    num = num * (shifted - wp)
                    den = den * shifted
            utop = up + Polynomial.const(ctx, du)
            if dw > 0:
                for j in range(dw):
                    # binom(U, W+1)/binom(U, W) with W = w + j
                    wj = wp + Polynomial.const(ctx, j)
                    num = num * (utop - wj)
                    den = den * (wj + Polynomial.const(ctx, 1))
            else:
                for j in range(-dw):
                    # binom(U, W-1)/binom(U, W) with W = w - j
                    wj = wp - Polynomial.const(ctx, j)
                    num = num * wj
                    den = den * (utop - wj + Polynomial.const(ctx, 1))
            out = out * RationalFunction(num, den) ** mult
        return out

    def scaled(self, r: RationalFunction) -> "ScaledTerm":
        """Pending product r * self, evaluated lazily (poles surface at eval)."""
        return ScaledTerm(r, self)

    # -- structure ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, HyperTerm)
            and self.ctx == other.ctx
            and self.prefactor == other.prefactor
            and self.sign == other.sign
            and self.powers == other.powers
            and self.binoms == other.binoms
        )

    def __hash__(self):
        return hash((self.ctx, self.prefactor, self.sign, self.powers, self.binoms))

    def render(self) -> str:
        """Canonical re-parseable product form."""
        parts = []
        pre = self.prefactor
        content = pre.content()
        if content and content.denominator != 1:
            # keep the rendered prefactor integral; emit content separately
            pre = pre.scale(1 / content)
            parts.append(f"({_frac_str(content)})^1")
        if not (pre.is_constant() and pre.constant_value() == 1):
            parts.append(f"({pre.render()})")
        if not self.sign.is_zero():
            parts.append(f"(-1)^{_exp_str(self.sign)}")
        for base, expo in self.powers:
            parts.append(f"({base.render()})^{_exp_str(expo)}")
        for u, w, mult in self.binoms:
            s = f"binom({u.render()},{w.render()})"
            if mult != 1:
                s += f"^{mult}"
            parts.append(s)
        if not parts:
            return "(1)"
        return " * ".join(parts)

    def __repr__(self):
        return f"HyperTerm({self.render()})"


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/({c.denominator})"


def _exp_str(lf: LinForm) -> str:
    """Exponent rendering: bare variable or integer, else parenthesized."""
    nz = [c for c in lf.coeffs if c]
    if not nz and lf.const >= 0:
        return str(lf.const)
    if len(nz) == 1 and nz[0] == 1 and lf.const == 0:
        return lf.ctx.names[lf.coeffs.index(1)]
    return f"({lf.render()})"


@dataclass(frozen=True)
class ScaledTerm:
    """Pending product R(k,l) * F(k,l); evaluation fails on R's poles."""

    rat: RationalFunction
    term: HyperTerm

    @property
    def ctx(self):
        return self.term.ctx

    def eval(self, point):
        vals = [point[name] for name in self.term.ctx.names]
        d = self.rat.den.eval_vals(vals)
        if d == 0:
            raise PoleAtPoint("certificate denominator vanishes at point")
        n = self.rat.num.eval_vals(vals)
        v = self.term.eval(point)
        if n == 0:
            return 0
        return exact_int_or_fraction(Fraction(n) / Fraction(d) * v)


def eval_term(t, pt):
    """Evaluate a HyperTerm (or pending product) exactly at a point."""
    return t.eval(pt)


def shift_quotient(t: HyperTerm, var: str) -> RationalFunction:
    return t.shift_quotient(var)


def term_scale(t: HyperTerm, r: RationalFunction) -> ScaledTerm:
    return t.scaled(r)
