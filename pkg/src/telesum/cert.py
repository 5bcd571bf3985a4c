"""Telescoping certificates: verification, single-sum reduction, and search.

A certificate (R1, R2) for a summand F asserts the difference identity
F = D_k(R1 F) + D_l(R2 F), where D_v g = g(v+1) - g(v).  Dividing by F turns
this into an identity between rational functions,

    1 = R1(k+1,l) u - R1(k,l) + R2(k,l+1) v - R2(k,l),

with u, v the shift quotients of F; that identity is what verify_symbolic
decides, with any parameters carried along as extra polynomial variables.
Once boundary terms G_i = R_i F are available in evaluable form, the
triangular double sum over 0 <= l <= k <= n-1 collapses to the four boundary
sums computed by `reduce` in Theta(n) term evaluations.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .poly import Polynomial, RationalFunction
from .term import HyperTerm, PoleAtPoint


class ReductionNeedsClosedForm(ArithmeticError):
    """A boundary evaluation of R*F hit a pole; supply closed forms for G."""


class SamplingError(RuntimeError):
    """Could not find enough pole-free sample points."""


@dataclass(frozen=True)
class Certificate:
    r1: RationalFunction
    r2: RationalFunction


@dataclass(frozen=True)
class ClosedPair:
    """Evaluable boundary terms; each is a HyperTerm or a pending R*F product."""

    g1: object
    g2: object


@dataclass
class Problem:
    """A summand with whatever certificate material is known for it."""

    name: str
    f: HyperTerm
    certificate: Optional[Certificate] = None
    closed: Optional[ClosedPair] = None

    def __post_init__(self):
        if self.certificate is None and self.closed is None:
            raise ValueError("a problem needs a certificate or closed forms")

    @property
    def ctx(self):
        return self.f.ctx

    def reduction_pair(self) -> ClosedPair:
        """Closed forms if given, else pending R*F products."""
        if self.closed is not None:
            return self.closed
        return ClosedPair(
            self.f.scaled(self.certificate.r1), self.f.scaled(self.certificate.r2)
        )


@dataclass
class VerifyReport:
    symbolic_pass: Optional[bool] = None
    numeric_pass: Optional[bool] = None
    checked_points: int = 0
    skipped_poles: int = 0
    details: str = ""

    @property
    def ok(self) -> bool:
        return self.symbolic_pass is not False and self.numeric_pass is not False


def telescoper_residual(f: HyperTerm, cert: Certificate) -> RationalFunction:
    """R1(k+1,l) u - R1 + R2(k,l+1) v - R2 - 1 as a rational function."""
    u = f.shift_quotient("k")
    v = f.shift_quotient("l")
    lhs = cert.r1.shift("k", 1) * u - cert.r1 + cert.r2.shift("l", 1) * v - cert.r2
    return lhs - RationalFunction.const(f.ctx, 1)


def verify_symbolic(f: HyperTerm, cert: Certificate) -> VerifyReport:
    """Decide the telescoping identity exactly, parameters symbolic."""
    residual = telescoper_residual(f, cert)
    ok = residual.is_zero()
    return VerifyReport(
        symbolic_pass=ok,
        details="telescoping identity holds" if ok else "telescoping identity fails",
    )


def verify_numeric(f: HyperTerm, closed: ClosedPair, kmax: int, params=None) -> VerifyReport:
    """Check F(k,l) = D_k G1 + D_l G2 pointwise for 0 <= l <= k <= kmax."""
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    params = dict(params or {})
    checked = 0
    skipped = 0
    bad = []
    for k in range(kmax + 1):
        for l in range(k + 1):
            pt = {**params, "k": k, "l": l}
            fv = f.eval(pt)
            try:
                delta = (
                    closed.g1.eval({**params, "k": k + 1, "l": l})
                    - closed.g1.eval(pt)
                    + closed.g2.eval({**params, "k": k, "l": l + 1})
                    - closed.g2.eval(pt)
                )
            except PoleAtPoint:
                skipped += 1
                continue
            checked += 1
            if fv != delta:
                bad.append((k, l))
    ok = not bad and checked > 0
    detail = f"{checked} points checked, {skipped} skipped"
    if bad:
        detail += f"; first mismatch at {bad[0]}"
    return VerifyReport(
        numeric_pass=ok, checked_points=checked, skipped_poles=skipped, details=detail
    )


def check_consistency(
    f: HyperTerm,
    cert: Certificate,
    closed: ClosedPair,
    sample: int,
    params=None,
    seed: int = 0,
) -> bool:
    """At `sample` random pole-free points with F nonzero, G_i must equal R_i F."""
    params = dict(params or {})
    rng = random.Random(seed)
    found = 0
    for _ in range(200 * sample):
        if found >= sample:
            break
        k = rng.randrange(0, 25)
        l = rng.randrange(0, k + 1)
        pt = {**params, "k": k, "l": l}
        vals = [pt[name] for name in f.ctx.names]
        if cert.r1.den.eval_vals(vals) == 0 or cert.r2.den.eval_vals(vals) == 0:
            continue
        try:
            fv = f.eval(pt)
        except PoleAtPoint:
            continue
        if fv == 0:
            continue
        found += 1
        try:
            g1 = closed.g1.eval(pt)
            g2 = closed.g2.eval(pt)
        except PoleAtPoint:
            return False
        if g1 != cert.r1.eval(pt) * fv or g2 != cert.r2.eval(pt) * fv:
            return False
    if found < sample:
        raise SamplingError(f"only {found} of {sample} usable points found")
    return True


def _bound_params(f: HyperTerm, n: int, params) -> dict:
    pt = dict(params or {})
    if "n" in f.ctx.names[2:] and "n" not in pt:
        pt["n"] = n
    missing = [p for p in f.ctx.names[2:] if p not in pt]
    if missing:
        raise ValueError(f"unbound parameters: {missing}")
    return pt


def naive_sum(f: HyperTerm, n: int, params=None):
    """Exact double sum over 0 <= l <= k <= n-1: n(n+1)/2 term evaluations."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pt = _bound_params(f, n, params)
    total = 0
    for k in range(n):
        pt["k"] = k
        for l in range(k + 1):
            pt["l"] = l
            total += f.eval(pt)
    return total


def reduce(f: HyperTerm, closed: ClosedPair, n: int, params=None):
    """Boundary form of the double sum: at most 4n term evaluations.

    Computes sum_l (G1(n,l) - G1(l,l)) + sum_k (G2(k,k+1) - G2(k,0)).
    A pole in any boundary evaluation means the supplied forms do not cover
    that boundary point, and raises ReductionNeedsClosedForm.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pt = _bound_params(f, n, params)
    g1 = closed.g1
    g2 = closed.g2
    total = 0
    try:
        for l in range(n):
            pt["l"] = l
            pt["k"] = n
            total += g1.eval(pt)
            pt["k"] = l
            total -= g1.eval(pt)
        for k in range(n):
            pt["k"] = k
            pt["l"] = k + 1
            total += g2.eval(pt)
            pt["l"] = 0
            total -= g2.eval(pt)
    except PoleAtPoint as exc:
        raise ReductionNeedsClosedForm(
            f"boundary evaluation at k={pt['k']}, l={pt['l']} hit a pole: {exc}"
        ) from exc
    return total


# -- certificate search --------------------------------------------------------


def solve_linear(rows, rhs):
    """Exact Gaussian elimination over the rationals.

    rows: list of coefficient lists, rhs: list of Fractions.  Returns a
    particular solution with free variables set to 0, or None when the
    system is inconsistent.
    """
    m = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pr = m[r]
        inv = 1 / pr[c]
        for j in range(c, ncols + 1):
            pr[j] *= inv
        for i in range(nrows):
            if i != r and m[i][c]:
                factor = m[i][c]
                mi = m[i]
                for j in range(c, ncols + 1):
                    mi[j] -= factor * pr[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][ncols]
    return sol


def _monomials_upto(ctx, deg: int):
    """All monomials of total degree <= deg, as Polynomials (grlex order)."""
    nvars = len(ctx.names)
    out = []
    for exps in itertools.product(range(deg + 1), repeat=nvars):
        if sum(exps) <= deg:
            out.append(exps)
    out.sort(key=lambda e: (sum(e), e))
    return [Polynomial(ctx, {e: Fraction(1)}) for e in out]


def find_certificate(
    f: HyperTerm, d1: Polynomial, d2: Polynomial, deg: int
) -> Optional[Certificate]:
    """Bounded-degree ansatz search for a certificate with given denominators.

    Posits R_i = N_i/d_i with unknown numerators of total degree <= deg,
    clears all denominators in the telescoping identity, matches monomial
    coefficients, and solves the resulting linear system exactly.  Free
    variables are set to 0.  Returns None when the system is inconsistent.
    """
    if deg > 6:
        raise ValueError("ansatz degree capped at 6")
    if d1.is_zero() or d2.is_zero():
        raise ValueError("ansatz denominators must be nonzero")
    ctx = f.ctx
    u = f.shift_quotient("k")
    v = f.shift_quotient("l")
    d1s = d1.shift("k", 1)
    d2s = d2.shift("l", 1)
    # common multiplier P = d1 d1s u.den d2 d2s v.den; per-term cofactors
    a1 = d1 * d2 * d2s * v.den          # with N1(k+1,l) u.num
    a2 = d1s * u.den * d2 * d2s * v.den  # with N1(k,l)
    a3 = d1 * d1s * u.den * d2           # with N2(k,l+1) v.num
    a4 = d1 * d1s * u.den * d2s * v.den  # with N2(k,l)
    p = d1 * d1s * u.den * d2 * d2s * v.den
    monos = _monomials_upto(ctx, deg)
    columns = []
    for m in monos:
        columns.append(m.shift("k", 1) * u.num * a1 - m * a2)
    for m in monos:
        columns.append(m.shift("l", 1) * v.num * a3 - m * a4)
    support = set(p.terms)
    for col in columns:
        support.update(col.terms)
    support = sorted(support)
    rows = [[col.terms.get(e, Fraction(0)) for col in columns] for e in support]
    rhs = [p.terms.get(e, Fraction(0)) for e in support]
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    nm = len(monos)
    n1 = Polynomial.zero(ctx)
    n2 = Polynomial.zero(ctx)
    for coeff, m in zip(sol[:nm], monos):
        if coeff:
            n1 = n1 + m.scale(coeff)
    for coeff, m in zip(sol[nm:], monos):
        if coeff:
            n2 = n2 + m.scale(coeff)
    cert = Certificate(RationalFunction(n1, d1), RationalFunction(n2, d2))
    if not verify_symbolic(f, cert).symbolic_pass:  # defensive; should not happen
        return None
    return cert
