"""Exact integer and rational arithmetic helpers.

Everything here is exact: arbitrary-precision integers, `fractions.Fraction`
rationals, and residues computed from them.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

try:
    from gmpy2 import bincoef as _bincoef  # much faster than math.comb on 3.10
except ImportError:  # pragma: no cover
    from math import comb as _bincoef


class NonInvertibleDenominator(ValueError):
    """Raised when reducing a rational whose denominator shares a factor with the modulus."""


def as_fraction(v) -> Fraction:
    """Exact Fraction with plain-int internals.

    Accepts int, Fraction, and gmpy2's mpz/mpq.  Fraction(mpq) would keep mpz
    internals, which gmpy2 2.3 then rejects in mixed arithmetic; casting the
    parts through int() avoids that.
    """
    return Fraction(int(v.numerator), int(v.denominator))


def exact_int_or_fraction(v):
    """Plain int when the value is integral, else a plain-int Fraction."""
    if v.denominator == 1:
        return int(v.numerator)
    return Fraction(int(v.numerator), int(v.denominator))


def is_prime(n) -> bool:
    """Deterministic primality by trial division; intended for desk-scale n."""
    n = int(n)
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    r = isqrt(n)
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p <= hi, ascending."""
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


def binomial(m, r):
    """Generalized binomial coefficient with integer arguments.

    Defined by the falling-factorial product m(m-1)...(m-r+1)/r!, so the
    upper index may be negative; r < 0 gives 0, as does 0 <= m < r.
    May return a gmpy2 mpz (it behaves as an int; products of large values
    are much faster that way).
    """
    if r < 0:
        return 0
    if m >= 0:
        return _bincoef(m, r) if r <= m else 0
    # binom(m, r) = (-1)^r * binom(r - m - 1, r) for m < 0
    v = _bincoef(r - m - 1, r)
    return -v if r & 1 else v


def catalan(l):
    """l-th Catalan number binom(2l, l)/(l + 1); the division is exact."""
    if l < 0:
        raise ValueError("catalan needs l >= 0")
    return int(binomial(2 * l, l)) // (l + 1)


def legendre(a, p) -> int:
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    p = int(p)
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre needs an odd prime, got {p}")
    v = pow(int(a) % p, (p - 1) // 2, p)
    return -1 if v == p - 1 else int(v)


def fermat_quotient_2(p):
    """Fermat quotient (2^(p-1) - 1)/p for an odd prime p (exact by Fermat)."""
    p = int(p)
    if p == 2 or not is_prime(p):
        raise ValueError(f"fermat_quotient_2 needs an odd prime, got {p}")
    return (pow(2, p - 1) - 1) // p


_HARMONIC = [Fraction(0)]


def harmonic(n: int) -> Fraction:
    """n-th harmonic number 1 + 1/2 + ... + 1/n as an exact fraction."""
    if n < 0:
        raise ValueError("harmonic needs n >= 0")
    while len(_HARMONIC) <= n:
        k = len(_HARMONIC)
        _HARMONIC.append(_HARMONIC[-1] + Fraction(1, k))
    return _HARMONIC[n]


_BERNOULLI = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """n-th Bernoulli number, convention B_1 = -1/2.

    Computed from sum_{j=0}^{n} binom(n+1, j) B_j = 0 with B_0 = 1.
    """
    if n < 0:
        raise ValueError("bernoulli needs n >= 0")
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        if m > 1 and m % 2 == 1:
            _BERNOULLI.append(Fraction(0))
            continue
        acc = Fraction(0)
        for j in range(m):
            acc += binomial(m + 1, j) * _BERNOULLI[j]
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


@dataclass(frozen=True)
class PrimePower:
    """Modulus p^e with p a (deterministically checked) prime and e >= 1."""

    p: int
    e: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.e < 1:
            raise ValueError("exponent must be >= 1")

    @property
    def modulus(self) -> int:
        return self.p ** self.e


def rational_mod(q, m: PrimePower) -> int:
    """Residue of the rational q modulo p^e, in [0, p^e).

    Requires gcd(den(q), p) = 1; raises NonInvertibleDenominator otherwise.
    Plain integers are accepted and reduced directly.
    """
    num = q.numerator
    den = q.denominator
    if den != 1 and gcd(int(den), m.p) != 1:
        raise NonInvertibleDenominator(f"denominator {den} not invertible mod {m.p}^{m.e}")
    mod = m.modulus
    return int(num) % mod if den == 1 else int(num) * pow(int(den), -1, mod) % mod
