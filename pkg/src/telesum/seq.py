"""Exact combinatorial sequence generators.

All values are exact integers (polynomial evaluations are rational only
through their x argument).  Each sequence keeps a per-process, index-keyed
memo: entries are written once and shared read-only afterwards, so results
do not depend on call interleaving.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import as_fraction, binomial, catalan  # noqa: F401  (catalan is a sequence here)

SEQUENCE_IDS = (
    "franel",
    "franel_strehl",
    "sunF",
    "domb",
    "apery",
    "apery_alt",
    "apery_poly",
    "g_poly",
    "g",
    "trinomial",
    "catalan",
)


def _memoized(fn):
    cache = {}

    def wrapper(*args):
        v = cache.get(args)
        if v is None:
            v = cache[args] = fn(*args)
        return v

    wrapper.cache = cache
    wrapper.__doc__ = fn.__doc__
    wrapper.__name__ = fn.__name__
    return wrapper


def _check_index(k):
    if k < 0:
        raise ValueError("sequence index must be >= 0")


@_memoized
def franel(k: int):
    """Franel number: sum of binom(k,l)^3 over 0 <= l <= k."""
    _check_index(k)
    return int(sum(binomial(k, l) ** 3 for l in range(k + 1)))


@_memoized
def franel_strehl(k: int):
    """Strehl's form of the Franel number: sum of binom(k,l)^2 binom(2l,k)."""
    _check_index(k)
    return int(sum(binomial(k, l) ** 2 * binomial(2 * l, k) for l in range(k + 1)))


@_memoized
def sunF(k: int):
    """Signed cubic sum: sum of binom(k,l)^3 (-8)^l."""
    _check_index(k)
    return int(sum(binomial(k, l) ** 3 * (-8) ** l for l in range(k + 1)))


@_memoized
def domb(k: int):
    """Domb number: sum of binom(k,l)^2 binom(2l,l) binom(2(k-l),k-l)."""
    _check_index(k)
    return int(
        sum(
            binomial(k, l) ** 2 * binomial(2 * l, l) * binomial(2 * (k - l), k - l)
            for l in range(k + 1)
        )
    )


@_memoized
def apery(k: int):
    """Apery number: sum of binom(k,l)^2 binom(k+l,l)^2."""
    _check_index(k)
    return int(sum(binomial(k, l) ** 2 * binomial(k + l, l) ** 2 for l in range(k + 1)))


@_memoized
def apery_alt(k: int):
    """Apery number in the second form: sum of binom(k+l,2l)^2 binom(2l,l)^2."""
    _check_index(k)
    return int(
        sum(binomial(k + l, 2 * l) ** 2 * binomial(2 * l, l) ** 2 for l in range(k + 1))
    )


def apery_poly(n: int, x) -> Fraction:
    """Apery polynomial A_n(x) = sum binom(n,k)^2 binom(n+k,k)^2 x^k."""
    _check_index(n)
    x = Fraction(x)
    return as_fraction(
        sum(binomial(n, k) ** 2 * binomial(n + k, k) ** 2 * x ** k for k in range(n + 1))
    )


def g_poly(n: int, x) -> Fraction:
    """Polynomial g_n(x) = sum binom(n,k)^2 binom(2k,k) x^k."""
    _check_index(n)
    x = Fraction(x)
    return as_fraction(
        sum(binomial(n, k) ** 2 * binomial(2 * k, k) * x ** k for k in range(n + 1))
    )


@_memoized
def g(k: int):
    """g_k = g_k(1) = sum binom(k,l)^2 binom(2l,l)."""
    _check_index(k)
    return int(sum(binomial(k, l) ** 2 * binomial(2 * l, l) for l in range(k + 1)))


# (x^2 + b x + c)^n coefficient lists, grown incrementally per (b, c)
_TRI_POWERS = {}


def trinomial(n: int, b, c):
    """Coefficient of x^n in (x^2 + b x + c)^n, by exact polynomial powering."""
    _check_index(n)
    b = int(b)
    c = int(c)
    powers = _TRI_POWERS.setdefault((b, c), [[1]])
    while len(powers) <= n:
        prev = powers[-1]
        # multiply by (c + b x + x^2)
        out = [0] * (len(prev) + 2)
        for i, a in enumerate(prev):
            if a:
                out[i] += a * c
                out[i + 1] += a * b
                out[i + 2] += a
        powers.append(out)
    return powers[n][n]


@_memoized
def trinomial_sq_expansion(k: int, b, c):
    """Expansion sum matching trinomial(k, b, c^2)^2:
    sum binom(k+l,2l) binom(2l,l)^2 c^(2l) (b^2-4c^2)^(k-l)."""
    _check_index(k)
    b = int(b)
    c = int(c)
    return int(
        sum(
            binomial(k + l, 2 * l)
            * binomial(2 * l, l) ** 2
            * c ** (2 * l)
            * (b * b - 4 * c * c) ** (k - l)
            for l in range(k + 1)
        )
    )


def compute(seq_id: str, k: int, params=None):
    """Uniform entry point used by the CLI: value of a sequence at index k."""
    params = params or {}
    if seq_id == "trinomial":
        return trinomial(k, params["b"], params["c"])
    if seq_id == "apery_poly":
        return apery_poly(k, params["x"])
    if seq_id == "g_poly":
        return g_poly(k, params["x"])
    if seq_id == "catalan":
        return catalan(k)
    if seq_id in SEQUENCE_IDS:
        return globals()[seq_id](k)
    raise ValueError(f"unknown sequence id {seq_id!r}")
