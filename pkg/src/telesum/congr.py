"""Executable catalog of congruence, divisibility, integrality and parity claims.

Every case evaluates its left-hand side as an exact integer (or exact
rational reduced via `rational_mod`), then compares residues; there is no
modular arithmetic during summation.  Double-sum left-hand sides go through
the problem registry and prefer the Theta(n) boundary reduction, falling back
to the naive double sum when the reduction hits a boundary pole (certificate
missing or degenerate parameters).  A deterministic tithe of instances is
cross-checked against the naive double sum.

Ranges are guarded per case; `run_case` refuses anything beyond desk scale.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import cert, problems, seq
from .arith import (
    PrimePower,
    bernoulli,
    binomial,
    fermat_quotient_2,
    harmonic,
    legendre,
    primes_in,
    rational_mod,
)


@dataclass(frozen=True)
class InstanceRecord:
    case: str
    instance: str
    status: str  # pass | fail | conjecture-fail
    lhs_mod: str
    rhs_mod: str
    modulus: str


@dataclass
class CaseReport:
    case: str
    checked: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    records: list = field(default_factory=list)
    notes: str = ""

    @property
    def ok(self) -> bool:
        return not self.failures


class RangeGuard(ValueError):
    """Requested range exceeds the case's desk-scale guard."""


@dataclass(frozen=True)
class Bounds:
    max_n: Optional[int] = None
    max_p: Optional[int] = None
    bc_span: int = 4  # parameter sweep half-width for the trinomial cases


@dataclass(frozen=True)
class Case:
    id: str
    kind: str  # congruence | divisibility | integrality | parity | characterization
    description: str
    full: Bounds
    guard: Bounds
    instances: Callable  # Bounds -> iterable of instance dicts
    check: Callable  # instance -> (ok, lhs_mod, rhs_mod, modulus)
    problem: Optional[str] = None  # registry name for the double-sum lhs
    conjecture: bool = False
    fixed: Optional[tuple] = None  # fixed parameter assignments, e.g. (("b",1),)


def _is_pow2(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


class _DoubleSum:
    """Double-sum evaluator: boundary reduction first, naive on poles."""

    def __init__(self, problem_name: str):
        self.name = problem_name
        self._res = None

    @property
    def res(self):
        if self._res is None:
            self._res = problems.resolve(self.name)
        return self._res

    def value(self, n: int, params=None):
        try:
            return cert.reduce(self.res.f, self.res.pair, n, params)
        except cert.ReductionNeedsClosedForm:
            return cert.naive_sum(self.res.f, n, params)

    def naive(self, n: int, params=None):
        return cert.naive_sum(self.res.f, n, params)


_SUMS: dict = {}


def _dsum(name: str) -> _DoubleSum:
    if name not in _SUMS:
        _SUMS[name] = _DoubleSum(name)
    return _SUMS[name]


# -- instance generators --------------------------------------------------------


def _n_range(lo: int):
    def gen(bounds: Bounds):
        return ({"n": n} for n in range(lo, bounds.max_n + 1))

    return gen


def _prime_range(lo: int, odd_only: bool = False):
    def gen(bounds: Bounds):
        start = 3 if odd_only else 2
        return ({"p": p} for p in primes_in(max(start, lo), bounds.max_p))

    return gen


def _bc_n_range(bounds: Bounds):
    s = bounds.bc_span
    for b in range(-s, s + 1):
        for c in range(-s, s + 1):
            for n in range(1, bounds.max_n + 1):
                yield {"b": b, "c": c, "n": n}


def _bc_p_range(bounds: Bounds):
    s = bounds.bc_span
    for b in range(-s, s + 1):
        for c in range(-s, s + 1):
            for p in primes_in(3, bounds.max_p):
                if (b * (b - 2 * c)) % p != 0:
                    yield {"b": b, "c": c, "p": p}


# -- case checks ----------------------------------------------------------------
# each returns (ok, lhs_mod, rhs_mod, modulus) with everything exact


def _congruence(lhs: int, rhs: int, modulus: int):
    lm = lhs % modulus
    rm = rhs % modulus
    return lm == rm, str(lm), str(rm), str(modulus)


def _chk_T11n(inst):
    n = inst["n"]
    s = _dsum("franel_quadratic").value(n)
    m = n * n * (n - 1)
    q, r = divmod(s, m)
    ok = r == 0
    return ok, str(s % m), "0", str(m)


def _chk_T11p(inst):
    p = inst["p"]
    s = _dsum("franel_quadratic").value(p)
    rhs = 3 * p * p * (p - 1) - 16 * p ** 3 * fermat_quotient_2(p)
    return _congruence(s, rhs, p ** 4)


def _chk_T12odd(inst):
    # S/n^2 an odd integer <=> S = n^2 (mod 2 n^2)
    n = inst["n"]
    s = _dsum("sunpoly_neg").value(n)
    return _congruence(s, n * n, 2 * n * n)


def _chk_T12p(inst):
    p = inst["p"]
    s = _dsum("sunpoly_neg").value(p)
    return _congruence(s, 3 * p * p, p ** 3)


def _chk_T13odd(inst):
    # S/n an odd integer <=> S = n (mod 2n)
    n = inst["n"]
    s = _dsum("sunf_linear").value(n)
    return _congruence(s, n, 2 * n)


def _chk_T14n(inst):
    b, c, n = inst["b"], inst["c"], inst["n"]
    s = _dsum("trinomial_sq").value(n, {"b": b, "c": c})
    return _congruence(s, 0, n)


def _chk_T14p(inst):
    b, c, p = inst["b"], inst["c"], inst["p"]
    s = _dsum("trinomial_sq").value(p, {"b": b, "c": c})
    pp = PrimePower(p, 2)
    lhs = rational_mod(Fraction(s, (b - 2 * c) ** (2 * (p - 1))), pp)
    rhs = (p * (b + 2 * c) * legendre(b * b - 4 * c * c, p)) % pp.modulus
    return lhs == rhs, str(lhs), str(rhs), str(pp.modulus)


def _chk_C15n(inst):
    n = inst["n"]
    s = _dsum("trinomial_sq").value(n, {"b": 1, "c": 1})
    return _congruence(s, 0, n)


def _chk_C15p(inst):
    p = inst["p"]
    s = _dsum("trinomial_sq").value(p, {"b": 1, "c": 1})
    return _congruence(s, 3 * p * legendre(p, 3), p * p)


def _chk_T16int(inst):
    # a_n = S/(2 n^3 (n-1)) integral, odd exactly when n is a power of two:
    # S = M [n power of 2] (mod 2M) with M = 2 n^3 (n-1)
    n = inst["n"]
    s = _dsum("domb_sixteen").value(n)
    m = 2 * n ** 3 * (n - 1)
    rhs = m if _is_pow2(n) else 0
    return _congruence(s, rhs, 2 * m)


def _chk_T16p(inst):
    p = inst["p"]
    s = _dsum("domb_sixteen").value(p)
    pp = PrimePower(p, 5)
    lhs = rational_mod(Fraction(s, 16 ** (p - 1)), pp)
    rhs = (-4 * p ** 4 * fermat_quotient_2(p)) % pp.modulus
    return lhs == rhs, str(lhs), str(rhs), str(pp.modulus)


def _chk_T17in(inst):
    n = inst["n"]
    s = _dsum("franel_quartic").value(n)
    return _congruence(s, 0, 4 * n * n * (n - 1))


def _chk_T17ip(inst):
    p = inst["p"]
    s = _dsum("franel_quartic").value(p)
    return _congruence(s, -4 * p ** 3, p ** 4)


def _chk_T17iin(inst):
    n = inst["n"]
    s = _dsum("sunpoly_cubic").value(n)
    return _congruence(s, 0, 3 * n ** 3)


def _chk_T17iip(inst):
    p = inst["p"]
    s = _dsum("sunpoly_cubic").value(p)
    pp = PrimePower(p, 4)
    # (3 p^3 / 2)(1 + 3 (p|3)); the cubic power follows the worked derivation
    rhs = rational_mod(Fraction(3 * p ** 3 * (1 + 3 * legendre(p, 3)), 2), pp)
    return _congruence(s % pp.modulus, rhs, pp.modulus)


def _chk_T17iiin(inst):
    n = inst["n"]
    s = _dsum("apery_quintic").value(n)
    return _congruence(s, 0, n ** 4)


def _chk_T17iiip(inst):
    p = inst["p"]
    s = _dsum("apery_quintic").value(p)
    return _congruence(s, -2 * p ** 4 + 3 * p ** 5, p ** 7)


def _chk_conj118(inst):
    p = inst["p"]
    s = _dsum("apery_quintic").value(p)
    pp = PrimePower(p, 10)
    rhs = (
        -2 * p ** 4
        + 3 * p ** 5
        + (6 * p - 8) * p ** 5 * harmonic(p - 1)
        - Fraction(12, 5) * p ** 9 * bernoulli(p - 5)
    )
    rhsm = rational_mod(rhs, pp)
    lhsm = s % pp.modulus
    return lhsm == rhsm, str(lhsm), str(rhsm), str(pp.modulus)


def _chk_lem51(inst):
    n = inst["n"]
    lhs = int(binomial(2 * n - 1, n)) & 1
    rhs = 1 if _is_pow2(n) else 0
    return lhs == rhs, str(lhs), str(rhs), "2"


def _chk_lem62(inst):
    n = inst["n"]
    return _congruence(n * seq.g(n), 0, 3)


def _chk_gz19(inst):
    n = inst["n"]
    s = sum(
        binomial(n - 1, l) ** 2 * binomial(-n - 1, l) ** 2 for l in range(n)
    )
    return _congruence(s, 0, n)


def _chk_sun22(inst):
    n = inst["n"]
    s = sum(
        (2 * l + 1) * binomial(n - 1, l) ** 2 * binomial(-n - 1, l) ** 2
        for l in range(n)
    )
    return _congruence(s, 0, n * n)


def _lem62_range(bounds: Bounds):
    return ({"n": n} for n in range(0, bounds.max_n + 1))


CASES = {
    c.id: c
    for c in [
        Case("T1.1-n", "divisibility",
             "quadratic Franel sum divisible by n^2(n-1)",
             Bounds(max_n=200), Bounds(max_n=400), _n_range(2), _chk_T11n,
             problem="franel_quadratic"),
        Case("T1.1-p", "congruence",
             "quadratic Franel sum mod p^4 in terms of the Fermat quotient",
             Bounds(max_p=60), Bounds(max_p=100), _prime_range(3, odd_only=True),
             _chk_T11p, problem="franel_quadratic"),
        Case("T1.2-odd", "integrality",
             "S/n^2 an odd integer for the g_k(-1) sum",
             Bounds(max_n=200), Bounds(max_n=400), _n_range(1), _chk_T12odd,
             problem="sunpoly_neg"),
        Case("T1.2-p", "congruence",
             "g_k(-1) sum = 3p^2 mod p^3, every prime including 2",
             Bounds(max_p=60), Bounds(max_p=100), _prime_range(2), _chk_T12p,
             problem="sunpoly_neg"),
        Case("T1.3-odd", "integrality",
             "S/n an odd integer for the signed cubic sum",
             Bounds(max_n=200), Bounds(max_n=400), _n_range(1), _chk_T13odd,
             problem="sunf_linear"),
        Case("T1.4-n", "divisibility",
             "weighted trinomial-square sum divisible by n (b, c swept; 0^0 = 1 at b = 2c)",
             Bounds(max_n=80, bc_span=4), Bounds(max_n=160, bc_span=6),
             _bc_n_range, _chk_T14n, problem="trinomial_sq"),
        Case("T1.4-p", "congruence",
             "trinomial-square sum mod p^2 via the Legendre symbol, p not dividing b(b-2c)",
             Bounds(max_p=50, bc_span=4), Bounds(max_p=70, bc_span=6),
             _bc_p_range, _chk_T14p, problem="trinomial_sq"),
        Case("C1.5-n", "divisibility",
             "(8k+5) T_k^2 sum divisible by n",
             Bounds(max_n=200), Bounds(max_n=400), _n_range(1), _chk_C15n,
             problem="trinomial_sq", fixed=(("b", 1), ("c", 1))),
        Case("C1.5-p", "congruence",
             "(8k+5) T_k^2 sum = 3p (p|3) mod p^2, every prime",
             Bounds(max_p=60), Bounds(max_p=100), _prime_range(2), _chk_C15p,
             problem="trinomial_sq", fixed=(("b", 1), ("c", 1))),
        Case("T1.6-int", "characterization",
             "a_n = S/(2n^3(n-1)) integral; odd exactly when n is a power of two",
             Bounds(max_n=300), Bounds(max_n=400), _n_range(2), _chk_T16int,
             problem="domb_sixteen"),
        Case("T1.6-p", "congruence",
             "Domb sum over 16^k mod p^5 via the Fermat quotient, p > 3",
             Bounds(max_p=50), Bounds(max_p=70), _prime_range(5), _chk_T16p,
             problem="domb_sixteen"),
        Case("T1.7i-n", "divisibility",
             "quartic Franel sum divisible by 4n^2(n-1)",
             Bounds(max_n=120), Bounds(max_n=240), _n_range(2), _chk_T17in,
             problem="franel_quartic"),
        Case("T1.7i-p", "congruence",
             "quartic Franel sum = -4p^3 mod p^4",
             Bounds(max_p=50), Bounds(max_p=70), _prime_range(3, odd_only=True),
             _chk_T17ip, problem="franel_quartic"),
        Case("T1.7ii-n", "divisibility",
             "cubic g_k sum divisible by 3n^3",
             Bounds(max_n=120), Bounds(max_n=240), _n_range(1), _chk_T17iin,
             problem="sunpoly_cubic"),
        Case("T1.7ii-p", "congruence",
             "cubic g_k sum = (3p^3/2)(1 + 3(p|3)) mod p^4",
             Bounds(max_p=50), Bounds(max_p=70), _prime_range(3, odd_only=True),
             _chk_T17iip, problem="sunpoly_cubic"),
        Case("T1.7iii-n", "divisibility",
             "quintic Apery sum divisible by n^4",
             Bounds(max_n=120), Bounds(max_n=240), _n_range(1), _chk_T17iiin,
             problem="apery_quintic"),
        Case("T1.7iii-p", "congruence",
             "quintic Apery sum = -2p^4 + 3p^5 mod p^7, p > 3",
             Bounds(max_p=40), Bounds(max_p=60), _prime_range(5), _chk_T17iiip,
             problem="apery_quintic"),
        Case("CONJ-1.18", "congruence",
             "conjectural mod p^10 refinement with harmonic and Bernoulli terms, p > 5",
             Bounds(max_p=31), Bounds(max_p=43), _prime_range(7), _chk_conj118,
             problem="apery_quintic", conjecture=True),
        Case("LEM-5.1", "parity",
             "binom(2n-1, n) odd exactly when n is a power of two",
             Bounds(max_n=512), Bounds(max_n=2048), _n_range(1), _chk_lem51),
        Case("LEM-6.2", "divisibility",
             "3 divides n g_n",
             Bounds(max_n=200), Bounds(max_n=1000), _lem62_range, _chk_lem62),
        Case("GZ-1.9", "divisibility",
             "sum binom(n-1,l)^2 binom(-n-1,l)^2 divisible by n",
             Bounds(max_n=120), Bounds(max_n=500), _n_range(1), _chk_gz19),
        Case("SUN-22", "divisibility",
             "sum (2l+1) binom(n-1,l)^2 binom(-n-1,l)^2 divisible by n^2",
             Bounds(max_n=120), Bounds(max_n=500), _n_range(1), _chk_sun22),
    ]
}

QUICK_MAX_N = 40
QUICK_MAX_P = 23
QUICK_BC_SPAN = 2


def _effective_bounds(case: Case, profile: str, max_n=None, max_p=None) -> Bounds:
    base = case.full
    if profile == "quick":
        base = Bounds(
            max_n=min(base.max_n, QUICK_MAX_N) if base.max_n else None,
            max_p=min(base.max_p, QUICK_MAX_P) if base.max_p else None,
            bc_span=min(base.bc_span, QUICK_BC_SPAN),
        )
    elif profile != "full":
        raise ValueError(f"unknown profile {profile!r}")
    eff = Bounds(
        max_n=max_n if max_n is not None else base.max_n,
        max_p=max_p if max_p is not None else base.max_p,
        bc_span=base.bc_span,
    )
    if eff.max_n is not None and case.guard.max_n is not None and eff.max_n > case.guard.max_n:
        raise RangeGuard(
            f"{case.id}: max_n={eff.max_n} exceeds desk-scale guard {case.guard.max_n}"
        )
    if eff.max_p is not None and case.guard.max_p is not None and eff.max_p > case.guard.max_p:
        raise RangeGuard(
            f"{case.id}: max_p={eff.max_p} exceeds desk-scale guard {case.guard.max_p}"
        )
    return eff


def _instance_label(inst: dict) -> str:
    return ",".join(f"{k}={inst[k]}" for k in sorted(inst))


def run_case(case_id: str, profile: str = "full", max_n=None, max_p=None) -> CaseReport:
    """Run one case over its (possibly overridden) range.

    Every 10th instance of a problem-backed case is re-evaluated with the
    naive double sum as an oracle for the boundary reduction.
    """
    case = CASES.get(case_id)
    if case is None:
        raise KeyError(f"unknown case id {case_id!r}")
    bounds = _effective_bounds(case, profile, max_n, max_p)
    report = CaseReport(case=case_id)
    start = time.perf_counter()
    fail_status = "conjecture-fail" if case.conjecture else "fail"
    for idx, inst in enumerate(case.instances(bounds)):
        ok, lhs_mod, rhs_mod, modulus = case.check(inst)
        if ok and case.problem is not None and idx % 10 == 9 and not _spot_check(case, inst):
            ok = False
            lhs_mod = "reduce/naive disagree"
        rec = InstanceRecord(
            case=case_id,
            instance=_instance_label(inst),
            status="pass" if ok else fail_status,
            lhs_mod=lhs_mod,
            rhs_mod=rhs_mod,
            modulus=modulus,
        )
        report.records.append(rec)
        report.checked += 1
        if not ok:
            report.failures.append(rec)
    report.elapsed = time.perf_counter() - start
    return report


def _spot_check(case: Case, inst: dict) -> bool:
    """Oracle: the reduced and naive double sums must agree on this instance."""
    ds = _dsum(case.problem)
    n = inst.get("n") or inst.get("p")
    params = dict(case.fixed or ())
    params.update({k: inst[k] for k in ("b", "c") if k in inst})
    return ds.value(n, params) == ds.naive(n, params)


def run_all(profile: str = "full", jobs: int = 1) -> list:
    """Run every registered case; reports sorted by case id."""
    ids = sorted(CASES)
    if jobs > 1:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = {cid: pool.submit(run_case, cid, profile) for cid in ids}
            return [futs[cid].result() for cid in ids]
    return [run_case(cid, profile) for cid in ids]
