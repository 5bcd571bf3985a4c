"""Registry of the bundled problems.

Loads the eight shipped .tel files, exposes them as cert.Problem values, and
resolves a working certificate for each.  For `sunpoly_cubic` the shipped
certificate is the published one, which does not telescope its summand; the
resolver detects the failure and recovers a correct certificate by ansatz
search over the denominators matching the summand's own cubic coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Optional

from . import cert, dsl
from .poly import Polynomial

PROBLEM_NAMES = (
    "franel_quadratic",
    "sunpoly_neg",
    "sunf_linear",
    "trinomial_sq",
    "domb_sixteen",
    "franel_quartic",
    "sunpoly_cubic",
    "apery_quintic",
)

_SPECS: dict = {}
_RESOLVED: dict = {}


def problem_text(name: str) -> str:
    return resources.files("telesum.data").joinpath(f"{name}.tel").read_text()


def load_spec(name: str) -> dsl.ProblemSpec:
    if name not in PROBLEM_NAMES:
        raise KeyError(f"unknown problem {name!r}")
    spec = _SPECS.get(name)
    if spec is None:
        spec = _SPECS[name] = dsl.parse_problem(problem_text(name), name=name)
    return spec


def as_problem(spec: dsl.ProblemSpec) -> cert.Problem:
    certificate = None
    if spec.r1 is not None and spec.r2 is not None:
        certificate = cert.Certificate(spec.r1, spec.r2)
    closed = None
    if spec.g1 is not None and spec.g2 is not None:
        closed = cert.ClosedPair(spec.g1, spec.g2)
    return cert.Problem(spec.name, spec.f, certificate, closed)


@dataclass(frozen=True)
class Resolved:
    """A problem plus the certificate that actually verifies for it."""

    problem: cert.Problem
    certificate: cert.Certificate
    source: str  # "printed" | "recovered"
    pair: cert.ClosedPair

    @property
    def f(self):
        return self.problem.f


def _recovery_denominators(spec: dsl.ProblemSpec):
    """Ansatz denominators for the certificate recovery of sunpoly_cubic:
    the summand's own coefficient cubic, times (l+1) on the R1 side."""
    ctx = spec.ctx
    cubic = spec.f.prefactor  # 12k^3 + 34k^2 + 30k + 9
    l1 = Polynomial.var(ctx, "l") + Polynomial.one(ctx)
    return cubic * l1, cubic


def resolve(name: str) -> Resolved:
    """Problem with a verified certificate; cached per process."""
    got = _RESOLVED.get(name)
    if got is not None:
        return got
    spec = load_spec(name)
    problem = as_problem(spec)
    certificate = problem.certificate
    source = "printed"
    if certificate is not None and not cert.verify_symbolic(spec.f, certificate).symbolic_pass:
        d1, d2 = _recovery_denominators(spec)
        certificate = cert.find_certificate(spec.f, d1, d2, deg=5)
        if certificate is None:
            raise RuntimeError(f"no certificate recovered for {name}")
        source = "recovered"
        problem = cert.Problem(spec.name, spec.f, certificate, problem.closed)
    pair = problem.closed or cert.ClosedPair(
        spec.f.scaled(certificate.r1), spec.f.scaled(certificate.r2)
    )
    got = Resolved(problem=problem, certificate=certificate, source=source, pair=pair)
    _RESOLVED[name] = got
    return got


def all_specs():
    return [load_spec(name) for name in PROBLEM_NAMES]


def search_denominators(name: str):
    """The denominator pair used for ansatz searches on this problem:
    the denominators of its shipped certificate."""
    spec = load_spec(name)
    if spec.r1 is None or spec.r2 is None:
        raise ValueError(f"{name} ships no certificate")
    return spec.r1.den, spec.r2.den
