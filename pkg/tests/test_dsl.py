import random
from fractions import Fraction

import pytest

from telesum import problems, seq
from telesum.dsl import ParseError, ProblemSpec, parse_problem, print_problem
from telesum.poly import Context, Polynomial, RationalFunction
from telesum.term import HyperTerm, LinForm, eval_term


def test_parse_franel_quadratic_summand():
    spec = parse_problem("F = (9*k^2+5*k) * (-1)^k * binom(k,l)^2 * binom(2*l,k)")
    assert eval_term(spec.f, {"k": 1, "l": 1}) == -28
    assert spec.r1 is None and spec.g1 is None
    bundled = problems.load_spec("franel_quadratic")
    assert spec.f == bundled.f


def test_parse_certificate_line():
    text = (
        "F = (9*k^2+5*k) * (-1)^k * binom(k,l)^2 * binom(2*l,k)\n"
        "R2 = (-2*l+k)*(3*k-l-2) / (k*(9*k+5))\n"
    )
    spec = parse_problem(text)
    assert spec.r2 is not None
    assert spec.r2.eval({"k": 3, "l": 1}) == Fraction((-2 + 3) * (9 - 1 - 2), 3 * 32)


def test_parse_error_position():
    with pytest.raises(ParseError) as ei:
        parse_problem("F = binom(k,l")
    assert ei.value.line == 1
    assert ei.value.column == 14  # just past the truncated argument list
    assert "found end of input" in str(ei.value)


def test_semantic_errors_have_positions():
    with pytest.raises(ParseError) as ei:
        parse_problem("F = binom(k*l,1)")
    assert ei.value.line == 1 and ei.value.column == 11

    with pytest.raises(ParseError) as ei:
        parse_problem("F = (k+1)^l")
    assert "integer" in ei.value.expected

    with pytest.raises(ParseError) as ei:
        parse_problem("F = (2*x+1) * binom(k,l)")
    assert ei.value.found == "x"

    with pytest.raises(ParseError) as ei:
        parse_problem("param b\nF = (k/(b)) ^ l * binom(k,l)")
    assert ei.value.line == 2

    with pytest.raises(ParseError) as ei:
        parse_problem("F = binom(k,l)\nR1 = k\nR1 = l")
    assert ei.value.line == 3


def test_duplicate_and_reserved_params():
    with pytest.raises(ParseError):
        parse_problem("param b, b\nF = binom(k,l)")
    with pytest.raises(ParseError):
        parse_problem("param k\nF = binom(k,l)")


def test_exponent_tower_rejected():
    with pytest.raises(ParseError):
        parse_problem("F = (k^2^3) * binom(k,l)")


def test_canonical_ordering_on_print():
    spec = parse_problem("F = (l*k) * binom(k,l)")
    assert "k*l" in print_problem(spec)


def test_bundled_files_parse_and_match_sequences():
    # each file's rows, summed over l, give weight(k) * sequence(k)
    weights = {
        "franel_quadratic": lambda k: (9 * k * k + 5 * k) * (-1) ** k * seq.franel(k),
        "sunpoly_neg": lambda k: (8 * k * k + 12 * k + 5) * seq.g_poly(k, -1),
        "sunf_linear": lambda k: (6 * k + 5) * (-1) ** k * seq.sunF(k),
        "franel_quartic": lambda k: (12 * k ** 4 + 25 * k ** 3 + 21 * k * k + 6 * k)
        * (-1) ** k
        * seq.franel(k),
        "sunpoly_cubic": lambda k: (12 * k ** 3 + 34 * k * k + 30 * k + 9) * seq.g(k),
        "apery_quintic": lambda k: (
            18 * k ** 5 + 45 * k ** 4 + 46 * k ** 3 + 24 * k * k + 7 * k + 1
        )
        * (-1) ** k
        * seq.apery(k),
    }
    for name in problems.PROBLEM_NAMES:
        spec = problems.load_spec(name)
        params = {}
        if name == "trinomial_sq":
            params = {"b": 3, "c": 2, "n": 21}
            expect = lambda k: (
                (8 * 2 * k + 4 * 2 + 3)
                * seq.trinomial(k, 3, 4) ** 2
                * (3 - 4) ** (2 * (21 - 1 - k))
            )
        elif name == "domb_sixteen":
            params = {"n": 21}
            expect = lambda k: (3 * k * k + k) * seq.domb(k) * 16 ** (21 - 1 - k)
        else:
            expect = weights[name]
        for k in range(1, 21):
            row = sum(
                eval_term(spec.f, {**params, "k": k, "l": l}) for l in range(k + 1)
            )
            assert row == expect(k), (name, k)


# -- round-trip on generated specs ---------------------------------------------


def _rand_linform(rng, ctx):
    coeffs = [0] * len(ctx.names)
    coeffs[0] = rng.randrange(-2, 3)
    coeffs[1] = rng.randrange(-2, 3)
    for i in range(2, len(ctx.names)):
        if rng.random() < 0.3:
            coeffs[i] = rng.randrange(-2, 3)
    return LinForm(ctx, tuple(coeffs), rng.randrange(-3, 4))


def _rand_int_poly(rng, ctx, allow_params=True, max_terms=3):
    nv = len(ctx.names)
    terms = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        exps = [0] * nv
        exps[0] = rng.randrange(0, 3)
        exps[1] = rng.randrange(0, 3)
        if allow_params:
            for i in range(2, nv):
                if rng.random() < 0.25:
                    exps[i] = rng.randrange(0, 2)
        terms[tuple(exps)] = Fraction(rng.choice([-5, -3, -2, -1, 1, 2, 3, 7]))
    p = Polynomial(ctx, terms)
    return p if not p.is_zero() else Polynomial.one(ctx)


def _rand_param_ratfunc(rng, ctx):
    """Nonzero rational function in the parameters (or a constant)."""

    def param_poly():
        nv = len(ctx.names)
        terms = {}
        for _ in range(rng.randrange(1, 3)):
            exps = [0] * nv
            for i in range(2, nv):
                if rng.random() < 0.5:
                    exps[i] = rng.randrange(0, 3)
            terms[tuple(exps)] = Fraction(rng.choice([-4, -2, -1, 1, 2, 3, 5]))
        p = Polynomial(ctx, terms)
        return p if not p.is_zero() else Polynomial.one(ctx)

    num = param_poly()
    den = param_poly() if rng.random() < 0.4 else Polynomial.one(ctx)
    f = RationalFunction(num, den)
    if f.is_constant() and f.constant_value() == -1:
        f = RationalFunction.const(ctx, -2)  # -1 bases belong to the sign factor
    return f


def _rand_term(rng, ctx):
    prefactor = _rand_int_poly(rng, ctx)
    sign = _rand_linform(rng, ctx) if rng.random() < 0.5 else LinForm.zero(ctx)
    powers = tuple(
        (_rand_param_ratfunc(rng, ctx), _rand_linform(rng, ctx))
        for _ in range(rng.randrange(0, 3))
    )
    binoms = tuple(
        (_rand_linform(rng, ctx), _rand_linform(rng, ctx), rng.choice([-2, -1, 1, 2, 3]))
        for _ in range(rng.randrange(1, 4))
    )
    return HyperTerm(ctx, prefactor, sign, powers, binoms)


def _rand_ratfunc(rng, ctx):
    return RationalFunction(_rand_int_poly(rng, ctx), _rand_int_poly(rng, ctx))


def _rand_spec(rng, i):
    params = rng.choice([(), ("n",), ("b", "c"), ("b", "c", "n"), ("x",)])
    ctx = Context(params)
    spec = ProblemSpec(name=f"gen{i}", ctx=ctx, f=_rand_term(rng, ctx))
    if rng.random() < 0.6:
        spec.r1 = _rand_ratfunc(rng, ctx)
        spec.r2 = _rand_ratfunc(rng, ctx)
    if rng.random() < 0.4:
        spec.g1 = _rand_term(rng, ctx)
        spec.g2 = _rand_term(rng, ctx)
    return spec


def test_round_trip_generated_specs():
    rng = random.Random(2024)
    for i in range(200):
        spec = _rand_spec(rng, i)
        text = print_problem(spec)
        back = parse_problem(text, name=spec.name)
        assert back == spec, f"spec {i}:\n{text}"
        assert print_problem(back) == text


def test_round_trip_bundled_files():
    for name in problems.PROBLEM_NAMES:
        spec = problems.load_spec(name)
        text = print_problem(spec)
        back = parse_problem(text, name=name)
        assert back == spec, name


def test_truncated_prefix_positions():
    rng = random.Random(99)
    base = print_problem(problems.load_spec("trinomial_sq"))
    for _ in range(120):
        cut = rng.randrange(1, len(base))
        prefix = base[:cut]
        try:
            parse_problem(prefix)
        except ParseError as exc:
            lines = prefix.split("\n")
            assert 1 <= exc.line <= len(lines)
            width = len(lines[exc.line - 1]) + 1
            assert 1 <= exc.column <= max(width, 1)
