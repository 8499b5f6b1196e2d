import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nda.carrier import DomainError
from nda.generator import (
    BelowRangeError,
    GeneratorSpec,
    GeneratorSpecError,
    TableRangeError,
    parse_generator_spec,
    parse_spec,
    validate,
)

FAMILIES = ["identity", "linear:10", "linear:3/2", "linear:1/3", "power:2", "power:3",
            "power:5/2", "power:1/2", "exp:2", "exp:3/2", "dblexp",
            "piecewise:(0,0),(1,2),(2,4),(3,8),(4,16),(5,4096),(6,4097)",
            "piecewise:(0,0),(3,1),(7,20)"]

JUMP = "piecewise:(0,0),(1,2),(2,4),(3,8),(4,16),(5,4096),(6,4097)"


def ceil_oracle(text, n):
    """ceil f(n) evaluated independently with exact rationals / sympy roots."""
    spec = parse_spec(text)
    fam, p = spec.family, spec.params
    if fam == "identity":
        return n
    if fam == "linear":
        return math.ceil(p[0] * n)
    if fam == "power":
        k = p[0]
        root, exact = sympy.integer_nthroot(n ** k.numerator, k.denominator)
        return int(root) if exact else int(root) + 1
    if fam == "exp":
        return math.ceil(p[0] ** n)
    if fam == "dblexp":
        x = 2
        for _ in range(n):
            x = x * x
        return x
    if fam == "piecewise":
        pts = p
        seg = max(i for i in range(len(pts) - 1) if pts[i][0] <= n) if n < pts[-1][0] \
            else len(pts) - 2
        (x0, y0), (x1, y1) = pts[seg], pts[seg + 1]
        return math.ceil(y0 + Fraction(y1 - y0, x1 - x0) * (n - x0))
    raise AssertionError(fam)


def brute_coprojector(proj, y):
    m = 0
    while proj(m + 1) <= y:
        m += 1
    return m


@pytest.mark.parametrize("text", FAMILIES)
def test_projector_matches_exact_oracle(text):
    gen = parse_generator_spec(text)
    top = 14 if text == "dblexp" else 1000
    for n in range(top + 1):
        assert gen.projector(n) == ceil_oracle(text, n), n


@pytest.mark.parametrize("text,n,expected", [
    ("power:2", 3, 9),
    ("identity", 17, 17),
    ("dblexp", 3, 256),
])
def test_projector_examples(text, n, expected):
    assert parse_generator_spec(text).projector(n) == expected


@pytest.mark.parametrize("text,y,expected", [
    ("power:2", 8, 2),
    ("linear:10", 50, 5),
    ("power:2", 221, 14),
])
def test_coprojector_examples(text, y, expected):
    gen = parse_generator_spec(text)
    assert gen.coprojector(y) == expected
    assert brute_coprojector(gen.projector, y) == expected


@pytest.mark.parametrize("text", [t for t in FAMILIES if t != "dblexp"])
def test_coprojector_matches_linear_scan(text):
    gen = parse_generator_spec(text)
    lo = gen.projector(0)
    top = 40 if text == "power:1/2" else 600
    for y in range(lo, lo + top):
        assert gen.coprojector(y) == brute_coprojector(gen.projector, y), y


@pytest.mark.parametrize("text", FAMILIES)
def test_shortcut_coprojector_agrees_with_galloping_search(text):
    gen = parse_generator_spec(text)
    lo = int(gen.projector(0))
    for y in list(range(lo, lo + 300)) + [10**12 + 7, 2**300 + 1]:
        assert gen.coprojector(y) == gen.search_coprojector(y)


def test_dblexp_coprojector_on_huge_arguments():
    gen = parse_generator_spec("dblexp")
    for n in (20, 80, 150, 1000):
        y = gen.projector(n)
        assert gen.coprojector(y) == n
        assert gen.coprojector(y + y) == n
        assert gen.search_coprojector(y + 1) == n


@pytest.mark.parametrize("text", ["power:2", "exp:2", "dblexp"])
def test_below_range(text):
    gen = parse_generator_spec(text)
    start = int(gen.projector(0))
    if start == 0:
        pytest.skip("projector(0) = 0, nothing is below range")
    with pytest.raises(BelowRangeError):
        gen.coprojector(start - 1)


def test_negative_arguments_rejected():
    for text in FAMILIES:
        with pytest.raises(DomainError):
            parse_generator_spec(text).projector(-1)


@pytest.mark.parametrize("text", FAMILIES)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_galois_bounds(text, data):
    gen = parse_generator_spec(text)
    P, C = gen.projector, gen.coprojector
    n = data.draw(st.integers(0, 60 if text != "dblexp" else 40))
    assert C(P(n)) >= n
    y = data.draw(st.integers(int(P(0)), 10**9))
    m = C(y)
    assert P(m) <= y < P(m + 1)


@pytest.mark.parametrize("text", FAMILIES)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_monotonicity(text, data):
    gen = parse_generator_spec(text)
    n1, n2 = sorted(data.draw(st.lists(st.integers(0, 50), min_size=2, max_size=2)))
    assert gen.projector(n1) <= gen.projector(n2)
    lo = int(gen.projector(0))
    y1, y2 = sorted(data.draw(st.lists(st.integers(lo, 10**8), min_size=2, max_size=2)))
    assert gen.coprojector(y1) <= gen.coprojector(y2)


@pytest.mark.parametrize("text", ["identity", "linear:10", "power:2", "power:3", "exp:2"])
def test_round_trip_when_strict(text):
    gen = parse_generator_spec(text)
    assert validate(gen, 300).strict_ok
    for n in range(301):
        assert gen.coprojector(gen.projector(n)) == n


# --- validation -----------------------------------------------------------

def brute_validation(proj, bound):
    f = [proj(i) for i in range(bound + 1)]
    zero = f[0] == 0
    strict = all(f[a] < f[a + 1] for a in range(bound))
    convex = all(f[a + 1] - f[a] <= f[b + 1] - f[b]
                 for a in range(bound) for b in range(a, bound))
    return zero, strict, convex


@pytest.mark.parametrize("text", FAMILIES)
def test_validation_matches_quadratic_scan(text):
    gen = parse_generator_spec(text)
    bound = 12 if text == "dblexp" else 40
    report = validate(gen, bound)
    assert (report.zero_ok, report.strict_ok, report.convex_ok) == \
        brute_validation(lambda n: int(gen.projector(n)), bound)
    for ok, w in ((report.zero_ok, report.zero_witness),
                  (report.strict_ok, report.strict_witness),
                  (report.convex_ok, report.convex_witness)):
        assert ok == (w == ())
        assert all(0 <= x <= bound for x in w)


@pytest.mark.parametrize("text", ["power:2", "identity"])
def test_validation_passes(text):
    assert validate(parse_generator_spec(text), 1000).passed


def test_validation_jump_family_fails_convexity_across_jump():
    gen = parse_generator_spec(JUMP)
    report = validate(gen, 1000)
    assert report.zero_ok and report.strict_ok
    assert not report.convex_ok
    a, b = report.convex_witness
    assert a <= 5 <= b + 1
    f = gen.projector
    assert f(a + 1) - f(a) > f(b + 1) - f(b)


def test_validation_witnesses_are_genuine():
    gen = parse_generator_spec("linear:3/2")
    r = validate(gen, 50)
    assert not r.convex_ok
    a, b = r.convex_witness
    f = gen.projector
    assert f(a + 1) - f(a) > f(b + 1) - f(b)
    r = validate(parse_generator_spec("exp:2"), 50)
    assert r.zero_witness == (0,)
    r = validate(parse_generator_spec("power:1/2"), 50)
    a, b = r.strict_witness
    assert parse_generator_spec("power:1/2").projector(a) >= \
        parse_generator_spec("power:1/2").projector(b)


def test_validation_bound_minimum():
    with pytest.raises(ValueError):
        validate(parse_generator_spec("identity"), 1)


def test_validation_clips_to_table(table_file):
    gen = parse_generator_spec(table_file([0, 1, 3, 6, 10]))
    r = validate(gen, 1000)
    assert r.checked_bound == 4 and r.passed


# --- mini-language --------------------------------------------------------

@pytest.mark.parametrize("text", FAMILIES)
def test_render_round_trip(text):
    spec = parse_spec(text)
    assert parse_spec(spec.render()) == spec


def test_rationals_normalise():
    assert parse_spec("linear:4/2") == GeneratorSpec("linear", (Fraction(2),))
    assert parse_spec("power: 5 / 2").render() == "power:5/2"
    assert parse_spec(" piecewise: (0,0) , (1, 3) ").render() == "piecewise:(0,0),(1,3)"


@given(st.integers(1, 10**6), st.integers(1, 10**6),
       st.sampled_from(["linear", "power"]))
def test_rational_spec_round_trip(p, q, fam):
    spec = parse_spec(f"{fam}:{p}/{q}")
    assert parse_spec(spec.render()) == spec
    assert spec.params[0] == Fraction(p, q)


@pytest.mark.parametrize("text,position", [
    ("cubic", 0),
    ("linear", 6),
    ("linear:", 7),
    ("linear:0", 7),
    ("linear:1/0", 9),
    ("identity:3", 8),
    ("exp:1", 4),
    ("piecewise:(1,0),(2,3)", 11),
    ("piecewise:(0,0),(2,3),(1,5)", 23),
    ("piecewise:(0,0),(2,3),(3,2)", 23),
    ("piecewise:(0,0),(2,3),(3,3)", 23),
    ("piecewise:(0,0)", 15),
    ("piecewise:(0,0);(1,1)", 15),
    ("table:", 6),
])
def test_parse_errors_carry_position(text, position):
    with pytest.raises(GeneratorSpecError) as info:
        parse_generator_spec(text)
    assert info.value.position == position


def test_table_generator(table_file):
    gen = parse_generator_spec(table_file([0, 1, 4, 9, 16, 25]))
    assert gen.projector(3) == 9
    assert gen.coprojector(10) == 3
    assert gen.coprojector(24) == 4
    with pytest.raises(TableRangeError):
        gen.projector(6)
    with pytest.raises(TableRangeError):
        gen.coprojector(25)


def test_non_monotone_table_rejected_at_parse(table_file):
    text = table_file([0, 2, 1, 5])
    with pytest.raises(GeneratorSpecError) as info:
        parse_generator_spec(text)
    assert info.value.position == len("table:")


def test_missing_table_file():
    with pytest.raises(GeneratorSpecError):
        parse_generator_spec("table:/nonexistent/values.txt")


def test_generator_spec_families_from_worked_examples():
    assert parse_generator_spec("power:2").projector(7) == 49
    assert parse_generator_spec("linear:10").projector(7) == 70
    assert parse_generator_spec("dblexp").projector(4) == 2 ** 16


@pytest.mark.parametrize("text", FAMILIES)
def test_fused_coprojections_match_composition(text):
    gen = parse_generator_spec(text)
    P, C = gen.projector, gen.coprojector
    top = 5 if text == "dblexp" else 12
    for xs in [(3,), (0, 0), (1, 2, 3), (top, 1, top - 1), (2, 2, 2, 2)]:
        assert gen.coproject_sum(xs) == C(sum(P(x) for x in xs))
        assert gen.coproject_product(xs) == C(math.prod(P(x) for x in xs))
    for f in (gen.coproject_sum, gen.coproject_product):
        with pytest.raises(ValueError):
            f(())
        with pytest.raises(DomainError):
            f((2, -1))
