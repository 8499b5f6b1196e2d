"""Generator functions, their exact projector ``ceil(f(n))`` and coprojector
``max{m : ceil(f(m)) <= y}``, the textual generator mini-language, and the
bounded validation that decides whether a generator yields an arithmetic.

Mini-language::

    identity
    linear:<k>          f(x) = k*x
    power:<k>           f(x) = x**k
    exp:<b>             f(x) = b**x           (b > 1)
    dblexp              ceil f(n) = 2**(2**n)
    piecewise:(x0,y0),(x1,y1),...
                        linear interpolation through integer breakpoints,
                        x0 = 0, extended past the last point with the last slope
    table:<path>        one decimal natural per line, line i holds ceil f(i)

``k`` and ``b`` are positive integers or exact rationals ``p/q``.
"""

import bisect
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from nda.carrier import NAT, CarrierMap, DomainError, parse_nat
from nda.sparse import SparseNat

DEFAULT_BOUND = 1000

LINEAR, POLYNOMIAL, EXPONENTIAL, TABULATED = "linear", "polynomial", "exponential", "tabulated"


class GeneratorSpecError(ValueError):
    """Malformed generator text; ``position`` is the 0-based offending offset."""

    def __init__(self, message, position=0, text=None):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at position {position})")


class BelowRangeError(ValueError):
    """Coprojector asked for ``y`` below ``ceil f(0)``: no ``m`` qualifies."""


class TableRangeError(DomainError):
    """A tabulated generator was evaluated past the end of its table."""


def last_true(pred):
    """Largest ``m >= 0`` with ``pred(m)`` for a predicate true exactly on a prefix.

    ``pred(0)`` must hold and ``pred`` must eventually fail.  Gallops by
    doubling, then bisects the final bracket: O(log m) evaluations.
    """
    lo, hi = 0, 1
    while pred(hi):
        lo, hi = hi, hi << 1
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def search_inverse(projector, y):
    """``max{m : projector(m) <= y}`` for any non-decreasing unbounded projector."""
    if not projector(0) <= y:
        raise BelowRangeError(f"no m with f_T(m) <= {y}: f_T(0) = {projector(0)}")
    return last_true(lambda m: projector(m) <= y)


def ceil_root(n, k):
    """Smallest ``r`` with ``r**k >= n``."""
    if n == 0:
        return 0
    return last_true(lambda r: r ** k < n) + 1


def _fmt_rational(r):
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


@dataclass(frozen=True)
class GeneratorSpec:
    """Parsed generator text: a family tag and its exact parameters."""

    family: str
    params: tuple = ()

    def render(self):
        fam, p = self.family, self.params
        if fam in ("identity", "dblexp"):
            return fam
        if fam in ("linear", "power", "exp"):
            return f"{fam}:{_fmt_rational(p[0])}"
        if fam == "piecewise":
            return "piecewise:" + ",".join(f"({x},{y})" for x, y in p)
        if fam == "table":
            return f"table:{p[0]}"
        raise ValueError(f"unknown family {fam!r}")

    __str__ = render


class Generator:
    """A validated-on-demand generator with exact integer evaluation.

    ``projector(n)`` returns ``ceil f(n)`` and ``coprojector(y)`` returns
    ``max{m : ceil f(m) <= y}``.  Both are plain callables bound at
    construction so hot loops pay a single call.  ``dblexp`` projections are
    :class:`~nda.sparse.SparseNat` values; every other family yields ``int``.
    ``coproject_sum(xs)`` and ``coproject_product(xs)`` return
    ``C(sum P(x))`` and ``C(prod P(x))`` for a non-empty sequence; families
    with a cheap fused form supply their own.
    """

    __slots__ = ("spec", "projector", "coprojector", "monotone_hint", "table",
                 "coproject_sum", "coproject_product")

    def __init__(self, spec, projector, coprojector, monotone_hint, table=None,
                 coproject_sum=None, coproject_product=None):
        self.spec = spec
        self.projector = projector
        self.coprojector = coprojector
        self.monotone_hint = monotone_hint
        self.table = table
        if coproject_sum is None:
            def coproject_sum(xs):
                if not xs:
                    _empty()
                return coprojector(sum(map(projector, xs)))

        if coproject_product is None:
            def coproject_product(xs):
                if not xs:
                    _empty()
                return coprojector(math.prod(map(projector, xs)))

        self.coproject_sum = coproject_sum
        self.coproject_product = coproject_product

    @classmethod
    def from_spec(cls, spec):
        return _BUILDERS[spec.family](spec)

    def search_coprojector(self, y):
        """Reference inverse by galloping search, independent of family shortcuts."""
        return search_inverse(self.projector, y)

    def projector_map(self):
        return CarrierMap(NAT, NAT, self.projector, name=f"proj[{self.spec}]")

    def coprojector_map(self):
        return CarrierMap(NAT, NAT, self.coprojector, name=f"coproj[{self.spec}]")

    def __repr__(self):
        return f"Generator({self.spec.render()!r})"

    def __eq__(self, other):
        return isinstance(other, Generator) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)


def _negative(n):
    raise DomainError(f"generator argument must be a natural number, got {n!r}")


def _empty():
    raise ValueError("need at least one operand")


def _build_identity(spec):
    def proj(n):
        if n < 0:
            _negative(n)
        return n

    def coproj(y):
        if y < 0:
            raise BelowRangeError(f"no m with f_T(m) <= {y}")
        return y

    def coproject_sum(xs):
        if not xs:
            _empty()
        if min(xs) < 0:
            _negative(min(xs))
        return sum(xs)

    def coproject_product(xs):
        if not xs:
            _empty()
        if min(xs) < 0:
            _negative(min(xs))
        return math.prod(xs)

    return Generator(spec, proj, coproj, LINEAR, coproject_sum=coproject_sum,
                     coproject_product=coproject_product)


def _build_linear(spec):
    k = spec.params[0]
    p, q = k.numerator, k.denominator

    def proj(n):
        if n < 0:
            _negative(n)
        return -(-p * n // q)

    # ceil(p*m/q) <= y  <=>  p*m/q <= y  for integer y
    def coproj(y):
        if y < 0:
            raise BelowRangeError(f"no m with f_T(m) <= {y}")
        return y * q // p

    return Generator(spec, proj, coproj, LINEAR)


def _build_power(spec):
    k = spec.params[0]
    p, q = k.numerator, k.denominator
    if q == 1:
        def proj(n):
            if n < 0:
                _negative(n)
            return n ** p
    else:
        def proj(n):
            if n < 0:
                _negative(n)
            return ceil_root(n ** p, q)

    return Generator(spec, proj, lambda y: search_inverse(proj, y), POLYNOMIAL)


def _build_exp(spec):
    b = spec.params[0]
    p, q = b.numerator, b.denominator

    def proj(n):
        if n < 0:
            _negative(n)
        return -(-(p ** n) // q ** n)

    return Generator(spec, proj, lambda y: search_inverse(proj, y), EXPONENTIAL)


def _build_dblexp(spec):
    def proj(n):
        if n < 0:
            _negative(n)
        return SparseNat.power_of_two(1 << n)

    # 2**(2**m) <= y  <=>  2**m <= floor(log2 y)  <=>  m <= floor(log2 floor(log2 y))
    def coproj(y):
        if y < 2:
            raise BelowRangeError(f"no m with f_T(m) <= {y}: f_T(0) = 2")
        return (y.bit_length() - 1).bit_length() - 1

    return Generator(spec, proj, coproj, EXPONENTIAL)


def _build_piecewise(spec):
    pts = spec.params
    xs = [x for x, _ in pts]
    last = len(pts) - 2

    def proj(n):
        if n < 0:
            _negative(n)
        i = min(bisect.bisect_right(xs, n) - 1, last)
        (x0, y0), (x1, y1) = pts[i], pts[i + 1]
        dx = x1 - x0
        num = y0 * dx + (y1 - y0) * (n - x0)
        return -(-num // dx)

    return Generator(spec, proj, lambda y: search_inverse(proj, y), LINEAR)


def table_generator(values, spec=None):
    """Generator over an explicit list of projector values (index = argument)."""
    values = tuple(values)
    if not values:
        raise ValueError("table must hold at least one value")
    for i in range(len(values) - 1):
        if values[i] > values[i + 1]:
            raise ValueError(f"table is not non-decreasing at index {i}: "
                             f"{values[i]} > {values[i + 1]}")
    n_vals = len(values)
    spec = spec or GeneratorSpec("table", ("<inline>",))

    def proj(n):
        if n < 0:
            _negative(n)
        if n >= n_vals:
            raise TableRangeError(f"{spec}: argument {n} beyond the {n_vals}-entry table")
        return values[n]

    def coproj(y):
        k = bisect.bisect_right(values, y)
        if k == 0:
            raise BelowRangeError(f"no m with f_T(m) <= {y}: f_T(0) = {values[0]}")
        if k == n_vals:
            raise TableRangeError(
                f"{spec}: coprojector of {y} depends on values past the table end")
        return k - 1

    return Generator(spec, proj, coproj, TABULATED, table=values)


def _build_table(spec):
    path = spec.params[0]
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    values = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            values.append(parse_nat(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a natural number: {line.strip()!r}") from None
    return table_generator(values, spec)


_BUILDERS = {
    "identity": _build_identity,
    "linear": _build_linear,
    "power": _build_power,
    "exp": _build_exp,
    "dblexp": _build_dblexp,
    "piecewise": _build_piecewise,
    "table": _build_table,
}

_RATIONAL = re.compile(r"\s*(\d+)(?:\s*/\s*(\d+))?\s*")
_POINT = re.compile(r"\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*")
_FAMILY = re.compile(r"\s*([A-Za-z_]+)\s*")


def _parse_rational(text, pos, full):
    m = _RATIONAL.fullmatch(text, pos)
    if not m:
        raise GeneratorSpecError("expected a positive integer or p/q", pos, full)
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise GeneratorSpecError("zero denominator", m.start(2), full)
    r = Fraction(num, den)
    if r <= 0:
        raise GeneratorSpecError("parameter must be positive", m.start(1), full)
    return r


def _parse_points(text, pos, full):
    pts, starts = [], []
    while True:
        m = _POINT.match(text, pos)
        if not m:
            raise GeneratorSpecError("expected a breakpoint '(x,y)'", pos, full)
        pts.append((int(m.group(1)), int(m.group(2))))
        starts.append(m.start(1))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != ",":
            raise GeneratorSpecError("expected ',' between breakpoints", pos, full)
        pos += 1
    if len(pts) < 2:
        raise GeneratorSpecError("piecewise needs at least two breakpoints", len(text), full)
    if pts[0][0] != 0:
        raise GeneratorSpecError("first breakpoint must be at x = 0", starts[0], full)
    for i in range(1, len(pts)):
        (xa, ya), (xb, yb) = pts[i - 1], pts[i]
        if xb <= xa:
            raise GeneratorSpecError("breakpoint x values must strictly increase", starts[i], full)
        if yb < ya:
            raise GeneratorSpecError("breakpoint y values must not decrease", starts[i], full)
    if pts[-1][1] <= pts[-2][1]:
        raise GeneratorSpecError("last segment must have positive slope", starts[-1], full)
    return tuple(pts)


def parse_spec(text):
    """Parse generator text into a :class:`GeneratorSpec` (no file access)."""
    m = _FAMILY.match(text)
    if not m:
        raise GeneratorSpecError("expected a generator family name", 0, text)
    fam = m.group(1)
    pos = m.end()
    if fam not in _BUILDERS:
        raise GeneratorSpecError(f"unknown generator family {fam!r}", m.start(1), text)
    if fam in ("identity", "dblexp"):
        if text[pos:].strip():
            raise GeneratorSpecError(f"{fam} takes no parameters", pos, text)
        return GeneratorSpec(fam)
    if pos >= len(text) or text[pos] != ":":
        raise GeneratorSpecError(f"{fam} needs ':' and a parameter", pos, text)
    pos += 1
    if fam in ("linear", "power", "exp"):
        r = _parse_rational(text, pos, text)
        if fam == "exp" and r <= 1:
            raise GeneratorSpecError("exp base must exceed 1", pos, text)
        return GeneratorSpec(fam, (r,))
    if fam == "piecewise":
        return GeneratorSpec(fam, _parse_points(text, pos, text))
    path = text[pos:].strip()
    if not path:
        raise GeneratorSpecError("table needs a file path", pos, text)
    return GeneratorSpec("table", (path,))


def parse_generator_spec(text):
    """Parse generator text and build the :class:`Generator` it names.

    Table files are read here; unreadable or non-monotone tables raise
    :class:`GeneratorSpecError` pointing at the path.
    """
    spec = parse_spec(text)
    try:
        return Generator.from_spec(spec)
    except (OSError, ValueError) as exc:
        if spec.family != "table":
            raise
        raise GeneratorSpecError(str(exc), text.index(":") + 1, text) from exc


def as_generator(gen):
    if isinstance(gen, Generator):
        return gen
    if isinstance(gen, GeneratorSpec):
        return Generator.from_spec(gen)
    return parse_generator_spec(gen)


@dataclass(frozen=True)
class ValidationReport:
    """Bounded check of the three arithmetic conditions on ``[0, checked_bound]``.

    * ``zero_ok``: ``ceil f(0) = 0``
    * ``strict_ok``: ``ceil f`` strictly increasing (integer stand-in for
      strict increase of ``f``)
    * ``convex_ok``: successor differences ``ceil f(a+1) - ceil f(a)`` never
      decrease

    A failing condition carries a witness inside the checked range.
    """

    checked_bound: int
    zero_ok: bool
    strict_ok: bool
    convex_ok: bool
    zero_witness: tuple = ()
    strict_witness: tuple = ()
    convex_witness: tuple = ()

    @property
    def passed(self):
        return self.zero_ok and self.strict_ok and self.convex_ok

    def failures(self):
        out = []
        if not self.zero_ok:
            out.append(("zero", self.zero_witness))
        if not self.strict_ok:
            out.append(("strict", self.strict_witness))
        if not self.convex_ok:
            out.append(("convex", self.convex_witness))
        return out


def validate(gen, bound=DEFAULT_BOUND):
    """Scan ``[0, bound]`` for the three arithmetic conditions.

    Tabulated generators are only checked as far as their table reaches.
    Failures are reported, never raised.
    """
    gen = as_generator(gen)
    if bound < 2:
        raise ValueError("validation bound must be at least 2")
    if gen.table is not None:
        bound = min(bound, len(gen.table) - 1)
    f = [gen.projector(i) for i in range(bound + 1)]

    zero_ok = f[0] == 0
    strict_witness = ()
    for a in range(bound):
        if not f[a] < f[a + 1]:
            strict_witness = (a, a + 1)
            break
    # adjacent differences suffice: d(a) <= d(a+1) for all a gives d(a) <= d(b) for a <= b
    convex_witness = ()
    for a in range(bound - 1):
        if not f[a + 1] + f[a + 1] <= f[a + 2] + f[a]:
            convex_witness = (a, a + 1)
            break
    return ValidationReport(
        checked_bound=bound,
        zero_ok=zero_ok,
        strict_ok=not strict_witness,
        convex_ok=not convex_witness,
        zero_witness=() if zero_ok else (0,),
        strict_witness=strict_witness,
        convex_witness=convex_witness,
    )
