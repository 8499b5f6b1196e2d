"""Projective (pre)arithmetics on Nat driven by a generator.

Elements are plain naturals.  With projector ``P = ceil f`` and coprojector
``C = max{m : P(m) <= y}``::

    a (+) b   = C(P(a) + P(b))
    a (*) b   = C(P(a) * P(b))
    sum_n(xs) = C(sum of P(x))       one coprojection, not a fold
    prod_n(xs)= C(product of P(x))

and the four "much less" relations compare ``b`` with its own sum or
product against smaller terms.
"""

import re

from nda.carrier import check_nat
from nda.generator import DEFAULT_BOUND, as_generator, validate


class ProjectiveArithmetic:
    """Operations and order relations induced by one generator.

    Validation runs at construction over ``[0, bound]``; ``is_arithmetic``
    records whether all three conditions passed there.  Operations work
    either way, so failing generators still give a usable prearithmetic.
    """

    def __init__(self, gen, bound=DEFAULT_BOUND):
        self.gen = as_generator(gen)
        self.validation = validate(self.gen, bound)
        proj, coproj = self.gen.projector, self.gen.coprojector

        # Plain closures and direct bindings: exhaustive law scans call these
        # millions of times, and attribute lookups would dominate.
        def add(a, b):
            return coproj(proj(a) + proj(b))

        def mul(a, b):
            return coproj(proj(a) * proj(b))

        self.add, self.mul = add, mul
        # one coprojection of the combined projections, not a fold
        self.sum_n = self.gen.coproject_sum
        self.prod_n = self.gen.coproject_product

    @property
    def is_arithmetic(self):
        return self.validation.passed

    @property
    def spec(self):
        return self.gen.spec

    def __repr__(self):
        kind = "arithmetic" if self.is_arithmetic else "prearithmetic"
        return f"ProjectiveArithmetic({self.gen.spec.render()!r}, {kind})"

    def fold_add(self, xs):
        """Left fold of the binary addition, for comparison with :meth:`sum_n`."""
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = self.add(acc, x)
        return acc

    def fold_mul(self, xs):
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = self.mul(acc, x)
        return acc

    def much_less(self, a, b):
        """``a << b``: adding ``a`` to ``b`` leaves ``b`` unchanged."""
        return self.add(b, a) == b

    def much_less_group(self, xs, b):
        """The group ``xs`` is negligible against ``b`` under n-ary sum."""
        xs = list(xs)
        if not xs:
            raise ValueError("the group must be non-empty")
        return self.sum_n(xs + [b]) == b

    def much_much_less(self, a, b):
        """``a <<< b``: multiplying ``b`` by ``a`` leaves ``b`` unchanged."""
        return self.mul(b, a) == b

    def much_much_less_group(self, xs, b):
        xs = list(xs)
        if not xs:
            raise ValueError("the group must be non-empty")
        return self.prod_n(xs + [b]) == b

    @staticmethod
    def successor(a):
        check_nat(a)
        return a + 1


MU_ASCII = "_u"
MU_UNICODE = "_μ"

_ELEMENT = re.compile(r"\s*([0-9]+)\s*(?:_u|_μ|μ)?\s*")


def format_element(n, unicode=False):
    """Render ``2`` as ``2_u`` (or ``2_μ``)."""
    return f"{n}{MU_UNICODE if unicode else MU_ASCII}"


def parse_element(text):
    m = _ELEMENT.fullmatch(text)
    if not m:
        raise ValueError(f"not an arithmetic element: {text!r}")
    return int(m.group(1))
