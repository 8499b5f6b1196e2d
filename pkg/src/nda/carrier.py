"""Prearithmetics over explicit carriers and the projector/coprojector
construction that transports operations from one carrier to another.

A carrier is either an explicit finite ordered tuple of naturals or the
whole of Nat.  Nothing else is representable, which keeps every carrier
enumerable for bounded law checks.
"""

import operator
from dataclasses import dataclass, field

from nda.report import LawVerdict
from nda.sparse import SparseNat


class DomainError(ValueError):
    """A map or operation was applied outside its declared carrier."""


def is_nat(x):
    return isinstance(x, (int, SparseNat)) and not isinstance(x, bool) and x >= 0


def check_nat(x, what="value"):
    """Return ``x`` unchanged if it is a natural number, else raise."""
    if not is_nat(x):
        raise DomainError(f"{what} must be a natural number, got {x!r}")
    return x


def parse_nat(text):
    """Parse a decimal natural.  Leading ``+``/``-`` signs are rejected."""
    s = text.strip()
    if not s.isdigit() or not s.isascii():
        raise ValueError(f"not a decimal natural number: {text!r}")
    return int(s)


def format_nat(n):
    return str(n)


@dataclass(frozen=True)
class Carrier:
    """Either an explicit finite ordered element list or all of Nat."""

    elements: tuple = None
    _members: frozenset = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.elements is not None:
            elems = tuple(self.elements)
            for x in elems:
                check_nat(x, "carrier element")
            if len(set(elems)) != len(elems):
                raise ValueError("carrier elements must be distinct")
            object.__setattr__(self, "elements", elems)
            object.__setattr__(self, "_members", frozenset(elems))

    @classmethod
    def of(cls, elements):
        return cls(tuple(elements))

    @property
    def is_finite(self):
        return self.elements is not None

    def __contains__(self, x):
        if self._members is None:
            return is_nat(x)
        try:
            return x in self._members
        except TypeError:
            return False

    def __iter__(self):
        if self.elements is None:
            raise TypeError("cannot enumerate the infinite carrier Nat")
        return iter(self.elements)

    def __len__(self):
        if self.elements is None:
            raise TypeError("the carrier Nat is infinite")
        return len(self.elements)

    def __repr__(self):
        if self.elements is None:
            return "Carrier(Nat)"
        if len(self.elements) > 8:
            return f"Carrier({self.elements[0]}..{self.elements[-1]}, n={len(self.elements)})"
        return f"Carrier({list(self.elements)})"


NAT = Carrier()


class CarrierMap:
    """A total map between carriers; applying it off its source is an error."""

    def __init__(self, source, target, apply, name=None):
        self.source = source
        self.target = target
        self._apply = apply
        self.name = name or getattr(apply, "__name__", "map")

    def __call__(self, x):
        if x not in self.source:
            raise DomainError(f"{self.name}: {x!r} is outside the source carrier {self.source!r}")
        y = self._apply(x)
        if y not in self.target:
            raise DomainError(f"{self.name}: image {y!r} of {x!r} is outside {self.target!r}")
        return y

    def __repr__(self):
        return f"CarrierMap({self.name}: {self.source!r} -> {self.target!r})"


def identity_map(carrier=NAT):
    return CarrierMap(carrier, carrier, lambda x: x, name="identity")


def inclusion(carrier, into=NAT):
    return CarrierMap(carrier, into, lambda x: x, name="inclusion")


class AbstractPrearithmetic:
    """A carrier with total binary addition and multiplication.

    The raw operations are stored as given; :meth:`add` and :meth:`mul`
    check that arguments and results lie in the carrier.
    """

    def __init__(self, carrier, add, mul, name=None):
        self.carrier = carrier
        self._add = add
        self._mul = mul
        self.name = name or "prearithmetic"

    def _apply(self, op, label, a, b):
        c = self.carrier
        if a not in c or b not in c:
            raise DomainError(f"{self.name}.{label}({a!r}, {b!r}): argument outside {c!r}")
        r = op(a, b)
        if r not in c:
            raise DomainError(f"{self.name}.{label}({a!r}, {b!r}) = {r!r} is not closed in {c!r}")
        return r

    def add(self, a, b):
        return self._apply(self._add, "add", a, b)

    def mul(self, a, b):
        return self._apply(self._mul, "mul", a, b)

    def table(self, op="add"):
        """Full operation table over a finite carrier, rows in carrier order."""
        f = self.add if op == "add" else self.mul
        elems = list(self.carrier)
        return [[f(a, b) for b in elems] for a in elems]

    def __repr__(self):
        return f"AbstractPrearithmetic({self.name}, {self.carrier!r})"


DIOPHANTINE = AbstractPrearithmetic(NAT, operator.add, operator.mul, name="Nat")


def induce_prearithmetic(base, g, h, name=None):
    """Transport ``base``'s operations along projector ``g`` and coprojector ``h``.

    The new carrier is ``g.source`` and the operations are
    ``a + b = h(g(a) + g(b))`` and ``a * b = h(g(a) * g(b))`` with the
    right-hand operations taken in ``base``.
    """
    if g.target != base.carrier and base.carrier != NAT:
        raise ValueError(f"projector target {g.target!r} differs from base carrier {base.carrier!r}")
    if h.source != base.carrier:
        raise ValueError(f"coprojector source {h.source!r} differs from base carrier {base.carrier!r}")
    if h.target != g.source:
        raise ValueError("coprojector must map back onto the projector's source carrier")

    def add(a, b):
        return h(base.add(g(a), g(b)))

    def mul(a, b):
        return h(base.mul(g(a), g(b)))

    return AbstractPrearithmetic(g.source, add, mul, name=name or f"induced({base.name})")


def check_reverse_projectivity(base, g, h, sample, label=""):
    """Check both round trips ``g(h(x)) = x`` and ``h(g(y)) = y`` on a sample.

    Each sampled element is tested against every composite whose domain
    contains it: ``g . h`` on the base carrier, ``h . g`` on the induced one.
    The witness is the first sampled element violating either identity.
    """
    sample = list(sample)
    for x in sample:
        if x in h.source and g(h(x)) != x:
            return LawVerdict("reverse_projectivity", label, max(sample), False, (x,),
                              notes=f"g(h({x})) = {g(h(x))} != {x}")
        if x in g.source and h(g(x)) != x:
            return LawVerdict("reverse_projectivity", label, max(sample), False, (x,),
                              notes=f"h(g({x})) = {h(g(x))} != {x}")
    return LawVerdict("reverse_projectivity", label, max(sample, default=0), True,
                      notes=f"{len(sample)} sampled elements")


def residue_prearithmetic(m):
    """Residues modulo ``m`` on representatives ``1..m``.

    Multiples of ``m`` are represented by ``m`` itself so the coprojector is
    total on Nat.
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f"modulus must be a natural number >= 1, got {m!r}")
    reps = Carrier(tuple(range(1, m + 1)))
    g = inclusion(reps)
    h = CarrierMap(NAT, reps, lambda n: (n - 1) % m + 1, name=f"mod{m}")
    return induce_prearithmetic(DIOPHANTINE, g, h, name=f"Z/{m}")
