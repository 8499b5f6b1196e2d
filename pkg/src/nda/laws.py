"""Bounded exhaustive checks of the algebraic laws of projective arithmetics.

Every check scans a finite box ``[0, bound]^k`` in lexicographic order and
stops at the first violation, so the witness of a failing verdict is the
lexicographically smallest one and is reproducible with :func:`recheck`.

Law identifiers (``run_law`` accepts all of them)::

    zero_neutral                  0 (+) a = a
    zero_absorbing                0 (*) a = 0
    associativity[:add|:mul]      (a (+) b) (+) c = a (+) (b (+) c), same for (*);
                                  without a suffix both operations must pass
    nary_vs_fold:<n>              sum_n(x1..xn) = ((x1 (+) x2) (+) ...) (+) xn
    much_less_order               << transitive, never two-way between distinct elements
    successor_much_less           P(a+1) + P(a) < P(a+2)  implies  a << a+1
    compatibility:<P>:<Q>:<side>  P composed with Q stays inside P
    unit_group_propagation:<n>    (1,..,1 <<_k a and a <= b  =>  1,..,1 <<_k b)
                                  agrees with non-decreasing successor differences
"""

import functools
import itertools
from dataclasses import dataclass
from enum import Enum

from nda.arithmetic import ProjectiveArithmetic
from nda.generator import validate
from nda.report import LawVerdict


class Relation(str, Enum):
    LE = "le"
    LT = "lt"
    ML = "ml"
    MML = "mml"


_RELATION_ALIASES = {
    "le": Relation.LE, "<=": Relation.LE, "≤": Relation.LE,
    "lt": Relation.LT, "<": Relation.LT,
    "ml": Relation.ML, "<<": Relation.ML, "≪": Relation.ML, "much_less": Relation.ML,
    "mml": Relation.MML, "<<<": Relation.MML, "≪≪": Relation.MML, "⋘": Relation.MML,
    "much_much_less": Relation.MML,
}

SIDES = ("left", "right", "both")


def parse_relation(text):
    try:
        return _RELATION_ALIASES[text.strip()]
    except KeyError:
        raise ValueError(f"unknown relation {text!r}") from None


@dataclass(frozen=True)
class RelationSpec:
    tag: Relation
    side: str = "both"

    def __post_init__(self):
        object.__setattr__(self, "tag", parse_relation(self.tag)
                           if not isinstance(self.tag, Relation) else self.tag)
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}, got {self.side!r}")


def _label(A):
    return A.gen.spec.render()


def relation_test(A, tag):
    """Binary predicate for a relation tag inside arithmetic ``A``."""
    tag = parse_relation(tag) if not isinstance(tag, Relation) else tag
    if tag is Relation.LE:
        return lambda a, b: a <= b
    if tag is Relation.LT:
        return lambda a, b: a < b
    if tag is Relation.ML:
        return A.much_less
    return A.much_much_less


def _cached(op):
    return functools.lru_cache(maxsize=None)(op)


def check_zero_neutral(A, bound):
    """``0 (+) a = a`` on ``[0, bound]``, cross-checked against strict increase.

    With ``P(0) = 0`` the law at ``a`` is equivalent to ``P(a) < P(a+1)``, so
    the law on ``[0, bound]`` must agree with strict increase on
    ``[0, bound + 1]``.  Any disagreement is written into the notes.
    """
    add = A.add
    witness = next(((a,) for a in range(bound + 1) if add(0, a) != a), ())
    notes = []
    if A.gen.projector(0) != 0:
        notes.append("precondition P(0) = 0 unmet; no cross-check against strictness")
    else:
        strict = validate(A.gen, max(bound + 1, 2))
        if strict.checked_bound < bound + 1:
            notes.append(f"strictness only checkable up to {strict.checked_bound}")
        if strict.strict_ok == (not witness):
            notes.append(f"agrees with strict increase on [0, {strict.checked_bound}]")
        else:
            notes.append(f"DISAGREEMENT with strict increase on [0, {strict.checked_bound}] "
                         f"(strict={strict.strict_ok}, witness={strict.strict_witness})")
    if witness:
        a = witness[0]
        notes.insert(0, f"0 (+) {a} = {add(0, a)}")
    return LawVerdict("zero_neutral", _label(A), bound, not witness, witness, "; ".join(notes))


def check_zero_absorbing(A, bound):
    """``0 (*) a = 0`` on ``[0, bound]``.

    The notes also record where the variant ``0 (*) a = a`` first breaks,
    since with ``P(0) = 0`` that variant can only hold at ``a = 0``.
    """
    mul = A.mul
    witness = next(((a,) for a in range(bound + 1) if mul(0, a) != 0), ())
    notes = []
    if A.gen.projector(0) != 0:
        notes.append("precondition P(0) = 0 unmet")
    if witness:
        notes.append(f"0 (*) {witness[0]} = {mul(0, witness[0])}")
    first_non_identity = next((a for a in range(bound + 1) if mul(0, a) != a), None)
    if first_non_identity is None:
        notes.append(f"0 (*) a = a holds on [0, {bound}]")
    else:
        notes.append(f"0 (*) a = a fails first at a = {first_non_identity}")
    return LawVerdict("zero_absorbing", _label(A), bound, not witness, witness, "; ".join(notes))


def _assoc_witness(op, bound):
    f = _cached(op)
    R = range(bound + 1)
    for a in R:
        for b in R:
            ab = f(a, b)
            for c in R:
                if f(ab, c) != f(a, f(b, c)):
                    return (a, b, c)
    return None


def check_associativity(A, bound, op="both"):
    """Associativity on ``[0, bound]^3`` of ``add``, ``mul`` or both.

    With ``op="both"`` the law holds only if both operations are associative
    and the witness is the smaller of the two.
    """
    if op not in ("add", "mul", "both"):
        raise ValueError("op must be 'add', 'mul' or 'both'")
    ops = [(name, f) for name, f in (("add", A.add), ("mul", A.mul)) if op in (name, "both")]
    notes, found = [], []
    for name, f in ops:
        w = _assoc_witness(f, bound)
        if w is None:
            notes.append(f"{name} associative")
        else:
            a, b, c = w
            notes.append(f"{name} fails at {w}: {f(f(a, b), c)} vs {f(a, f(b, c))}")
            found.append(w)
    law_id = "associativity" if op == "both" else f"associativity:{op}"
    witness = min(found) if found else ()
    return LawVerdict(law_id, _label(A), bound, not found, witness, "; ".join(notes))


def check_nary_vs_fold(A, n, bound):
    """``sum_n`` of every ``n``-tuple over ``[0, bound]`` against the left fold."""
    if n < 1:
        raise ValueError("n must be at least 1")
    add = _cached(A.add)
    sum_n = A.sum_n
    for xs in itertools.product(range(bound + 1), repeat=n):
        acc = xs[0]
        for x in xs[1:]:
            acc = add(acc, x)
        s = sum_n(xs)
        if s != acc:
            return LawVerdict(f"nary_vs_fold:{n}", _label(A), bound, False, xs,
                              f"sum_n = {s}, fold = {acc}")
    return LawVerdict(f"nary_vs_fold:{n}", _label(A), bound, True,
                      notes=f"all {(bound + 1) ** n} tuples agree")


def _relation_sets(test, lo, bound):
    R = range(lo, bound + 1)
    return {a: {b for b in R if test(a, b)} for a in R}


def _first_intransitive(rel, lo, bound):
    for a in range(lo, bound + 1):
        ra = rel[a]
        for b in sorted(ra):
            missing = rel[b] - ra
            if missing:
                return (a, b, min(missing))
    return None


def check_much_less_order(A, bound):
    """``<<`` on ``[0, bound]``: transitive and at most one direction between
    distinct elements.  Totality is reported in the notes, not required."""
    rel = _relation_sets(A.much_less, 0, bound)
    notes = []
    if not A.is_arithmetic:
        notes.append("generator fails validation: checked as a prearithmetic")
    trans = _first_intransitive(rel, 0, bound)
    asym = next(((a, b) for a in range(bound + 1) for b in sorted(rel[a])
                 if a != b and a in rel[b]), None)
    if trans:
        notes.append(f"not transitive at {trans}")
    if asym:
        notes.append(f"two-way at {asym}")
    incomparable = next(((a, b) for a in range(bound + 1) for b in range(a + 1, bound + 1)
                         if b not in rel[a] and a not in rel[b]), None)
    notes.append("total on distinct pairs" if incomparable is None
                 else f"not total: {incomparable} unrelated")
    pairs = sum(len(s) for s in rel.values())
    notes.append(f"{pairs} related pairs")
    witness = trans or asym or ()
    return LawVerdict("much_less_order", _label(A), bound, not witness, witness, "; ".join(notes))


def check_successor_much_less(A, bound):
    """For each ``a <= bound``: ``P(a+1) + P(a) < P(a+2)`` implies ``a << a+1``."""
    p = A.gen.projector
    premises = 0
    for a in range(bound + 1):
        if p(a + 1) + p(a) < p(a + 2):
            premises += 1
            if not A.much_less(a, a + 1):
                return LawVerdict("successor_much_less", _label(A), bound, False, (a,),
                                  f"premise holds at {a} but {a + 1} (+) {a} = {A.add(a + 1, a)}")
    return LawVerdict("successor_much_less", _label(A), bound, True,
                      notes=f"premise true at {premises} of {bound + 1} points")


def _compat_witness(P, Q, side, lo, bound):
    if side == "right":
        # a P b and b Q c  =>  a P c
        return _first_violation(P, Q, P, lo, bound)
    # a Q b and b P c  =>  a P c
    return _first_violation(Q, P, P, lo, bound)


def _first_violation(first, second, goal, lo, bound):
    for a in range(lo, bound + 1):
        for b in sorted(first[a]):
            missing = second[b] - goal[a]
            if missing:
                return (a, b, min(missing))
    return None


def check_compatibility(A, P, Q, bound, side=None, include_zero=None):
    """Whether relation ``P`` is compatible with ``Q`` on a cube.

    Right: ``a P b and b Q c => a P c``.  Left: ``a Q b and b P c => a P c``.
    ``side`` defaults to ``P.side``.  When either relation is ``<<<`` the cube
    starts at 1 unless ``include_zero`` says otherwise: 0 absorbs under
    multiplication, so every ``a <<< 0`` holds and ``0 <<< c`` fails for all
    ``c >= 1``, which breaks both schemata for reasons unrelated to the order.
    """
    P = P if isinstance(P, RelationSpec) else RelationSpec(P)
    Q = Q if isinstance(Q, RelationSpec) else RelationSpec(Q)
    side = side or P.side
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}")
    if include_zero is None:
        include_zero = Relation.MML not in (P.tag, Q.tag)
    lo = 0 if include_zero else 1
    ps = _relation_sets(relation_test(A, P.tag), lo, bound)
    qs = _relation_sets(relation_test(A, Q.tag), lo, bound)
    sides = ("right", "left") if side == "both" else (side,)
    law_id = f"compatibility:{P.tag.value}:{Q.tag.value}:{side}"
    notes = [f"cube [{lo}, {bound}]^3"]
    found = []
    for s in sides:
        w = _compat_witness(ps, qs, s, lo, bound)
        if w is None:
            notes.append(f"{s} compatible")
        else:
            notes.append(f"{s} fails at {w}")
            found.append(w)
    witness = min(found) if found else ()
    return LawVerdict(law_id, _label(A), bound, not found, witness, "; ".join(notes))


def _unit_group_witness(A, k, bound):
    ones = [1] * (k - 1)
    related = [A.sum_n(ones + [x]) == x for x in range(bound + 1)]
    for a in range(bound + 1):
        if related[a]:
            for b in range(a + 1, bound + 1):
                if not related[b]:
                    return (k, a, b)
            return None
    return None


def check_unit_group_propagation(A, n, bound):
    """Compare two statements on ``[0, bound]`` and report whether they agree.

    (i) for every group size ``k`` in ``2..n`` and ``a <= b``: if ``k-1``
    ones are negligible against ``a`` under ``sum_n`` then also against ``b``;
    (ii) successor differences ``P(a+1) - P(a)`` never decrease.
    Applies when ``P(1) = 1`` and ``P`` is strictly increasing; otherwise the
    verdict holds vacuously and the evaluation is only reported in the notes.
    Only group sizes up to ``n`` are tried, so (ii) failing while (i) holds
    may mean the decisive group is larger than ``n``.
    """
    if n < 2:
        raise ValueError("group size n must be at least 2")
    p = A.gen.projector
    v = validate(A.gen, bound + 1)
    prop_w = None
    for k in range(2, n + 1):
        prop_w = _unit_group_witness(A, k, bound)
        if prop_w:
            break
    convex_w = None
    for a in range(bound):
        if not p(a + 1) + p(a + 1) <= p(a + 2) + p(a):
            convex_w = (a, a + 1)
            break
    law_id = f"unit_group_propagation:{n}"
    summary = (f"propagation {'fails at (k, a, b) = ' + str(prop_w) if prop_w else 'holds'}; "
               f"differences {'decrease at ' + str(convex_w) if convex_w else 'non-decreasing'}")
    if p(1) != 1 or not v.strict_ok:
        return LawVerdict(law_id, _label(A), bound, True,
                          notes=f"not applicable (needs P(1) = 1 and strict increase); {summary}")
    agree = (prop_w is None) == (convex_w is None)
    witness = () if agree else (prop_w or convex_w)
    notes = ("agree: " if agree else "DISAGREE: ") + summary
    return LawVerdict(law_id, _label(A), bound, agree, witness, notes)


def default_suite(n=3):
    return [
        "zero_neutral",
        "zero_absorbing",
        "associativity",
        f"nary_vs_fold:{n}",
        "much_less_order",
        "successor_much_less",
        "compatibility:ml:le:both",
        "compatibility:mml:le:left",
        f"unit_group_propagation:{n}",
    ]


LAW_NAMES = ("zero_neutral", "zero_absorbing", "associativity", "nary_vs_fold",
             "much_less_order", "successor_much_less", "compatibility",
             "unit_group_propagation")


def run_law(A, law_id, bound):
    """Dispatch a law identifier (see module docstring) to its check."""
    name, *args = law_id.split(":")
    if name == "zero_neutral":
        return check_zero_neutral(A, bound)
    if name == "zero_absorbing":
        return check_zero_absorbing(A, bound)
    if name == "associativity":
        return check_associativity(A, bound, args[0] if args else "both")
    if name == "much_less_order":
        return check_much_less_order(A, bound)
    if name == "successor_much_less":
        return check_successor_much_less(A, bound)
    if name == "nary_vs_fold":
        return check_nary_vs_fold(A, int(args[0]) if args else 3, bound)
    if name == "unit_group_propagation":
        return check_unit_group_propagation(A, int(args[0]) if args else 3, bound)
    if name == "compatibility":
        if len(args) not in (2, 3):
            raise ValueError("compatibility needs compatibility:<P>:<Q>[:<side>]")
        side = args[2] if len(args) == 3 else "both"
        return check_compatibility(A, RelationSpec(args[0], side), RelationSpec(args[1]),
                                   bound)
    raise ValueError(f"unknown law {law_id!r}; known: {', '.join(LAW_NAMES)}")


def recheck(A, verdict):
    """True iff the verdict's witness, plugged back in, violates the law again."""
    if verdict.holds:
        return False
    w = verdict.witness
    name, *args = verdict.law_id.split(":")
    if name == "zero_neutral":
        return A.add(0, w[0]) != w[0]
    if name == "zero_absorbing":
        return A.mul(0, w[0]) != 0
    if name == "associativity":
        a, b, c = w
        which = args[0] if args else "both"
        ops = [f for name, f in (("add", A.add), ("mul", A.mul)) if which in (name, "both")]
        return any(op(op(a, b), c) != op(a, op(b, c)) for op in ops)
    if name == "nary_vs_fold":
        return A.sum_n(list(w)) != A.fold_add(w)
    if name == "much_less_order":
        ml = A.much_less
        if len(w) == 3:
            a, b, c = w
            return ml(a, b) and ml(b, c) and not ml(a, c)
        a, b = w
        return a != b and ml(a, b) and ml(b, a)
    if name == "successor_much_less":
        a = w[0]
        p = A.gen.projector
        return p(a + 1) + p(a) < p(a + 2) and not A.much_less(a, a + 1)
    if name == "compatibility":
        P, Q = relation_test(A, args[0]), relation_test(A, args[1])
        side = args[2] if len(args) == 3 else "both"
        a, b, c = w
        right = P(a, b) and Q(b, c) and not P(a, c)
        left = Q(a, b) and P(b, c) and not P(a, c)
        return {"right": right, "left": left, "both": right or left}[side]
    if name == "unit_group_propagation":
        p = A.gen.projector
        if len(w) == 3:
            k, a, b = w
            ones = [1] * (k - 1)
            return A.sum_n(ones + [a]) == a and A.sum_n(ones + [b]) != b
        a, b = w
        return not p(a + 1) + p(b) <= p(b + 1) + p(a)
    raise ValueError(f"unknown law {verdict.law_id!r}")


def search_counterexample(law_id, family, param_range, bound):
    """Run a law across a parametrised generator family; return failing verdicts.

    ``family`` is generator text with a ``{}`` placeholder, e.g.
    ``"power:{}"`` or ``"piecewise:(0,0),(1,2),(2,{})"``.
    """
    failures = []
    for param in param_range:
        A = ProjectiveArithmetic(family.format(param), bound=max(bound, 2))
        verdict = run_law(A, law_id, bound)
        if not verdict.holds:
            failures.append(verdict)
    return failures


@dataclass(frozen=True)
class MachineInfinityReport:
    """Every ``M <= bound`` with ``M (+) 1 = M``."""

    gen: str
    bound: int
    members: tuple
    cancellation_witness: tuple = ()

    def ranges(self):
        out = []
        for m in self.members:
            if out and out[-1][1] == m - 1:
                out[-1][1] = m
            else:
                out.append([m, m])
        return [tuple(r) for r in out]

    @property
    def all_positive(self):
        return self.members == tuple(range(1, self.bound + 1))

    def to_dict(self):
        return {"gen": self.gen, "bound": self.bound, "members": list(self.members),
                "cancellation_witness": list(self.cancellation_witness)}

    @classmethod
    def from_dict(cls, d):
        return cls(d["gen"], int(d["bound"]), tuple(d["members"]),
                   tuple(d.get("cancellation_witness", ())))


def machine_infinity_demo(A, bound):
    """Collect the ``M`` that absorb one.

    ``cancellation_witness`` is ``(M,)`` for the first member with
    ``M (+) 1 = M (+) 0``: addition does not cancel there, so ``M + 1 = M``
    never forces ``1 = 0``.
    """
    add = A.add
    members = tuple(m for m in range(bound + 1) if add(m, 1) == m)
    cancel = next(((m,) for m in members if add(m, 0) == m), ())
    return MachineInfinityReport(_label(A), bound, members, cancel)


@dataclass(frozen=True)
class RelationListing:
    gen: str
    relation: str
    bound: int
    pairs: tuple
    chains: tuple

    def to_dict(self):
        return {"gen": self.gen, "relation": self.relation, "bound": self.bound,
                "pairs": [list(p) for p in self.pairs],
                "chains": [list(c) for c in self.chains]}

    @classmethod
    def from_dict(cls, d):
        return cls(d["gen"], d["relation"], int(d["bound"]),
                   tuple(tuple(p) for p in d["pairs"]),
                   tuple(tuple(c) for c in d["chains"]))


def list_relation(A, relation, bound):
    """All related pairs on ``[0, bound]`` plus maximal successor chains
    ``n R n+1 R n+2 ...`` of length at least two."""
    tag = parse_relation(relation)
    test = relation_test(A, tag)
    R = range(bound + 1)
    pairs = tuple((a, b) for a in R for b in R if test(a, b))
    links = {a for a in range(bound) if test(a, a + 1)}
    chains = []
    a = 0
    while a < bound:
        if a in links:
            start = a
            while a in links:
                a += 1
            chains.append(tuple(range(start, a + 1)))
        else:
            a += 1
    return RelationListing(_label(A), tag.value, bound, pairs, tuple(chains))
