"""Arithmetic expressions over naturals with ``+``, ``*`` and parentheses.

``*`` binds tighter than ``+``.  A run of the same operator without
parentheses becomes one :class:`Chain`; parenthesised sub-expressions
stay nested.  Chains evaluate as a left fold, because the induced addition
is generally not associative: ``(5 + 5) + 6`` and ``5 + (5 + 6)`` can
differ.  In n-ary mode a chain is evaluated with a single ``sum_n`` /
``prod_n`` instead.

Literals may carry the element suffix ``_u`` or ``_μ``.
"""

import re
from dataclasses import dataclass


class ExpressionError(ValueError):
    """Parse failure; ``offset`` is a byte offset into the UTF-8 source."""

    def __init__(self, message, text, char_pos):
        self.offset = len(text[:char_pos].encode("utf-8"))
        super().__init__(f"{message} at byte {self.offset}")


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Chain:
    op: str
    operands: tuple


_TOKEN = re.compile(r"([0-9]+)(?:_u|_μ)?|(.)")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            ch = m.group(2)
            if ch not in "+*()":
                raise ExpressionError(f"unexpected character {ch!r}", text, m.start(2))
            tokens.append((ch, None, m.start(2)))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message):
        kind, _, pos = self.peek()
        what = "end of input" if kind == "end" else repr(self.text[pos])
        raise ExpressionError(f"{message}, found {what}", self.text, pos)

    def chain(self, op, operand):
        items = [operand()]
        while self.peek()[0] == op:
            self.take()
            items.append(operand())
        return items[0] if len(items) == 1 else Chain(op, tuple(items))

    def expr(self):
        return self.chain("+", self.term)

    def term(self):
        return self.chain("*", self.atom)

    def atom(self):
        kind, value, _ = self.peek()
        if kind == "num":
            self.take()
            return Num(value)
        if kind == "(":
            self.take()
            node = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'")
            self.take()
            return node
        self.fail("expected a number or '('")


def parse_expression(text):
    p = _Parser(text)
    node = p.expr()
    if p.peek()[0] != "end":
        p.fail("unexpected trailing input")
    return node


def render(node):
    """Minimal-parenthesis text that parses back to the same tree."""
    if isinstance(node, Num):
        return str(node.value)
    parts = []
    for child in node.operands:
        s = render(child)
        if isinstance(child, Chain) and (node.op == "*" or child.op == "+"):
            s = f"({s})"
        parts.append(s)
    return f" {node.op} ".join(parts)


def evaluate(node, A, nary=False):
    """Evaluate in arithmetic ``A`` (anything with add/mul/sum_n/prod_n)."""
    if isinstance(node, Num):
        return node.value
    vals = [evaluate(child, A, nary) for child in node.operands]
    if nary:
        return A.sum_n(vals) if node.op == "+" else A.prod_n(vals)
    op = A.add if node.op == "+" else A.mul
    acc = vals[0]
    for v in vals[1:]:
        acc = op(acc, v)
    return acc
