"""Text syntax for elements and tensors.

Grammar (``*`` is mandatory; ``(x)`` separates tensor slots and binds
tighter than ``+``/``-`` but looser than ``*``)::

    tensor_sum := ['-'] tterm (('+' | '-') tterm)*
    tterm      := term ('(x)' term)*
    term       := factor ('*' factor)*
    factor     := NUMBER | 'q' ['^' INT] | GEN ['^' INT] | '(' sum ')'
    NUMBER     := digits ['/' digits]

Inverses are spelled ``xi`` / ``Ki``; ``x^-n`` and ``K^-n`` are accepted as
aliases. Examples::

    >>> from qplane.presentations import A, GAMMA
    >>> str(parse("y*x", A))
    'q^-1*x*y'
    >>> str(parse("y*dx", GAMMA))
    'q^-1*dx*y + (q^-1 - 1)*dy*x'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Element, Presentation, _accumulate
from .scalar import ONE, QScalar
from .tensor import TensorElement

MAX_POWER = 64
MAX_WORD_LEN = 256
MAX_TERMS = 20000
MAX_DEPTH = 48


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z]+)|(?P<op>[-+*^()]))"
)


@dataclass
class Token:
    kind: str  # 'num', 'name', 'op', 'end'
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", n))
    return out


@dataclass
class ExprNode:
    kind: str  # number, q, gen, power, product, sum, neg, tensor
    children: list = field(default_factory=list)
    value: object = None
    span: tuple = (0, 0)


_INVERSES = {"x": "xi", "xi": "x", "K": "Ki", "Ki": "K"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at_op(self, op: str) -> bool:
        t = self.tok
        return t.kind == "op" and t.text == op

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            raise ParseError(f"expected {op!r}, found {self.tok.text or 'end of input'!r}", self.tok.pos)
        return self.advance()

    def at_separator(self) -> bool:
        t = self.toks
        i = self.i
        return (
            i + 2 < len(t)
            and t[i].kind == "op" and t[i].text == "("
            and t[i + 1].kind == "name" and t[i + 1].text == "x"
            and t[i + 2].kind == "op" and t[i + 2].text == ")"
        )

    def parse(self) -> ExprNode:
        node = self.sum(allow_tensor=True)
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def sum(self, allow_tensor: bool) -> ExprNode:
        start = self.tok.pos
        items = []
        negate = False
        if self.at_op("-"):
            self.advance()
            negate = True
        while True:
            node = self.tterm(allow_tensor)
            items.append(ExprNode("neg", [node], span=node.span) if negate else node)
            if self.at_op("+"):
                negate = False
            elif self.at_op("-"):
                negate = True
            else:
                break
            self.advance()
        if len(items) == 1:
            return items[0]
        return ExprNode("sum", items, span=(start, self.tok.pos))

    def tterm(self, allow_tensor: bool) -> ExprNode:
        start = self.tok.pos
        slots = [self.term()]
        while self.at_separator():
            if not allow_tensor:
                raise ParseError("tensor separator only allowed at top level", self.tok.pos)
            self.i += 3
            slots.append(self.term())
        if self.tok.kind == "op" and self.tok.text == "(":
            raise ParseError("missing operator before '('", self.tok.pos)
        if self.tok.kind in ("name", "num"):
            raise ParseError("missing '*' between factors", self.tok.pos)
        if len(slots) == 1:
            return slots[0]
        return ExprNode("tensor", slots, span=(start, self.tok.pos))

    def term(self) -> ExprNode:
        start = self.tok.pos
        factors = [self.factor()]
        while self.at_op("*"):
            self.advance()
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return ExprNode("product", factors, span=(start, self.tok.pos))

    def _int(self) -> int:
        sign = 1
        if self.at_op("-"):
            self.advance()
            sign = -1
        t = self.tok
        if t.kind != "num" or "/" in t.text:
            raise ParseError("expected an integer exponent", t.pos)
        self.advance()
        return sign * int(t.text)

    def factor(self) -> ExprNode:
        t = self.tok
        if t.kind == "num":
            self.advance()
            if self.at_op("^"):
                raise ParseError("powers of numbers are not supported", self.tok.pos)
            try:
                value = Fraction(t.text)
            except ZeroDivisionError:
                raise ParseError("division by zero", t.pos) from None
            return ExprNode("number", value=value, span=(t.pos, t.pos + len(t.text)))
        if t.kind == "name":
            self.advance()
            exp = 1
            if self.at_op("^"):
                self.advance()
                exp = self._int()
            span = (t.pos, self.tok.pos)
            if t.text == "q":
                return ExprNode("q", value=exp, span=span)
            node = ExprNode("gen", value=t.text, span=span)
            if exp == 1:
                return node
            return ExprNode("power", [node], value=exp, span=span)
        if t.kind == "op" and t.text == "(":
            self.advance()
            self.depth += 1
            if self.depth > MAX_DEPTH:
                raise ParseError("parentheses nested too deeply", t.pos)
            inner = self.sum(allow_tensor=False)
            self.expect_op(")")
            self.depth -= 1
            if self.at_op("^"):
                raise ParseError("powers of parenthesized expressions are not supported", self.tok.pos)
            return inner
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def parse_tree(text: str) -> ExprNode:
    if not text or not text.strip():
        raise ParseError("empty input", 0)
    return _Parser(text).parse()


# evaluation


def _mul(a: dict, b: dict, p: Presentation, span) -> dict:
    if len(a) * len(b) > MAX_TERMS:
        raise ParseError("expression too large", span[0])
    out: dict = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            if len(w1) + len(w2) > MAX_WORD_LEN:
                raise ParseError("word too long", span[0])
            for nw, nc in p.normal_form(w1 + w2):
                _accumulate(out, nw, c1 * c2 * nc)
    return out


def _eval(node: ExprNode, p: Presentation) -> dict:
    k = node.kind
    if k == "number":
        return {(): QScalar.const(node.value)} if node.value else {}
    if k == "q":
        return {(): QScalar.q(node.value)}
    if k in ("gen", "power"):
        name = node.value if k == "gen" else node.children[0].value
        exp = 1 if k == "gen" else node.value
        if exp < 0:
            if name not in _INVERSES:
                raise ParseError(f"negative power of non-invertible generator {name!r}", node.span[0])
            name, exp = _INVERSES[name], -exp
        if exp > MAX_POWER:
            raise ParseError(f"exponent larger than {MAX_POWER}", node.span[0])
        if not p.has_symbol(name):
            raise ParseError(f"unknown generator {name!r} for algebra {p.name}", node.span[0])
        return dict(p.normal_form((name,) * exp))
    if k == "product":
        acc = _eval(node.children[0], p)
        for ch in node.children[1:]:
            acc = _mul(acc, _eval(ch, p), p, ch.span)
        return acc
    if k == "neg":
        return {w: -c for w, c in _eval(node.children[0], p).items()}
    if k == "sum":
        acc: dict = {}
        for ch in node.children:
            for w, c in _eval(ch, p).items():
                _accumulate(acc, w, c)
        return acc
    raise ParseError(f"unexpected {k} node", node.span[0])


def _tensor_terms(node: ExprNode) -> list:
    """Split a top-level tree into (sign, [slot nodes]) pairs."""
    if node.kind == "sum":
        out = []
        for ch in node.children:
            out.extend(_tensor_terms(ch))
        return out
    if node.kind == "neg":
        return [(-s, slots) for s, slots in _tensor_terms(node.children[0])]
    if node.kind == "tensor":
        return [(1, node.children)]
    return [(1, [node])]


def parse(text: str, p: Presentation, slots=None):
    """Parse ``text`` into a canonical Element, or a TensorElement if it
    contains ``(x)``. ``slots`` fixes per-slot presentations for tensors
    (default: ``p`` in every slot)."""
    tree = parse_tree(text)
    parts = _tensor_terms(tree)
    arities = {len(s) for _, s in parts}
    if len(arities) != 1:
        raise ParseError("inconsistent tensor arity", tree.span[0])
    arity = arities.pop()
    if arity == 1 and slots is None:
        return Element._wrap(_eval(tree, p), p)
    slots = tuple(slots) if slots is not None else (p,) * arity
    if len(slots) != arity:
        raise ParseError(f"expected a tensor of arity {len(slots)}, got {arity}", 0)
    out: dict = {}
    for sign, nodes in parts:
        factors = [_eval(n, sp) for n, sp in zip(nodes, slots)]
        size = 1
        for f in factors:
            size *= len(f)
        if size > MAX_TERMS:
            raise ParseError("expression too large", nodes[0].span[0])
        combos = [((), ONE if sign > 0 else -ONE)]
        for f in factors:
            combos = [(ws + (w,), c * fc) for ws, c in combos for w, fc in f.items()]
        for ws, c in combos:
            _accumulate(out, ws, c)
    if arity == 1:
        return Element._wrap({ws[0]: c for ws, c in out.items()}, slots[0])
    return TensorElement._wrap(out, slots)


def render(obj) -> str:
    from .render import render as _render

    return _render(obj)


__all__ = ["parse", "parse_tree", "render", "tokenize", "ParseError", "ExprNode"]
