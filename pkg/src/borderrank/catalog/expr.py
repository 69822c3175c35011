"""Parser for transcribed factor expressions.

Catalog entries store each factor of each curve as the text of the
published formula, e.g. ``"-(x^1_2 - t x^2_2)"`` or
``"t^2 21/16 z^1_1 + 1/8 z^1_2"``.  Grammar::

    expr    := ['+'|'-'] product (('+'|'-') product)*
    product := atom+                      (juxtaposition or '*')
    atom    := number | 't' ['^' int] | label | '(' expr ')'

A product containing a token that is not a basis label of the space (for
instance ``b^2_1`` or a bare ``x^3``) cannot be read; the whole monomial is
dropped and reported in ``unread`` so it can be restored by an errata edit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..arith import LaurentPoly
from ..tensor import SpaceError, TensorSpace

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:/\d+)?)"
    r"|(?P<t>t(?:\^\{?(?P<texp>-?\d+)\}?)?)(?=[a-z]\^|[^\w^]|$)"
    r"|(?P<label>[a-zA-Z]\^\{?\d+\}?(?:_\{?\d+\}?)?)"
    r"|(?P<op>[-+*()])"
    r")"
)


class ExprError(ValueError):
    pass


@dataclass
class _Value:
    """Either a pure scalar (Laurent poly in t) or a vector of them."""

    scalar: LaurentPoly | None = None
    vec: dict | None = None
    unread: bool = False

    @classmethod
    def of_scalar(cls, p: LaurentPoly) -> "_Value":
        return cls(scalar=p)


@dataclass
class ParsedFactor:
    vector: dict  # index -> LaurentPoly
    unread: list = field(default_factory=list)


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    toks = []
    text = text.replace("\\frac", "")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprError(f"cannot tokenize {text[pos:]!r} in {text!r}")
        pos = m.end()
        if m.group("num"):
            toks.append(("num", m.group("num")))
        elif m.group("t"):
            toks.append(("t", m.group("texp") or "1"))
        elif m.group("label"):
            toks.append(("label", m.group("label").replace("{", "").replace("}", "")))
        else:
            toks.append(("op", m.group("op")))
    return toks


class _Parser:
    def __init__(self, text: str, space: TensorSpace, factor: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0
        self.space = space
        self.factor = factor
        self.unread: list[str] = []

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> dict:
        val = self.expr()
        if self.pos != len(self.toks):
            raise ExprError(f"trailing input in {self.text!r}")
        if val.unread:
            return {}
        if val.vec is None:
            raise ExprError(f"expression {self.text!r} has no basis vectors")
        return val.vec

    def expr(self) -> _Value:
        sign = 1
        kind, tok = self.peek()
        if kind == "op" and tok in "+-":
            self.take()
            sign = -1 if tok == "-" else 1
        total = self._signed(self.product(), sign)
        while True:
            kind, tok = self.peek()
            if kind == "op" and tok in "+-":
                self.take()
                term = self._signed(self.product(), -1 if tok == "-" else 1)
                total = self._add(total, term)
            else:
                return total

    def _signed(self, v: _Value, sign: int) -> _Value:
        if sign == 1 or v.unread:
            return v
        if v.vec is not None:
            return _Value(vec={k: -p for k, p in v.vec.items()})
        return _Value.of_scalar(-v.scalar)

    def _add(self, x: _Value, y: _Value) -> _Value:
        if y.unread:
            return x
        if x.unread:
            return y
        if x.vec is not None and y.vec is not None:
            out = dict(x.vec)
            for k, p in y.vec.items():
                s = out.get(k, LaurentPoly.zero()) + p
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
            return _Value(vec=out)
        if x.vec is None and y.vec is None:
            return _Value.of_scalar(x.scalar + y.scalar)
        raise ExprError(f"cannot add a scalar and a vector in {self.text!r}")

    def product(self) -> _Value:
        val = self.atom()
        while True:
            kind, tok = self.peek()
            if kind == "op" and tok == "*":
                self.take()
                val = self._mul(val, self.atom())
            elif kind in ("num", "t", "label") or (kind == "op" and tok == "("):
                val = self._mul(val, self.atom())
            else:
                return val

    def _mul(self, x: _Value, y: _Value) -> _Value:
        if x.unread or y.unread:
            return _Value(unread=True)
        if x.vec is not None and y.vec is not None:
            raise ExprError(f"product of two vectors in {self.text!r}")
        if x.vec is not None:
            x, y = y, x
        if y.vec is not None:
            return _Value(vec={k: p * x.scalar for k, p in y.vec.items() if p * x.scalar})
        return _Value.of_scalar(x.scalar * y.scalar)

    def atom(self) -> _Value:
        kind, tok = self.take()
        if kind == "num":
            return _Value.of_scalar(LaurentPoly.const(Fraction(tok)))
        if kind == "t":
            return _Value.of_scalar(LaurentPoly.monomial(int(tok)))
        if kind == "label":
            try:
                f, n = self.space.parse_label(tok)
            except SpaceError:
                self.unread.append(tok)
                return _Value(unread=True)
            if f != self.factor:
                raise ExprError(f"label {tok} does not belong to factor {self.factor} in {self.text!r}")
            return _Value(vec={n: LaurentPoly.const(1)})
        if kind == "op" and tok == "(":
            inner = self.expr()
            k2, t2 = self.take()
            if (k2, t2) != ("op", ")"):
                raise ExprError(f"unbalanced parenthesis in {self.text!r}")
            return inner
        raise ExprError(f"unexpected token {tok!r} in {self.text!r}")


def parse_factor(text: str, space: TensorSpace, factor: str) -> ParsedFactor:
    p = _Parser(text, space, factor)
    vec = p.parse()
    return ParsedFactor(vec, p.unread)


def parse_scalar(text: str) -> LaurentPoly:
    """Parse a pure Laurent polynomial such as ``"t^-6"`` or ``"2 t"``."""
    p = _Parser(text, TensorSpace.plain(1, 1, 1), "A")
    val = p.expr()
    if p.pos != len(p.toks) or val.vec is not None or val.unread:
        raise ExprError(f"not a scalar expression: {text!r}")
    return val.scalar
