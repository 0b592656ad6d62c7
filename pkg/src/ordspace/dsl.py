"""Text syntax for space expressions.

Grammar::

    expr    := term { "+" term }
    term    := factor { ("x" | "xl") factor }
    factor  := ordlit | "L[" (ordlit | "w1") "]" | "rev(" expr ")" | "reorder(" expr ")"
             | "seg[" ordlit "]" | "omit(" expr "," pred ")" | "(" expr ")"
    pred    := conj { "|" conj }
    conj    := atom { "&" atom }
    atom    := "!" atom | "limit" | "isolated" | "lgamma[" ordlit "]"
             | "{" [ ordlit { "," ordlit } ] "}" | "[" ordlit "," ordlit "]" | "(" pred ")"

A bare ordinal literal ``a`` is the space [0, a); ``seg[a]`` is [0, a].  A
literal is read greedily, so ``w+1`` is one space, not a sum; the printer
parenthesises literal parts of sums to keep the round trip exact.
"""

from __future__ import annotations

from .ordinal import OrdinalSyntaxError, Ordinal, _LitParser, render
from .space import (
    UNCOUNTABLE, And, ClosedSeg, ExplicitSet, HalfOpenSeg, InRange, IsIsolated, IsLimit, LGamma,
    LGammaCategory, Lex, Not, Omit, Or, OrderedSum, Pred, Product, Reorder, Rev, ShapeMismatch,
    SpaceExpr, Unordered, Unsupported,
)

__all__ = ["ParseError", "parse", "parse_pred", "to_text", "pred_text"]


class ParseError(ValueError):
    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        self.text = text
        super().__init__(f"at position {position}: expected {expected}")

    def caret(self) -> str:
        """The input with a marker under the error position."""
        return f"{self.text}\n{' ' * self.position}^"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # -- scanning

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at(self, word: str) -> bool:
        self.skip()
        if not self.text.startswith(word, self.pos):
            return False
        end = self.pos + len(word)
        if word[-1].isalnum() and end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
            return False
        return True

    def eat(self, word: str) -> bool:
        if self.at(word):
            self.pos += len(word)
            return True
        return False

    def need(self, word: str):
        if not self.eat(word):
            self.fail(repr(word))

    def fail(self, expected: str, pos: int | None = None):
        raise ParseError(self.pos if pos is None else pos, expected, self.text)

    def ordlit(self) -> Ordinal:
        self.skip()
        lit = _LitParser(self.text, self.pos)
        try:
            value = lit.literal()
        except OrdinalSyntaxError as e:
            raise ParseError(e.position, e.expected, self.text) from None
        self.pos = lit.pos
        return value

    def starts_ordlit(self) -> bool:
        self.skip()
        return _LitParser(self.text, self.pos).starts_term()

    # -- spaces

    def ordered(self, node: SpaceExpr, pos: int, where: str) -> SpaceExpr:
        if not node.ordered:
            self.fail(f"an ordered space under {where} (a Cartesian product carries no order)", pos)
        return node

    def expr(self) -> SpaceExpr:
        parts = []
        while True:
            self.skip()
            at = self.pos
            parts.append((self.term(), at))
            if not self.eat("+"):
                break
        if len(parts) == 1:
            return parts[0][0]
        for node, at in parts:
            self.ordered(node, at, "'+'")
        return OrderedSum(tuple(n for n, _ in parts))

    def term(self) -> SpaceExpr:
        self.skip()
        start = self.pos
        left = self.factor()
        while True:
            if self.eat("xl"):
                self.skip()
                at = self.pos
                right = self.factor()
                self.ordered(left, start, "'xl'")
                self.ordered(right, at, "'xl'")
                left = Lex(left, right)
            elif self.eat("x"):
                left = Product(left, self.factor())
            else:
                return left

    def factor(self) -> SpaceExpr:
        self.skip()
        start = self.pos
        if self.eat("seg["):
            lam = self.ordlit()
            self.need("]")
            return ClosedSeg(lam)
        if self.eat("L["):
            gamma = UNCOUNTABLE if self.eat("w1") else self.ordlit()
            self.need("]")
            return LGamma(gamma)
        if self.eat("rev("):
            self.skip()
            at = self.pos
            inner = self.ordered(self.expr(), at, "rev()")
            self.need(")")
            return Rev(inner)
        if self.eat("reorder("):
            self.skip()
            at = self.pos
            inner = self.expr()
            self.need(")")
            if not isinstance(inner, Omit):
                self.fail("omit(...) inside reorder()", at)
            return Reorder(inner)
        if self.eat("omit("):
            self.skip()
            at = self.pos
            amb = self.expr()
            self.need(",")
            pred = self.pred()
            self.need(")")
            if not isinstance(amb, (ClosedSeg, HalfOpenSeg)):
                self.fail("an ordinal segment as the first argument of omit()", at)
            return Omit(amb, pred)
        if self.eat("("):
            inner = self.expr()
            self.need(")")
            return inner
        if self.starts_ordlit():
            return HalfOpenSeg(self.ordlit())
        self.fail("a space: ordinal literal, seg[..], L[..], rev(..), reorder(..), omit(..) or '('", start)

    # -- predicates

    def pred(self) -> Pred:
        left = self.conj()
        while self.eat("|"):
            left = Or(left, self.conj())
        return left

    def conj(self) -> Pred:
        left = self.atom()
        while self.eat("&"):
            left = And(left, self.atom())
        return left

    def atom(self) -> Pred:
        if self.eat("!"):
            return Not(self.atom())
        if self.eat("limit"):
            return IsLimit()
        if self.eat("isolated"):
            return IsIsolated()
        if self.eat("lgamma["):
            g = self.ordlit()
            self.need("]")
            return LGammaCategory(g)
        if self.eat("{"):
            items = []
            if not self.eat("}"):
                items.append(self.ordlit())
                while self.eat(","):
                    items.append(self.ordlit())
                self.need("}")
            return ExplicitSet(frozenset(items))
        if self.eat("["):
            lo = self.ordlit()
            self.need(",")
            hi = self.ordlit()
            self.need("]")
            return InRange(lo, hi)
        if self.eat("("):
            p = self.pred()
            self.need(")")
            return p
        self.fail("a predicate: limit, isolated, lgamma[..], {..}, [a, b], '!' or '('")

    def finish(self):
        self.skip()
        if self.pos != len(self.text):
            self.fail("end of input")


def parse(text: str) -> SpaceExpr:
    p = _Parser(text)
    try:
        node = p.expr()
    except (Unordered, ShapeMismatch) as e:
        raise ParseError(p.pos, str(e), text) from None
    p.finish()
    return node


def parse_pred(text: str) -> Pred:
    p = _Parser(text)
    node = p.pred()
    p.finish()
    return node


# -- canonical printer --------------------------------------------------------------------


def _gamma(g) -> str:
    return "w1" if g is UNCOUNTABLE else render(g)


def to_text(X: SpaceExpr) -> str:
    match X:
        case ClosedSeg(lam):
            return f"seg[{render(lam)}]"
        case HalfOpenSeg(lam):
            return render(lam)
        case LGamma(g):
            return f"L[{_gamma(g)}]"
        case Rev(inner):
            return f"rev({to_text(inner)})"
        case Reorder(inner):
            return f"reorder({to_text(inner)})"
        case Omit(amb, pred):
            return f"omit({to_text(amb)}, {pred_text(pred)})"
        case OrderedSum(parts):
            return " + ".join(_sum_part(p) for p in parts)
        case Lex(a, b):
            return f"{_left(a)} xl {_right(b)}"
        case Product(a, b):
            return f"{_left(a)} x {_right(b)}"
    raise Unsupported(f"{type(X).__name__} has no text syntax")


def _sum_part(X):
    return f"({to_text(X)})" if isinstance(X, (HalfOpenSeg, OrderedSum)) else to_text(X)


def _left(X):
    return f"({to_text(X)})" if isinstance(X, OrderedSum) else to_text(X)


def _right(X):
    return f"({to_text(X)})" if isinstance(X, (OrderedSum, Lex, Product)) else to_text(X)


def pred_text(p: Pred) -> str:
    match p:
        case IsLimit():
            return "limit"
        case IsIsolated():
            return "isolated"
        case LGammaCategory(g):
            return f"lgamma[{render(g)}]"
        case ExplicitSet(items):
            return "{" + ", ".join(render(i) for i in sorted(items)) + "}"
        case InRange(lo, hi):
            return f"[{render(lo)}, {render(hi)}]"
        case Not(inner):
            s = pred_text(inner)
            return f"!({s})" if isinstance(inner, (And, Or)) else f"!{s}"
        case And(a, b):
            left = pred_text(a)
            if isinstance(a, Or):
                left = f"({left})"
            right = pred_text(b)
            if isinstance(b, (And, Or)):
                right = f"({right})"
            return f"{left} & {right}"
        case Or(a, b):
            right = pred_text(b)
            if isinstance(b, Or):
                right = f"({right})"
            return f"{pred_text(a)} | {right}"
    raise TypeError(f"unknown predicate {p!r}")
