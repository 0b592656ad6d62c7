import random

import pytest

from ordspace.dsl import ParseError, parse, parse_pred, pred_text, to_text
from ordspace.ordinal import OMEGA, nat, ordinals_up_to_complexity, parse_ordinal
from ordspace.space import (
    UNCOUNTABLE, And, ClosedSeg, ExplicitSet, HalfOpenSeg, InRange, IsIsolated, IsLimit, LGamma,
    LGammaCategory, Lex, Not, Omit, Or, OrderedSum, Product, Reorder, Rev,
)

P = parse_ordinal
ORDS = [o for o in ordinals_up_to_complexity(4) if o]


def test_examples():
    assert parse("seg[w] x seg[w]") == Product(ClosedSeg(OMEGA), ClosedSeg(OMEGA))
    assert parse("seg[w] xl seg[w]") == Lex(ClosedSeg(OMEGA), ClosedSeg(OMEGA))
    assert parse("L[w]") == LGamma(OMEGA)
    assert parse("L[w1]") == LGamma(UNCOUNTABLE)
    assert parse("w + rev(w)") == OrderedSum((HalfOpenSeg(OMEGA), Rev(HalfOpenSeg(OMEGA))))


def test_literals_are_greedy():
    assert parse("w+1") == HalfOpenSeg(P("w+1"))
    assert parse("(w)+(1)") == OrderedSum((HalfOpenSeg(OMEGA), HalfOpenSeg(nat(1))))
    assert parse("w + seg[3]") == OrderedSum((HalfOpenSeg(OMEGA), ClosedSeg(nat(3))))


def test_precedence():
    w, s2, s3 = HalfOpenSeg(OMEGA), ClosedSeg(nat(2)), ClosedSeg(nat(3))
    assert parse("w xl w + seg[2] xl seg[3]") == OrderedSum((Lex(w, w), Lex(s2, s3)))
    assert parse("w xl seg[2] xl seg[3]") == Lex(Lex(w, s2), s3)
    # x and xl share a level and associate left, so this puts a product under xl
    with pytest.raises(ParseError):
        parse("w x seg[2] xl seg[3]")
    assert parse("w x (seg[2] xl seg[3])") == Product(w, Lex(s2, s3))


def test_predicates():
    assert parse_pred("limit & !{w, w*2}") == And(IsLimit(), Not(ExplicitSet(frozenset({OMEGA, P("w*2")}))))
    assert parse_pred("isolated | lgamma[w]") == Or(IsIsolated(), LGammaCategory(OMEGA))
    assert parse_pred("[w, w*2] & (limit | isolated)") == And(InRange(OMEGA, P("w*2")), Or(IsLimit(), IsIsolated()))
    assert parse_pred("{}") == ExplicitSet(frozenset())


@pytest.mark.parametrize("text,pos", [
    ("rev(w x w)", 4),
    ("seg[w] x seg[w] + w", 0),
    ("reorder(seg[w])", 8),
    ("omit(w xl w, limit)", 5),
    ("seg[w", 5),
    ("w xl (w x w)", 5),
    ("foo", 0),
    ("w )", 2),
    ("omit(seg[w], bogus)", 13),
])
def test_error_positions(text, pos):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.position == pos, str(e.value)
    assert e.value.caret().splitlines()[1] == " " * pos + "^"


def test_product_under_ordered_constructor_has_diagnostic():
    with pytest.raises(ParseError) as e:
        parse("rev(seg[w] x seg[w])")
    assert "Cartesian product" in e.value.expected


# -- generated round trip --------------------------------------------------------------------


def _pred(rng, depth):
    if depth <= 0 or rng.random() < 0.4:
        choice = rng.randrange(5)
        if choice == 0:
            return IsLimit()
        if choice == 1:
            return IsIsolated()
        if choice == 2:
            return ExplicitSet(frozenset(rng.sample(ORDS, rng.randrange(0, 3))))
        if choice == 3:
            a, b = sorted(rng.sample(ORDS, 2))
            return InRange(a, b)
        return LGammaCategory(OMEGA)
    kind = rng.randrange(3)
    if kind == 0:
        return Not(_pred(rng, depth - 1))
    if kind == 1:
        return And(_pred(rng, depth - 1), _pred(rng, depth - 1))
    return Or(_pred(rng, depth - 1), _pred(rng, depth - 1))


def _ordered(rng, depth):
    if depth <= 1 or rng.random() < 0.3:
        choice = rng.randrange(3)
        lam = rng.choice(ORDS)
        if choice == 0:
            return ClosedSeg(lam)
        if choice == 1:
            return HalfOpenSeg(lam)
        return LGamma(OMEGA)
    kind = rng.randrange(5)
    if kind == 0:
        return Rev(_ordered(rng, depth - 1))
    if kind == 1:
        return Lex(_ordered(rng, depth - 1), _ordered(rng, depth - 1))
    if kind == 2:
        n = rng.randrange(2, 4)
        return OrderedSum(tuple(_ordered(rng, depth - 1) for _ in range(n)))
    amb = rng.choice([ClosedSeg, HalfOpenSeg])(rng.choice(ORDS))
    om = Omit(amb, _pred(rng, depth - 1))
    return Reorder(om) if kind == 3 else om


def _any(rng, depth):
    if depth >= 2 and rng.random() < 0.3:
        return Product(_any(rng, depth - 1), _any(rng, depth - 1))
    return _ordered(rng, depth)


def generated_corpus(n=100, seed=7):
    rng = random.Random(seed)
    return [_any(rng, rng.randint(1, 4)) for _ in range(n)]


@pytest.mark.parametrize("X", generated_corpus(), ids=lambda X: to_text(X)[:40])
def test_print_parse_round_trip(X):
    text = to_text(X)
    assert parse(text) == X
    assert to_text(parse(text)) == text


def test_pred_round_trip():
    rng = random.Random(11)
    for _ in range(100):
        p = _pred(rng, 4)
        assert parse_pred(pred_text(p)) == p
