import random

import pytest

import oracles

from ordspace.dsl import parse
from ordspace.ordinal import (
    OMEGA, ONE, ZERO, Cmp, add, complexity, is_limit, mul, nat, ordinals_up_to_complexity, parse_ordinal,
)
from ordspace.space import (
    ClosedSeg, Dir, EndpointSide, ExplicitSet, HalfOpenSeg, Immediate, LGamma, Lex, LimitSide, Mode,
    NotWellOrdered, Omit, OrderedSum, Pair, Product, Reorder, Rev, ShapeMismatch, Tagged, Unordered,
    basis, cb_derivative, cb_rank, derived_expr, enumerate_points, is_isolated, lgamma, max_point,
    member, min_point, neighbor, order_compare, order_type, sort_points,
)

P = parse_ordinal
W, W2 = OMEGA, P("w^2")


# -- examples ---------------------------------------------------------------------------------


def test_member_examples():
    assert member(ClosedSeg(W), W)
    assert member(LGamma(W), W2)
    assert not member(Omit(ClosedSeg(P("w*2")), ExplicitSet(frozenset({W}))), W)
    assert member(lgamma(W), P("w*3"))


def test_member_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        member(ClosedSeg(W), Pair(ZERO, ZERO))


def test_order_compare_examples():
    X = Lex(HalfOpenSeg(W), HalfOpenSeg(W))
    assert order_compare(X, Pair(nat(1), nat(5)), Pair(nat(2), ZERO)) is Cmp.LT
    R = parse("reorder(omit(seg[w*2], {w, w*2}))")
    a = W
    assert order_compare(R, add(a, nat(3)), add(a, nat(1))) is Cmp.LT
    assert order_compare(R, add(a, nat(1)), add(a, nat(2))) is Cmp.LT
    assert order_compare(R, add(a, nat(5)), add(a, nat(3))) is Cmp.LT
    with pytest.raises(Unordered):
        order_compare(Product(HalfOpenSeg(W), HalfOpenSeg(W)), Pair(ZERO, ZERO), Pair(ONE, ZERO))


def test_neighbor_examples():
    assert isinstance(neighbor(ClosedSeg(W), W, Dir.DOWN), LimitSide)
    lex = Lex(HalfOpenSeg(W), HalfOpenSeg(W))
    # 0-based coordinates: the first point of the third copy
    assert isinstance(neighbor(lex, Pair(nat(2), ZERO), Dir.DOWN), LimitSide)
    assert neighbor(lex, Pair(nat(2), ZERO), Dir.UP) == Immediate(Pair(nat(2), ONE))
    assert isinstance(neighbor(ClosedSeg(W), ZERO, Dir.DOWN), EndpointSide)
    R = parse("reorder(omit(seg[w*2], {w, w*2}))")
    # the block above w starts at its largest odd offset, preceded by the top of the first block
    assert isinstance(neighbor(R, nat(3), Dir.UP), Immediate)


def test_is_isolated_examples():
    assert is_isolated(Product(HalfOpenSeg(W), HalfOpenSeg(W)), Pair(nat(3), nat(7)))
    assert not is_isolated(Lex(HalfOpenSeg(W), HalfOpenSeg(W)), Pair(nat(2), ZERO))
    assert not is_isolated(ClosedSeg(W2), P("w*4"), Mode.ORDER)


def test_derived_expr_examples():
    pts = enumerate_points(ClosedSeg(W), 4)
    assert [p for p in pts if member(derived_expr(ClosedSeg(W)), p)] == [W]
    sq = Product(ClosedSeg(W), ClosedSeg(W))
    grid = enumerate_points(sq, 4)
    d1 = derived_expr(sq)
    assert {p for p in grid if member(d1, p)} == {p for p in grid if p.first == W or p.second == W}
    d2 = derived_expr(d1)
    assert [p for p in grid if member(d2, p)] == [Pair(W, W)]


def test_enumerate_examples():
    assert list(enumerate_points(ClosedSeg(W), 2)) == [ZERO, ONE, nat(2), W]
    assert complexity(W) == 2 and complexity(nat(3)) == 3
    assert list(enumerate_points(ClosedSeg(W), 0)) == [ZERO]
    sq = Lex(ClosedSeg(W), ClosedSeg(W))
    assert list(enumerate_points(sq, 0)) == [Pair(ZERO, ZERO)]
    assert Pair(W, W) in enumerate_points(sq, 2)


def test_basis_examples():
    sq = Product(ClosedSeg(W), ClosedSeg(W))
    for n in range(5):
        b = basis(sq, Pair(W, W), n)
        inside = {p for p in enumerate_points(sq, 6) if b.contains(p)}
        assert inside == {p for p in enumerate_points(sq, 6) if p.first >= nat(n) and p.second >= nat(n)}
    assert str(basis(ClosedSeg(W2), W2, 3)) == "(w*3, w^2]"
    assert str(basis(ClosedSeg(W2), nat(5), 3)) == "[5, 5]"


def test_extreme_points():
    assert (min_point(ClosedSeg(W2)), max_point(ClosedSeg(W2))) == (ZERO, W2)
    r = Rev(HalfOpenSeg(W))
    assert (min_point(r), max_point(r)) == (None, ZERO)
    s = OrderedSum((HalfOpenSeg(W), Rev(HalfOpenSeg(W))))
    assert (min_point(s), max_point(s)) == (Tagged(0, ZERO), Tagged(1, ZERO))


def test_order_type_examples():
    assert order_type(Lex(ClosedSeg(W), ClosedSeg(W))) == P("w^2+w+1")
    assert order_type(ClosedSeg(P("w^3+2"))) == P("w^3+3")
    assert order_type(LGamma(W)) == P("w^2+1")
    with pytest.raises(NotWellOrdered):
        order_type(Rev(HalfOpenSeg(W)))


def test_lgamma_at_omega_is_the_closed_segment():
    L, S = lgamma(W), ClosedSeg(W2)
    pts = enumerate_points(S, 5)
    assert list(enumerate_points(L, 5)) == list(pts)
    assert all(member(L, p) for p in pts)
    for p, q in zip(pts, pts[1:]):
        assert order_compare(L, p, q) is Cmp.LT


def test_cb_derivative_examples():
    X = ClosedSeg(W2)
    pts = enumerate_points(X, 6)
    d = cb_derivative(X, ONE)
    assert [p for p in pts if member(d, p)] == [p for p in pts if is_limit(p)]
    assert cb_derivative(X, ZERO) == X
    sq = Product(ClosedSeg(W), ClosedSeg(W))
    assert [p for p in enumerate_points(sq, 5) if member(cb_derivative(sq, nat(2)), p)] == [Pair(W, W)]


# -- properties ---------------------------------------------------------------------------------


SPACES = [
    "seg[w^2]", "w*3+1", "seg[w] xl seg[w]", "w xl w", "seg[w] x seg[w]", "rev(seg[w*2])",
    "w + rev(w)", "reorder(omit(seg[w*2], {w, w*2}))", "omit(seg[w^2], limit & !{w, w^2})",
    "L[w]", "seg[w^w]", "(w + rev(w)) xl (w + rev(w))",
]


@pytest.mark.parametrize("text", SPACES)
def test_enumeration_sorted_and_monotone(text):
    X = parse(text)
    for k in range(1, 5):
        small, big = enumerate_points(X, k), enumerate_points(X, k + 1)
        assert set(small) <= set(big)
        if X.ordered:
            assert sort_points(X, small) == list(small)


@pytest.mark.parametrize("text", [t for t in SPACES if parse(t).ordered])
def test_immediate_neighbours_show_up_in_deeper_enumeration(text):
    X = parse(text)
    k = 3
    deep = list(enumerate_points(X, k + 3))
    for p in enumerate_points(X, k):
        i = deep.index(p)
        for d, j in ((Dir.UP, i + 1), (Dir.DOWN, i - 1)):
            s = neighbor(X, p, d)
            if isinstance(s, Immediate):
                assert 0 <= j < len(deep) and deep[j] == s.point, (p, d)
            elif isinstance(s, EndpointSide):
                assert not (0 <= j < len(deep)), (p, d)
        both = [neighbor(X, p, d) for d in Dir]
        assert is_isolated(X, p) == all(not isinstance(s, LimitSide) for s in both)


@pytest.mark.parametrize("text", SPACES)
def test_bases_nested_and_contain_point(text):
    X = parse(text)
    pts = enumerate_points(X, 4)
    for p in pts[:30]:
        prev = None
        for n in range(5):
            b = basis(X, p, n)
            assert b.contains(p)
            inside = {q for q in pts if b.contains(q)}
            if prev is not None:
                assert inside <= prev
            prev = inside


@pytest.mark.parametrize("text", ["seg[w] x seg[w]", "seg[w^2] x seg[w]", "(w+1) x seg[w*2]", "w x seg[w]"])
def test_product_derived_set_matches_union_formula(text):
    X = parse(text)
    d = derived_expr(X)
    for p in enumerate_points(X, 5):
        expect = not is_isolated(X.x, p.first) or not is_isolated(X.y, p.second)
        assert member(d, p) == expect, p


def test_lex_type_law_on_random_pairs():
    rng = random.Random(20240601)
    pool = [o for o in ordinals_up_to_complexity(5) if o]
    kinds = [ClosedSeg, HalfOpenSeg]
    for _ in range(50):
        X = rng.choice(kinds)(rng.choice(pool))
        Y = rng.choice(kinds)(rng.choice(pool))
        assert order_type(Lex(X, Y)) == mul(order_type(Y), order_type(X)), (X, Y)


def test_lex_type_law_against_sorted_truncation():
    # count copies and their finite tails directly on a truncation
    for a, b in [(1, 1), (2, 1), (1, 3), (3, 2)]:
        X, Y = ClosedSeg(nat(a)), ClosedSeg(add(W, nat(b)))
        pts = enumerate_points(Lex(X, Y), 6)
        limits = [p for p in pts if not is_isolated(Lex(X, Y), p)]
        # a+1 copies of w+b+1: one limit per copy, at minor coordinate w
        assert len(limits) == a + 1
        assert order_type(Lex(X, Y)) == mul(add(W, nat(b + 1)), nat(a + 1))


def test_cb_divisibility_rule_against_iterated_derived_sets():
    for lam in ordinals_up_to_complexity(6):
        if not lam:
            continue
        X = ClosedSeg(lam)
        d1, d2 = cb_derivative(X, ONE), cb_derivative(X, nat(2))
        for p in enumerate_points(X, 6):
            assert member(d1, p) == (not is_isolated(X, p)), (lam, p)
            assert member(d2, p) == oracles.second_derived_by_limits(X, p), (lam, p)


def test_cb_rank_on_segments():
    X = ClosedSeg(P("w^3"))
    assert cb_rank(X, P("w^2*2")) == nat(2)
    assert cb_rank(X, P("w^3")) == nat(3)
    assert cb_rank(X, P("w+1")) == ZERO
