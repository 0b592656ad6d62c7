"""Order and topology queries over space expressions.

Every ordered node answers four local questions, from which isolation,
Cantor-Bendixson ranks and neighbourhood bases are derived:

* ``down(X, p)`` / ``up(X, p)``: what lies immediately on one side of ``p``
  (an :class:`Immediate` neighbour, a :class:`LimitSide` carrying the
  approach value ``sup(rank(q) + 1)`` of points closing in, or
  :class:`EndpointSide`);
* ``approach_point(X, p, side, n)``: the ``n``-th point of a canonical
  sequence converging to ``p`` from that side;
* ``bottom(X)`` / ``top(X)``: the extreme point, or the approach value of
  the missing end;
* ``height(X)``: an upper bound for all ranks and end approach values,
  exact for the constructors used here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from typing import List, Optional

from ..ordinal import (
    OMEGA, ONE, ZERO, Cmp, Ordinal, add, classify, compare, divides_pow_omega, fundamental, is_limit,
    left_sub, mul, natural_sum, ordinals_up_to_complexity,
)
from .expr import (
    UNCOUNTABLE, ClosedSeg, Derived, HalfOpenSeg, Interval, Lex, LGamma, LGammaCategory, Not,
    NoAmbient, NotMember, Omit, OrderedSum, Pair, Point, Product, Reorder, Rev, ShapeMismatch,
    SpaceExpr, Tagged, Union, Unordered, Unsupported, removed_limits_if_finite,
    removes_finitely_many_successors,
)

SCAN_LIMIT = 100_000


class Dir(enum.Enum):
    DOWN = "down"
    UP = "up"

    @property
    def flip(self) -> "Dir":
        return Dir.UP if self is Dir.DOWN else Dir.DOWN


class Mode(enum.Enum):
    ORDER = "order"
    AMBIENT = "ambient"


@dataclass(frozen=True)
class Immediate:
    point: Point


@dataclass(frozen=True)
class LimitSide:
    approach: Ordinal


@dataclass(frozen=True)
class EndpointSide:
    pass


@dataclass(frozen=True)
class Extreme:
    point: Point


@dataclass(frozen=True)
class OpenEnd:
    approach: Ordinal


@dataclass(frozen=True)
class EmptyEnd:
    pass


# -- L_gamma ------------------------------------------------------------------


def lgamma(gamma) -> LGamma:
    """The L_gamma space as an expression node (expanded lazily)."""
    return LGamma(gamma)


def expand_lgamma(node: LGamma) -> SpaceExpr:
    gamma = node.gamma
    if gamma is UNCOUNTABLE:
        raise Unsupported("L_gamma for uncountable gamma exists only as an AST value; "
                          "enumeration and verification need a countable space")
    if gamma == OMEGA:
        return ClosedSeg(mul(OMEGA, OMEGA))
    raise Unsupported(f"gamma={gamma} is not an infinite cardinal (only w is below epsilon_0)")


def lgamma_formal(gamma: Ordinal) -> Reorder:
    """The general three-category construction, without the gamma=w shortcut."""
    lam = mul(gamma, gamma)
    return Reorder(Omit(ClosedSeg(lam), Not(LGammaCategory(gamma))))


def _resolve(X: SpaceExpr) -> SpaceExpr:
    while isinstance(X, LGamma):
        X = expand_lgamma(X)
    return X


# -- membership -----------------------------------------------------------------


def member(X: SpaceExpr, p: Point) -> bool:
    X = _resolve(X)
    match X:
        case ClosedSeg(lam):
            _shape(isinstance(p, Ordinal), X, p)
            return p <= lam
        case HalfOpenSeg(lam):
            _shape(isinstance(p, Ordinal), X, p)
            return p < lam
        case Omit():
            _shape(isinstance(p, Ordinal), X, p)
            return X.contains_ambient(p)
        case Reorder(inner):
            return member(inner, p)
        case Rev(inner):
            return member(inner, p)
        case Interval(parent, a, b):
            if not member(parent, p):
                return False
            return compare_points(parent, a, p) is not Cmp.GT and \
                (b is None or compare_points(parent, p, b) is not Cmp.GT)
        case OrderedSum(parts):
            _shape(isinstance(p, Tagged) and 0 <= p.index < len(parts), X, p)
            return member(parts[p.index], p.point)
        case Lex(major, minor):
            _shape(isinstance(p, Pair), X, p)
            return member(major, p.first) and member(minor, p.second)
        case Product(x, y):
            _shape(isinstance(p, Pair), X, p)
            return member(x, p.first) and member(y, p.second)
        case Derived(ClosedSeg() | HalfOpenSeg() as inner, order):
            return member(inner, p) and (not order or (bool(p) and divides_pow_omega(order, p)))
        case Derived(inner, order):
            return member(inner, p) and _cb_rank(inner, p) >= order
        case Union(parts):
            return any(member(part, p) for part in parts)
    raise ShapeMismatch(f"unknown space node {X!r}")


def _shape(ok: bool, X, p):
    if not ok:
        raise ShapeMismatch(f"point {p} does not match {type(X).__name__}")


def _check(X: SpaceExpr, p: Point):
    if not member(X, p):
        raise NotMember(f"{p} is not a point of {type(X).__name__}")


# -- order ----------------------------------------------------------------------


def order_compare(X: SpaceExpr, p: Point, q: Point) -> Cmp:
    _check(X, p)
    _check(X, q)
    return compare_points(X, p, q)


def compare_points(X: SpaceExpr, p: Point, q: Point) -> Cmp:
    X = _resolve(X)
    match X:
        case ClosedSeg() | HalfOpenSeg() | Omit():
            return compare(p, q)
        case Reorder(inner):
            if _same_block(inner, p, q):
                kp, kq = _reorder_key(p), _reorder_key(q)
                return Cmp.EQ if kp == kq else (Cmp.LT if kp < kq else Cmp.GT)
            return compare(p, q)
        case Rev(inner):
            return Cmp(-compare_points(inner, p, q))
        case Interval(parent, _, _):
            return compare_points(parent, p, q)
        case OrderedSum(parts):
            if p.index != q.index:
                return Cmp.LT if p.index < q.index else Cmp.GT
            return compare_points(parts[p.index], p.point, q.point)
        case Lex(major, minor):
            c = compare_points(major, p.first, q.first)
            return c if c is not Cmp.EQ else compare_points(minor, p.second, q.second)
    raise Unordered(f"{type(X).__name__} carries no order")


def sort_points(X: SpaceExpr, points) -> List[Point]:
    return sorted(points, key=cmp_to_key(lambda a, b: int(compare_points(X, a, b))))


# -- reorder helpers ------------------------------------------------------------------


def _block_of(omit: Omit, x: Ordinal) -> Optional[Ordinal]:
    """The removed limit alpha with x in R_alpha, if any."""
    rho = x.limit_part()
    if rho and rho != x and not omit.contains_ambient(rho):
        return rho
    return None


def _same_block(omit: Omit, p, q) -> bool:
    bp = _block_of(omit, p)
    return bp is not None and bp == _block_of(omit, q)


def _reorder_key(x: Ordinal):
    # ... a+5, a+3, a+1, a+2, a+4 ...
    n = x.finite_part()
    return (0, -n) if n % 2 else (1, n)


def _in_segment(omit: Omit, x: Ordinal) -> bool:
    amb = omit.ambient
    return x <= amb.lam if isinstance(amb, ClosedSeg) else x < amb.lam


def _check_reorder(omit: Omit):
    if not removes_finitely_many_successors(omit.removed):
        raise Unsupported("reorder needs a removal predicate that keeps almost all successors")
    for alpha in _effective_blocks(omit):
        if not add(alpha, OMEGA) <= omit.ambient.lam:
            raise Unsupported(f"reordered block after {alpha} is cut short by the segment end")


def _present(omit: Omit, x: Ordinal) -> bool:
    return omit.contains_ambient(x)


def _block_scan(omit: Omit, rho: Ordinal, start: int, step: int):
    n = start
    for _ in range(SCAN_LIMIT):
        if n < 1:
            return None
        x = add(rho, Ordinal.of(n))
        if _present(omit, x):
            return n
        n += step
    raise Unsupported("block scan exceeded limit")


# -- omit via positions -----------------------------------------------------------


def _tail_free(omit: Omit):
    if not removes_finitely_many_successors(omit.removed):
        raise Unsupported("order structure of omit() needs finitely many removed successors per w-block")


def omit_position(omit: Omit, x: Ordinal) -> Ordinal:
    """Order type of the points of ``omit`` below ambient ordinal ``x``."""
    _tail_free(omit)
    rho, n = x.limit_part(), x.finite_part()
    gone = sum(1 for j in range(n) if not _present(omit, add(rho, Ordinal.of(j))))
    return add(rho, Ordinal.of(n - gone))


def omit_at(omit: Omit, pos: Ordinal) -> Optional[Ordinal]:
    rho, m = pos.limit_part(), pos.finite_part()
    top = omit.ambient_max
    seen = -1
    j = 0
    for _ in range(SCAN_LIMIT):
        x = add(rho, Ordinal.of(j))
        if top is not None and x > top:
            return None
        if isinstance(omit.ambient, HalfOpenSeg) and not x < omit.ambient.lam:
            return None
        if _present(omit, x):
            seen += 1
            if seen == m:
                return x
        j += 1
    raise Unsupported("position scan exceeded limit")


def omit_type(omit: Omit) -> Ordinal:
    amb = omit.ambient
    if isinstance(amb, ClosedSeg):
        t = omit_position(omit, amb.lam)
        return add(t, ONE) if _present(omit, amb.lam) else t
    return omit_position(omit, amb.lam)


# -- well-ordered positions ----------------------------------------------------------


def is_well_ordered(X: SpaceExpr) -> bool:
    X = _resolve(X)
    match X:
        case ClosedSeg() | HalfOpenSeg() | Omit():
            return True
        case Reorder(inner):
            return not _effective_blocks(inner)
        case Rev(inner):
            return is_well_ordered(inner) and order_type(inner).is_finite
        case Interval(parent, _, _):
            return is_well_ordered(parent)
        case OrderedSum(parts):
            return all(is_well_ordered(p) for p in parts)
        case Lex(major, minor):
            return is_well_ordered(major) and is_well_ordered(minor)
    return False


class NotWellOrdered(Unsupported):
    pass


def order_type(X: SpaceExpr) -> Ordinal:
    X = _resolve(X)
    match X:
        case ClosedSeg(lam):
            return add(lam, ONE)
        case HalfOpenSeg(lam):
            return lam
        case Omit():
            return omit_type(X)
        case Reorder(inner) if not _effective_blocks(inner):
            return omit_type(inner)
        case Rev(inner) if is_well_ordered(inner) and order_type(inner).is_finite:
            return order_type(inner)
        case Interval(parent, a, b) if is_well_ordered(parent):
            return _interval_type(parent, a, b)
        case OrderedSum(parts) if is_well_ordered(X):
            out = ZERO
            for part in parts:
                out = add(out, order_type(part))
            return out
        case Lex(major, minor) if is_well_ordered(X):
            return mul(order_type(minor), order_type(major))
    raise NotWellOrdered(f"{type(X).__name__} is not well-ordered")


def _interval_type(parent, a, b) -> Ordinal:
    """Order type of [a, b] (or [a, top) when b is None) in a well-ordered parent."""
    if b is None:
        return left_sub(position(parent, a), order_type(parent))
    return add(left_sub(position(parent, a), position(parent, b)), ONE)


def position(X: SpaceExpr, p: Point) -> Ordinal:
    """Order type of the initial segment strictly below ``p``."""
    X = _resolve(X)
    match X:
        case ClosedSeg() | HalfOpenSeg():
            return p
        case Omit():
            return omit_position(X, p)
        case Reorder(inner) if not _effective_blocks(inner):
            return omit_position(inner, p)
        case Rev(inner) if is_well_ordered(X):
            n = int(order_type(inner))
            return Ordinal.of(n - 1 - int(position(inner, p)))
        case Interval(parent, a, _) if is_well_ordered(parent):
            return left_sub(position(parent, a), position(parent, p))
        case OrderedSum(parts) if is_well_ordered(X):
            out = ZERO
            for part in parts[:p.index]:
                out = add(out, order_type(part))
            return add(out, position(parts[p.index], p.point))
        case Lex(major, minor) if is_well_ordered(X):
            return add(mul(order_type(minor), position(major, p.first)), position(minor, p.second))
    raise NotWellOrdered(f"{type(X).__name__} is not well-ordered")


def _effective_blocks(omit: Omit):
    """Removed limits whose successor block is nonempty (these get reordered)."""
    lim = removed_limits_if_finite(omit.removed)
    if lim is None:
        _tail_free(omit)
        raise Unsupported("reorder needs finitely many removed limit points")
    return tuple(sorted(a for a in lim if a and _in_segment(omit, add(a, ONE))))


# -- sides ----------------------------------------------------------------------------


def down(X: SpaceExpr, p: Point):
    return _side(X, p, Dir.DOWN)


def up(X: SpaceExpr, p: Point):
    return _side(X, p, Dir.UP)


def neighbor(X: SpaceExpr, p: Point, direction: Dir):
    _check(X, p)
    return _side(X, p, direction)


def _seg_side(lam: Ordinal, closed: bool, x: Ordinal, d: Dir):
    if d is Dir.DOWN:
        kind, pred = classify(x)
        if pred is not None:
            return Immediate(pred)
        if not x:
            return EndpointSide()
        return LimitSide(x.last_exponent)
    nxt = add(x, ONE)
    if (closed and nxt <= lam) or (not closed and nxt < lam):
        return Immediate(nxt)
    return EndpointSide()


def _side(X: SpaceExpr, p: Point, d: Dir):
    X = _resolve(X)
    match X:
        case ClosedSeg(lam):
            return _seg_side(lam, True, p, d)
        case HalfOpenSeg(lam):
            return _seg_side(lam, False, p, d)
        case Omit():
            pos = omit_position(X, p)
            seg = HalfOpenSeg(omit_type(X))
            s = _side(seg, pos, d)
            if isinstance(s, Immediate):
                return Immediate(omit_at(X, s.point))
            return s
        case Reorder(inner):
            return _reorder_side(inner, p, d)
        case Rev(inner):
            return _side(inner, p, d.flip)
        case Interval(parent, a, b):
            if p == (a if d is Dir.DOWN else b):
                return EndpointSide()
            return _side(parent, p, d)
        case OrderedSum(parts):
            s = _side(parts[p.index], p.point, d)
            if isinstance(s, Immediate):
                return Immediate(Tagged(p.index, s.point))
            if isinstance(s, LimitSide):
                return s
            j = _next_nonempty(parts, p.index, d)
            if j is None:
                return EndpointSide()
            e = _end(parts[j], d.flip)
            if isinstance(e, Extreme):
                return Immediate(Tagged(j, e.point))
            return LimitSide(e.approach)
        case Lex(major, minor):
            s = _side(minor, p.second, d)
            if isinstance(s, Immediate):
                return Immediate(Pair(p.first, s.point))
            if isinstance(s, LimitSide):
                return s
            sx = _side(major, p.first, d)
            if isinstance(sx, EndpointSide):
                return sx
            if isinstance(sx, Immediate):
                e = _end(minor, d.flip)
                if isinstance(e, Extreme):
                    return Immediate(Pair(sx.point, e.point))
                return LimitSide(e.approach)
            return LimitSide(add(height(minor), sx.approach))
    raise Unordered(f"{type(X).__name__} carries no order")


def _next_nonempty(parts, i, d: Dir):
    rng = range(i - 1, -1, -1) if d is Dir.DOWN else range(i + 1, len(parts))
    for j in rng:
        if not isinstance(_end(parts[j], Dir.DOWN), EmptyEnd):
            return j
    return None


def _reorder_side(omit: Omit, x: Ordinal, d: Dir):
    _check_reorder(omit)
    blocks = set(_effective_blocks(omit))
    rho = _block_of(omit, x)
    if rho is not None and rho in blocks:
        n = x.finite_part()
        odd = n % 2 == 1
        if (d is Dir.DOWN) == odd:
            # move outward along the odd tail / back down the even run
            if odd:
                m = _block_scan(omit, rho, n + 2, 2)
            else:
                m = _block_scan(omit, rho, n - 2, -2)
                if m is None:
                    m = _block_scan(omit, rho, 1, 2)
        else:
            if odd:
                m = _block_scan(omit, rho, n - 2, -2)
                if m is None:
                    m = _block_scan(omit, rho, 2, 2)
            else:
                m = _block_scan(omit, rho, n + 2, 2)
        return Immediate(add(rho, Ordinal.of(m)))
    if d is Dir.DOWN:
        if is_limit(x):
            return LimitSide(x.last_exponent)
        base, n = x.limit_part(), x.finite_part()
        for j in range(n - 1, -1, -1):
            y = add(base, Ordinal.of(j))
            if _present(omit, y):
                return Immediate(y)
        return EndpointSide()
    base, n = x.limit_part(), x.finite_part()
    top = omit.ambient_max
    for j in range(n + 1, n + SCAN_LIMIT):
        y = add(base, Ordinal.of(j))
        if top is None:
            if isinstance(omit.ambient, HalfOpenSeg) and not y < omit.ambient.lam:
                return EndpointSide()
        elif y > top:
            return EndpointSide()
        if _present(omit, y):
            return Immediate(y)
    raise Unsupported("scan exceeded limit")


# -- ends -------------------------------------------------------------------------------


def bottom(X: SpaceExpr):
    return _end(X, Dir.DOWN)


def top(X: SpaceExpr):
    return _end(X, Dir.UP)


def min_point(X: SpaceExpr) -> Optional[Point]:
    e = bottom(X)
    return e.point if isinstance(e, Extreme) else None


def max_point(X: SpaceExpr) -> Optional[Point]:
    e = top(X)
    return e.point if isinstance(e, Extreme) else None


def _seg_end(lam: Ordinal, closed: bool, d: Dir):
    if not closed and not lam:
        return EmptyEnd()
    if d is Dir.DOWN:
        return Extreme(ZERO)
    if closed:
        return Extreme(lam)
    kind, pred = classify(lam)
    if pred is not None:
        return Extreme(pred)
    return OpenEnd(lam.last_exponent)


def _end(X: SpaceExpr, d: Dir):
    X = _resolve(X)
    match X:
        case ClosedSeg(lam):
            return _seg_end(lam, True, d)
        case HalfOpenSeg(lam):
            return _seg_end(lam, False, d)
        case Omit():
            e = _end(HalfOpenSeg(omit_type(X)), d)
            return Extreme(omit_at(X, e.point)) if isinstance(e, Extreme) else e
        case Reorder(inner):
            _check_reorder(inner)
            e = _end(inner, d)
            if isinstance(e, Extreme) and _block_of(inner, e.point) in set(_effective_blocks(inner)):
                raise Unsupported("extreme point inside a reordered block")
            return e
        case Rev(inner):
            return _end(inner, d.flip)
        case Interval(parent, a, b):
            if d is Dir.UP and b is None:
                return _end(parent, d)
            return Extreme(a if d is Dir.DOWN else b)
        case OrderedSum(parts):
            idx = range(len(parts)) if d is Dir.DOWN else range(len(parts) - 1, -1, -1)
            for i in idx:
                e = _end(parts[i], d)
                if isinstance(e, Extreme):
                    return Extreme(Tagged(i, e.point))
                if isinstance(e, OpenEnd):
                    return e
            return EmptyEnd()
        case Lex(major, minor):
            ex, ey = _end(major, d), _end(minor, d)
            if isinstance(ex, EmptyEnd) or isinstance(ey, EmptyEnd):
                return EmptyEnd()
            if isinstance(ex, Extreme):
                if isinstance(ey, Extreme):
                    return Extreme(Pair(ex.point, ey.point))
                return ey
            return OpenEnd(add(height(minor), ex.approach))
    raise Unordered(f"{type(X).__name__} carries no order")


# -- approach sequences ------------------------------------------------------------------


def approach_point(X: SpaceExpr, p: Point, d: Dir, n: int) -> Point:
    """n-th term of the canonical sequence converging to ``p`` from side ``d``."""
    X = _resolve(X)
    match X:
        case ClosedSeg() | HalfOpenSeg():
            return fundamental(p, n)
        case Omit():
            return omit_at(X, fundamental(omit_position(X, p), n))
        case Reorder(inner):
            f = fundamental(p, n)
            blocks = set(_effective_blocks(inner))
            for j in range(SCAN_LIMIT):
                y = add(f, Ordinal.of(j))
                b = _block_of(inner, y)
                if _present(inner, y) and not (b in blocks and y.finite_part() % 2):
                    return y
            raise Unsupported("scan exceeded limit")
        case Rev(inner):
            return approach_point(inner, p, d.flip, n)
        case Interval(parent, a, b):
            bound = a if d is Dir.DOWN else b
            if bound is None:
                return approach_point(parent, p, d, n)
            beyond = Cmp.GT if d is Dir.DOWN else Cmp.LT
            for m in range(SCAN_LIMIT):
                if compare_points(parent, approach_point(parent, p, d, m), bound) is beyond:
                    return approach_point(parent, p, d, m + n)
            raise Unsupported("scan exceeded limit")
        case OrderedSum(parts):
            s = _side(parts[p.index], p.point, d)
            if isinstance(s, LimitSide):
                return Tagged(p.index, approach_point(parts[p.index], p.point, d, n))
            j = _next_nonempty(parts, p.index, d)
            return Tagged(j, end_point(parts[j], d.flip, n))
        case Lex(major, minor):
            s = _side(minor, p.second, d)
            if isinstance(s, LimitSide):
                return Pair(p.first, approach_point(minor, p.second, d, n))
            sx = _side(major, p.first, d)
            if isinstance(sx, Immediate):
                return Pair(sx.point, end_point(minor, d.flip, n))
            a = approach_point(major, p.first, d, n)
            return Pair(a, _any_point(minor, d))
    raise Unordered(f"{type(X).__name__} carries no order")


def _any_point(X: SpaceExpr, d: Dir) -> Point:
    e = _end(X, d)
    if isinstance(e, Extreme):
        return e.point
    return end_point(X, d, 0)


def end_point(X: SpaceExpr, d: Dir, n: int) -> Point:
    """n-th term of a sequence running into the missing end ``d`` of ``X``."""
    X = _resolve(X)
    match X:
        case HalfOpenSeg(lam) if d is Dir.UP:
            return fundamental(lam, n)
        case Omit():
            return omit_at(X, fundamental(omit_type(X), n))
        case Reorder(inner):
            return approach_point(X, inner.ambient.lam, Dir.DOWN, n)
        case Rev(inner):
            return end_point(inner, d.flip, n)
        case Interval(parent, _, None) if d is Dir.UP:
            return end_point(parent, d, n)
        case OrderedSum(parts):
            i = len(parts) - 1 if d is Dir.UP else 0
            while isinstance(_end(parts[i], d), EmptyEnd):
                i += -1 if d is Dir.UP else 1
            return Tagged(i, end_point(parts[i], d, n))
        case Lex(major, minor):
            ex = _end(major, d)
            if isinstance(ex, Extreme):
                return Pair(ex.point, end_point(minor, d, n))
            return Pair(end_point(major, d, n), _any_point(minor, d))
    raise Unsupported(f"no open end on side {d.value} for {type(X).__name__}")


# -- heights and ranks ----------------------------------------------------------------------


def height(X: SpaceExpr) -> Ordinal:
    X = _resolve(X)
    match X:
        case ClosedSeg(lam) | HalfOpenSeg(lam):
            return lam.leading_exponent
        case Omit():
            return omit_type(X).leading_exponent
        case Reorder(inner):
            _check_reorder(inner)
            h = inner.ambient.lam.leading_exponent
            return max(h, ONE) if _effective_blocks(inner) else h
        case Rev(inner):
            return height(inner)
        case Interval(parent, a, b):
            if not is_well_ordered(parent):
                raise Unsupported("height of an interval needs a well-ordered parent")
            return _interval_type(parent, a, b).leading_exponent
        case OrderedSum(parts):
            return max(height(p) for p in parts)
        case Lex(major, minor):
            return add(height(minor), height(major))
        case Product(x, y):
            return natural_sum(height(x), height(y))
    raise Unsupported(f"no height for {type(X).__name__}")


def _approach(s) -> Ordinal:
    return s.approach if isinstance(s, LimitSide) else ZERO


def cb_rank(X: SpaceExpr, p: Point) -> Ordinal:
    """Cantor-Bendixson rank of ``p``: the delta with p in X^(delta) minus X^(delta+1)."""
    _check(X, p)
    return _cb_rank(X, p)


def _cb_rank(X: SpaceExpr, p: Point) -> Ordinal:
    X = _resolve(X)
    match X:
        case ClosedSeg() | HalfOpenSeg():
            return p.last_exponent
        case Product(x, y):
            return natural_sum(_cb_rank(x, p.first), _cb_rank(y, p.second))
        case Derived(inner, order):
            return left_sub(order, _cb_rank(inner, p))
        case Union():
            raise Unsupported("rank inside a union of subspaces")
    return max(_approach(_side(X, p, Dir.DOWN)), _approach(_side(X, p, Dir.UP)))


def is_isolated(X: SpaceExpr, p: Point, mode: Mode = Mode.ORDER) -> bool:
    _check(X, p)
    if mode is Mode.AMBIENT:
        node = _resolve(X)
        if isinstance(node, Reorder):
            node = node.inner
        if not isinstance(node, Omit):
            raise NoAmbient("ambient-subspace mode needs an omit(...) at the root")
        _tail_free(node)
        return not is_limit(p)
    return _cb_rank(X, p) == ZERO


# -- profiles (existential facts about sides) ------------------------------------------------


@dataclass(frozen=True)
class Profile:
    empty: bool
    has_min: bool
    has_max: bool
    down_lim: bool
    up_lim: bool
    down_imm: bool
    up_imm: bool

    @property
    def has_limit_point(self) -> bool:
        return self.down_lim or self.up_lim


def _seg_profile(lam: Ordinal, closed: bool) -> Profile:
    if closed:
        return Profile(False, True, True, lam >= OMEGA, False, lam >= ONE, lam >= ONE)
    if not lam:
        return Profile(True, False, False, False, False, False, False)
    two = Ordinal.of(2)
    return Profile(False, True, not is_limit(lam), lam > OMEGA, False, lam >= two, lam >= two)


def profile(X: SpaceExpr) -> Profile:
    X = _resolve(X)
    match X:
        case ClosedSeg(lam):
            return _seg_profile(lam, True)
        case HalfOpenSeg(lam):
            return _seg_profile(lam, False)
        case Omit():
            return _seg_profile(omit_type(X), False)
        case Reorder(inner):
            _check_reorder(inner)
            if not _effective_blocks(inner):
                return profile(inner)
            return Profile(False, isinstance(_end(X, Dir.DOWN), Extreme), isinstance(_end(X, Dir.UP), Extreme),
                           _present_limits_exist(inner), False, True, True)
        case Rev(inner):
            q = profile(inner)
            return Profile(q.empty, q.has_max, q.has_min, q.up_lim, q.down_lim, q.up_imm, q.down_imm)
        case Interval(parent, a, b):
            if not is_well_ordered(parent):
                raise Unsupported("profile of an interval needs a well-ordered parent")
            t = _interval_type(parent, a, b)
            return _seg_profile(classify(t)[1], True) if b is not None or not is_limit(t) \
                else _seg_profile(t, False)
        case OrderedSum(parts):
            ps = [profile(p) for p in parts]
            ps = [p for p in ps if not p.empty]
            if not ps:
                return Profile(True, False, False, False, False, False, False)
            down_lim = any(p.down_lim for p in ps)
            down_imm = any(p.down_imm for p in ps)
            up_lim = any(p.up_lim for p in ps)
            up_imm = any(p.up_imm for p in ps)
            for lo, hi in zip(ps, ps[1:]):
                if hi.has_min:
                    down_lim |= not lo.has_max
                    down_imm |= lo.has_max
                if lo.has_max:
                    up_lim |= not hi.has_min
                    up_imm |= hi.has_min
            return Profile(False, ps[0].has_min, ps[-1].has_max, down_lim, up_lim, down_imm, up_imm)
        case Lex(major, minor):
            px, py = profile(major), profile(minor)
            if px.empty or py.empty:
                return Profile(True, False, False, False, False, False, False)
            down_lim = py.down_lim or (py.has_min and (px.down_lim or (px.down_imm and not py.has_max)))
            down_imm = py.down_imm or (py.has_min and py.has_max and px.down_imm)
            up_lim = py.up_lim or (py.has_max and (px.up_lim or (px.up_imm and not py.has_min)))
            up_imm = py.up_imm or (py.has_max and py.has_min and px.up_imm)
            return Profile(False, px.has_min and py.has_min, px.has_max and py.has_max,
                           down_lim, up_lim, down_imm, up_imm)
    raise Unordered(f"{type(X).__name__} carries no order")


def _present_limits_exist(omit: Omit) -> bool:
    top = omit.ambient_max
    lam = omit.ambient.lam
    bound = top if top is not None else lam
    if bound >= mul(OMEGA, OMEGA):
        return True
    k = 1
    while True:
        x = mul(OMEGA, Ordinal.of(k))
        if x > bound or (top is None and not x < lam):
            return False
        if _present(omit, x):
            return True
        k += 1


def has_limit_point(X: SpaceExpr) -> bool:
    X = _resolve(X)
    match X:
        case Product(x, y):
            return not (is_empty(x) or is_empty(y)) and (has_limit_point(x) or has_limit_point(y))
        case Derived() | Union():
            raise Unsupported("discreteness of derived subspaces is decided by rank")
    return profile(X).has_limit_point


def is_empty(X: SpaceExpr) -> bool:
    X = _resolve(X)
    if isinstance(X, Product):
        return is_empty(X.x) or is_empty(X.y)
    return profile(X).empty


# -- enumeration ------------------------------------------------------------------------------


def enumerate_points(X: SpaceExpr, k: int) -> List[Point]:
    """Every point all of whose ordinal coordinates have complexity <= k, in order."""
    return list(_enumerate(X, k))


@lru_cache(maxsize=512)
def _enumerate(X: SpaceExpr, k: int):
    X = _resolve(X)
    ords = ordinals_up_to_complexity(k)
    match X:
        case ClosedSeg(lam):
            return tuple(o for o in ords if o <= lam)
        case HalfOpenSeg(lam):
            return tuple(o for o in ords if o < lam)
        case Omit():
            return tuple(o for o in _enumerate(X.ambient, k) if X.contains_ambient(o))
        case Reorder(inner):
            return tuple(sort_points(X, _enumerate(inner, k)))
        case Rev(inner):
            return tuple(reversed(_enumerate(inner, k)))
        case Interval(parent, _, _):
            return tuple(p for p in _enumerate(parent, k) if member(X, p))
        case OrderedSum(parts):
            return tuple(Tagged(i, p) for i, part in enumerate(parts) for p in _enumerate(part, k))
        case Lex(major, minor):
            ys = _enumerate(minor, k)
            return tuple(Pair(a, b) for a in _enumerate(major, k) for b in ys)
        case Product(x, y):
            ys = _enumerate(y, k)
            return tuple(Pair(a, b) for a in _enumerate(x, k) for b in ys)
        case Derived(inner, _):
            return tuple(p for p in _enumerate(inner, k) if member(X, p))
        case Union(parts):
            seen, out = set(), []
            for part in parts:
                for p in _enumerate(part, k):
                    if p not in seen:
                        seen.add(p)
                        out.append(p)
            return tuple(out)
    raise ShapeMismatch(f"cannot enumerate {X!r}")


# -- neighbourhood bases -------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderNbhd:
    """Order-convex neighbourhood of ``center``; a None bound means the side is
    closed at ``center`` itself."""
    space: SpaceExpr
    center: Point
    lo: Optional[Point]
    lo_incl: bool
    hi: Optional[Point]
    hi_incl: bool

    def contains(self, q: Point) -> bool:
        X = self.space
        if not member(X, q):
            return False
        lo, lo_closed = (self.center, True) if self.lo is None else (self.lo, self.lo_incl)
        hi, hi_closed = (self.center, True) if self.hi is None else (self.hi, self.hi_incl)
        c_lo = compare_points(X, lo, q)
        c_hi = compare_points(X, q, hi)
        return (c_lo is Cmp.LT or (c_lo is Cmp.EQ and lo_closed)) and \
            (c_hi is Cmp.LT or (c_hi is Cmp.EQ and hi_closed))

    def __str__(self):
        lo = f"[{self.center}" if self.lo is None else ("[" if self.lo_incl else "(") + str(self.lo)
        hi = f"{self.center}]" if self.hi is None else str(self.hi) + ("]" if self.hi_incl else ")")
        return f"{lo}, {hi}"


@dataclass(frozen=True)
class RectNbhd:
    first: object
    second: object

    def contains(self, q: Point) -> bool:
        return isinstance(q, Pair) and self.first.contains(q.first) and self.second.contains(q.second)

    def __str__(self):
        return f"{self.first} x {self.second}"


@dataclass(frozen=True)
class SubNbhd:
    space: SpaceExpr
    inner: object

    def contains(self, q: Point) -> bool:
        return member(self.space, q) and self.inner.contains(q)

    def __str__(self):
        return str(self.inner)


def basis(X: SpaceExpr, p: Point, n: int):
    """The n-th member of the canonical decreasing local base at ``p``."""
    _check(X, p)
    return _basis(X, p, n)


def _basis(X: SpaceExpr, p: Point, n: int):
    R = _resolve(X)
    match R:
        case Product(x, y):
            return RectNbhd(_basis(x, p.first, n), _basis(y, p.second, n))
        case Derived(inner, _):
            return SubNbhd(R, _basis(inner, p, n))
        case Union(parts):
            raise Unsupported("basis inside a union of subspaces")
    bounds = []
    for d in (Dir.DOWN, Dir.UP):
        s = _side(R, p, d)
        if isinstance(s, LimitSide):
            q = approach_point(R, p, d, n)
            closed = not isinstance(_side(R, q, d), LimitSide)
            bounds.append((q, closed))
        else:
            bounds.append((None, True))
    (lo, lo_incl), (hi, hi_incl) = bounds
    return OrderNbhd(R, p, lo, lo_incl, hi, hi_incl)


# -- derived sets ------------------------------------------------------------------------------------


def derived_expr(X: SpaceExpr) -> SpaceExpr:
    """Expression for the set of non-isolated points of ``X``."""
    match X:
        case Product(x, y):
            return Union((Product(derived_expr(x), y), Product(x, derived_expr(y))))
        case Derived(inner, order):
            return Derived(inner, add(order, ONE))
        case Union(parts):
            out = []
            for part in parts:
                d = derived_expr(part)
                for q in (d.parts if isinstance(d, Union) else (d,)):
                    if q not in out:
                        out.append(q)
            return Union(tuple(out))
    return Derived(X, ONE)


def cb_derivative(X: SpaceExpr, delta: Ordinal) -> SpaceExpr:
    """The delta-th Cantor-Bendixson derivative.  Finite orders on products
    iterate the product rule for derived sets."""
    if not delta:
        return X
    if isinstance(X, Product) and delta.is_finite:
        out = X
        for _ in range(int(delta)):
            out = derived_expr(out)
        return out
    return Derived(X, delta)
