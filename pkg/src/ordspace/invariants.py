"""Cantor-Bendixson analysis and the homeomorphism oracle.

Compact countable spaces are classified up to homeomorphism by the pair
``(rank, degree)``: the last nonempty Cantor-Bendixson derivative is finite
with ``degree`` points.  Two independent routes compute it: a closed-form
rule from order types and product structure, and iterated derivatives
counted on finite exhaustions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .ordinal import ZERO, Ordinal, is_limit, natural_sum
from .space import (
    ClosedSeg, Derived, HalfOpenSeg, Interval, Lex, LGamma, Omit, OrderedSum, Point, Product,
    Reorder, Rev, SpaceExpr, Union, Unsupported, cb_derivative, cb_rank, enumerate_points,
    expand_lgamma, has_limit_point, height, is_well_ordered, member, order_type,
)
from .space.query import _effective_blocks

__all__ = [
    "MSInvariant", "HomeoVerdict", "NotCompact", "Discreteness",
    "order_type", "cb_derivative", "ms_invariant", "is_compact", "is_discrete",
    "cardinality", "homeo_decide", "DEFAULT_DEPTH",
]

DEFAULT_DEPTH = 6


class NotCompact(Unsupported):
    pass


@dataclass(frozen=True)
class MSInvariant:
    rank: Ordinal
    degree: int

    def __str__(self):
        return f"({self.rank},{self.degree})"

    def to_json(self):
        return {"rank": str(self.rank), "degree": self.degree}


# -- compactness, discreteness, size --------------------------------------------


def _resolve(X):
    while isinstance(X, LGamma):
        X = expand_lgamma(X)
    return X


def is_compact(X: SpaceExpr) -> bool:
    X = _resolve(X)
    match X:
        case ClosedSeg():
            return True
        case HalfOpenSeg(lam):
            return not is_limit(lam)
        case Omit():
            return not is_limit(order_type(X))
        case Reorder(inner):
            return False if _effective_blocks(inner) else is_compact(inner)
        case Rev(inner):
            return is_compact(inner)
        case Interval(parent, _, None):
            if is_well_ordered(parent):
                return not is_limit(order_type(X))
            raise Unsupported("compactness of an open-topped interval in a non-well-ordered space")
        case Interval(parent, _, _):
            if is_well_ordered(parent) or is_compact(parent):
                return True
            raise Unsupported("compactness of an interval in a non-compact, non-well-ordered space")
        case OrderedSum(parts):
            return all(is_compact(p) for p in parts)
        case Lex(a, b) | Product(a, b):
            return cardinality(a) == 0 or cardinality(b) == 0 or (is_compact(a) and is_compact(b))
        case Derived(inner, _):
            if is_compact(inner):
                return True
            raise Unsupported("compactness of a derived set of a non-compact space")
        case Union(parts):
            return all(is_compact(p) for p in parts)
    raise Unsupported(f"compactness of {type(X).__name__}")


def cardinality(X: SpaceExpr) -> Optional[int]:
    """Number of points, or None for countably infinite."""
    X = _resolve(X)
    match X:
        case Product(a, b) | Lex(a, b):
            ca, cb = cardinality(a), cardinality(b)
            if ca == 0 or cb == 0:
                return 0
            return None if ca is None or cb is None else ca * cb
        case OrderedSum(parts):
            sizes = [cardinality(p) for p in parts]
            return None if None in sizes else sum(sizes)
        case Rev(inner):
            return cardinality(inner)
    t = order_type(X) if is_well_ordered(X) else None
    if t is None:
        return None
    return int(t) if t.is_finite else None


@dataclass(frozen=True)
class Discreteness:
    discrete: bool
    witness: Optional[Point] = None

    def __bool__(self):
        return self.discrete


def is_discrete(X: SpaceExpr, max_depth: int = 8) -> Discreteness:
    """Structural decision; on failure a concrete non-isolated point is found
    by scanning growing exhaustions."""
    if not has_limit_point(X):
        return Discreteness(True)
    for k in range(max_depth + 1):
        for p in enumerate_points(X, k):
            if cb_rank(X, p) > ZERO:
                return Discreteness(False, p)
    return Discreteness(False)


# -- Mazurkiewicz-Sierpinski invariant ------------------------------------------------


def _leading_rule(X: SpaceExpr) -> Optional[MSInvariant]:
    X = _resolve(X)
    if is_well_ordered(X):
        t = order_type(X)
        if not t or is_limit(t):
            return None
        beta = Ordinal(t.terms[:-1] + (((ZERO, t.terms[-1][1] - 1),) if t.terms[-1][1] > 1 else ()))
        if beta.is_finite:
            return MSInvariant(ZERO, int(t))
        return MSInvariant(beta.leading_exponent, beta.leading_coefficient)
    match X:
        case Product(a, b):
            ia, ib = _leading_rule(a), _leading_rule(b)
            if ia is None or ib is None:
                return None
            return MSInvariant(natural_sum(ia.rank, ib.rank), ia.degree * ib.degree)
        case Rev(inner):
            return _leading_rule(inner)
        case OrderedSum(parts):
            invs = [_leading_rule(p) for p in parts if cardinality(p) != 0]
            if not invs or None in invs:
                return None
            top = max(i.rank for i in invs)
            return MSInvariant(top, sum(i.degree for i in invs if i.rank == top))
    return None


def _iterated(X: SpaceExpr, depth: int, max_order: int = 32) -> MSInvariant:
    def levels(k):
        pts = enumerate_points(X, k)
        last, delta = None, 0
        while delta <= max_order:
            level = [p for p in pts if member(cb_derivative(X, Ordinal.of(delta)), p)]
            if not level:
                return last, delta - 1
            last = level
            delta += 1
        raise Unsupported("Cantor-Bendixson rank is not finite; iterated route gives up")

    base, rank = levels(depth)
    for extra in range(1, 5):
        again, rank2 = levels(depth + extra)
        if rank2 == rank and again == base:
            return MSInvariant(Ordinal.of(rank), len(base))
        base, rank = again, rank2
    raise Unsupported("top derived level did not stabilise on the exhaustions tried")


def ms_invariant(X: SpaceExpr, method: str = "auto", depth: int = DEFAULT_DEPTH) -> MSInvariant:
    """``method``: "leading" (closed form), "iterate" (derivatives on
    exhaustions) or "auto" (closed form when available)."""
    if not is_compact(X):
        raise NotCompact("the invariant is defined for compact spaces only")
    if method in ("auto", "leading"):
        inv = _leading_rule(X)
        if inv is not None:
            return inv
        if method == "leading":
            raise Unsupported("no closed-form rule for this expression")
    return _iterated(X, depth)


# -- homeomorphism oracle ----------------------------------------------------------------


@dataclass(frozen=True)
class HomeoVerdict:
    verdict: str  # "Yes" | "No" | "Unknown"
    invariant: Optional[MSInvariant] = None
    witness: Optional[str] = None
    reason: str = ""
    depths: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict == "Yes"

    def to_json(self):
        out = {"verdict": self.verdict, "depths": dict(self.depths)}
        if self.invariant is not None:
            out["invariant"] = self.invariant.to_json()
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason:
            out["reason"] = self.reason
        return out


def _population_witness(X, Y, depth):
    """A point of X of rank >= d while every rank in Y stays below d."""
    try:
        hy = height(Y)
    except Unsupported:
        return None
    for p in enumerate_points(X, depth):
        r = cb_rank(X, p)
        if r > hy:
            return p, r, hy
    return None


def homeo_decide(X: SpaceExpr, Y: SpaceExpr, depth: int = DEFAULT_DEPTH) -> HomeoVerdict:
    depths = {"depth": depth}
    cx, cy = is_compact(X), is_compact(Y)
    if cx and cy:
        ix, iy = ms_invariant(X, depth=depth), ms_invariant(Y, depth=depth)
        if ix == iy:
            return HomeoVerdict("Yes", ix, reason="equal (rank, degree) of compact countable spaces",
                                depths=depths)
        return HomeoVerdict("No", witness=f"invariant {ix} != {iy}", reason="ms-invariant", depths=depths)
    dx, dy = is_discrete(X, depth), is_discrete(Y, depth)
    if dx.discrete != dy.discrete:
        side, w = ("first", dx.witness) if not dx.discrete else ("second", dy.witness)
        return HomeoVerdict("No", witness=f"{w} is non-isolated in the {side} space; the other is discrete",
                            reason="discreteness", depths=depths)
    if cx != cy:
        return HomeoVerdict("No", witness=f"{'first' if cx else 'second'} space is compact, the other is not",
                            reason="compactness", depths=depths)
    nx, ny = cardinality(X), cardinality(Y)
    if nx != ny:
        return HomeoVerdict("No", witness=f"cardinalities {nx or 'countably infinite'} vs "
                                          f"{ny or 'countably infinite'}", reason="cardinality", depths=depths)
    if dx.discrete:
        return HomeoVerdict("Yes", reason="discrete spaces of equal countable cardinality", depths=depths)
    for a, b, side in ((X, Y, "first"), (Y, X, "second")):
        found = _population_witness(a, b, depth)
        if found:
            p, r, h = found
            return HomeoVerdict("No", witness=f"{p} has rank {r} in the {side} space; the other has no "
                                              f"point of rank above {h}",
                                reason="derived-set population", depths=depths)
    return HomeoVerdict("Unknown", reason="no listed discriminator applies", depths=depths)
