"""Space expressions, points and removal predicates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple, Union

from ..ordinal import OMEGA, Ordinal, is_limit, mul

__all__ = [
    "SpaceError", "ShapeMismatch", "NotMember", "Unordered", "NoAmbient", "Unsupported",
    "Pair", "Tagged", "Point",
    "Pred", "InRange", "IsIsolated", "IsLimit", "LGammaCategory", "ExplicitSet", "And", "Or", "Not",
    "holds",
    "SpaceExpr", "ClosedSeg", "HalfOpenSeg", "Interval", "Omit", "Rev", "OrderedSum", "Lex",
    "Product", "Reorder", "LGamma", "Derived", "Union", "UNCOUNTABLE",
]


class SpaceError(Exception):
    """Base class for space-algebra errors."""


class ShapeMismatch(SpaceError):
    pass


class NotMember(SpaceError):
    pass


class Unordered(SpaceError):
    pass


class NoAmbient(SpaceError):
    pass


class Unsupported(SpaceError):
    pass


# -- points -------------------------------------------------------------------


@dataclass(frozen=True)
class Pair:
    first: "Point"
    second: "Point"

    def __str__(self):
        return f"<{self.first},{self.second}>"


@dataclass(frozen=True)
class Tagged:
    index: int
    point: "Point"

    def __str__(self):
        return f"#{self.index}:{self.point}"


Point = Union[Ordinal, Pair, Tagged]


# -- removal predicates over ambient ordinals ----------------------------------


class Pred:
    pass


@dataclass(frozen=True)
class InRange(Pred):
    """Closed ordinal interval ``[lo, hi]``."""
    lo: Ordinal
    hi: Ordinal


@dataclass(frozen=True)
class IsIsolated(Pred):
    pass


@dataclass(frozen=True)
class IsLimit(Pred):
    pass


@dataclass(frozen=True)
class LGammaCategory(Pred):
    """Membership in L_gamma: the maximum of (gamma*gamma)+1, a point whose
    closed initial stretch is a copy of gamma+1, or an isolated point."""
    gamma: Ordinal


@dataclass(frozen=True)
class ExplicitSet(Pred):
    items: FrozenSet[Ordinal]


@dataclass(frozen=True)
class And(Pred):
    left: Pred
    right: Pred


@dataclass(frozen=True)
class Or(Pred):
    left: Pred
    right: Pred


@dataclass(frozen=True)
class Not(Pred):
    inner: Pred


def _gamma_log(gamma: Ordinal) -> Ordinal:
    if len(gamma.terms) != 1 or gamma.terms[0][1] != 1 or not gamma.terms[0][0]:
        raise Unsupported(f"gamma={gamma} is not an infinite power of w")
    return gamma.terms[0][0]


def holds(pred: Pred, x: Ordinal) -> bool:
    match pred:
        case InRange(lo, hi):
            return lo <= x <= hi
        case IsIsolated():
            return not is_limit(x)
        case IsLimit():
            return is_limit(x)
        case LGammaCategory(gamma):
            if x == mul(gamma, gamma):
                return True
            if not is_limit(x):
                return True
            return x.last_exponent == _gamma_log(gamma)
        case ExplicitSet(items):
            return x in items
        case And(a, b):
            return holds(a, x) and holds(b, x)
        case Or(a, b):
            return holds(a, x) or holds(b, x)
        case Not(a):
            return not holds(a, x)
    raise TypeError(f"unknown predicate {pred!r}")


def removes_finitely_many_successors(pred: Pred, negate: bool = False) -> bool:
    """Conservative test: every w-block loses only finitely many successors."""
    match pred:
        case Not(a):
            return removes_finitely_many_successors(a, not negate)
        case And(a, b) if not negate:
            return removes_finitely_many_successors(a) or removes_finitely_many_successors(b)
        case Or(a, b) if negate:
            return removes_finitely_many_successors(a, True) or removes_finitely_many_successors(b, True)
        case And(a, b):
            return removes_finitely_many_successors(a, True) and removes_finitely_many_successors(b, True)
        case Or(a, b):
            return removes_finitely_many_successors(a) and removes_finitely_many_successors(b)
        case IsLimit():
            return not negate
        case IsIsolated():
            return negate
        case LGammaCategory():
            return negate
        case ExplicitSet():
            return not negate
        case InRange(lo, hi):
            return not negate and hi < lo
    return False


def removed_limits_if_finite(pred: Pred, negate: bool = False):
    """The finite set of limit ordinals removed by ``pred``, or None when it
    cannot be shown finite.  Returned as a predicate-free frozenset, or the
    sentinel ``frozenset()`` when no limit is removed."""
    match pred:
        case Not(a):
            return removed_limits_if_finite(a, not negate)
        case IsIsolated():
            return frozenset() if not negate else None
        case IsLimit():
            return frozenset() if negate else None
        case ExplicitSet(items):
            return None if negate else frozenset(i for i in items if is_limit(i))
        case LGammaCategory(gamma):
            if negate and gamma == OMEGA:
                return frozenset()
            return None
        case And(a, b) if not negate:
            left, right = removed_limits_if_finite(a), removed_limits_if_finite(b)
            if left is not None and right is not None:
                return left & right
            return left if left is not None else right
        case Or(a, b) if not negate:
            left, right = removed_limits_if_finite(a), removed_limits_if_finite(b)
            return None if left is None or right is None else left | right
        case And(a, b):
            return removed_limits_if_finite(Or(Not(a), Not(b)))
        case Or(a, b):
            return removed_limits_if_finite(And(Not(a), Not(b)))
    return None


# -- spaces -------------------------------------------------------------------


class SpaceExpr:
    ordered = True


def _require_ordered(*children):
    for c in children:
        if not getattr(c, "ordered", False):
            raise Unordered(f"{type(c).__name__} cannot appear under an ordered constructor")


@dataclass(frozen=True)
class ClosedSeg(SpaceExpr):
    lam: Ordinal


@dataclass(frozen=True)
class HalfOpenSeg(SpaceExpr):
    lam: Ordinal


@dataclass(frozen=True)
class Interval(SpaceExpr):
    """Closed interval [a, b] of ``parent``; ``b=None`` runs to the top."""
    parent: SpaceExpr
    a: Point
    b: Optional[Point]

    def __post_init__(self):
        _require_ordered(self.parent)


@dataclass(frozen=True)
class Omit(SpaceExpr):
    ambient: SpaceExpr
    removed: Pred

    def __post_init__(self):
        if not isinstance(self.ambient, (ClosedSeg, HalfOpenSeg)):
            raise ShapeMismatch("omit() needs an ordinal segment as ambient")

    @property
    def ambient_max(self):
        amb = self.ambient
        if isinstance(amb, ClosedSeg):
            return amb.lam
        if amb.lam and not is_limit(amb.lam):
            from ..ordinal import classify
            return classify(amb.lam)[1]
        return None

    def contains_ambient(self, x: Ordinal) -> bool:
        amb = self.ambient
        inside = x <= amb.lam if isinstance(amb, ClosedSeg) else x < amb.lam
        return inside and not holds(self.removed, x)


@dataclass(frozen=True)
class Rev(SpaceExpr):
    inner: SpaceExpr

    def __post_init__(self):
        _require_ordered(self.inner)


@dataclass(frozen=True)
class OrderedSum(SpaceExpr):
    parts: Tuple[SpaceExpr, ...]

    def __post_init__(self):
        if not self.parts:
            raise ShapeMismatch("ordered sum needs at least one part")
        object.__setattr__(self, "parts", tuple(self.parts))
        _require_ordered(*self.parts)


@dataclass(frozen=True)
class Lex(SpaceExpr):
    """Lexicographic product; the first coordinate is major."""
    major: SpaceExpr
    minor: SpaceExpr

    def __post_init__(self):
        _require_ordered(self.major, self.minor)


@dataclass(frozen=True)
class Product(SpaceExpr):
    x: SpaceExpr
    y: SpaceExpr
    ordered = False


@dataclass(frozen=True)
class Reorder(SpaceExpr):
    inner: Omit

    def __post_init__(self):
        if not isinstance(self.inner, Omit):
            raise ShapeMismatch("reorder() applies only to omit(...) over an ordinal segment")


class _Uncountable:
    """Marker for an uncountable cardinal; never enumerable."""

    def __repr__(self):
        return "UNCOUNTABLE"

    def __str__(self):
        return "w1"


UNCOUNTABLE = _Uncountable()


@dataclass(frozen=True)
class LGamma(SpaceExpr):
    gamma: object  # Ordinal or UNCOUNTABLE


@dataclass(frozen=True)
class Derived(SpaceExpr):
    """The ``order``-th Cantor-Bendixson derivative of ``inner`` (subspace)."""
    inner: SpaceExpr
    order: Ordinal
    ordered = False


@dataclass(frozen=True)
class Union(SpaceExpr):
    """Finite union of subspaces of one ambient space."""
    parts: Tuple[SpaceExpr, ...]
    ordered = False
