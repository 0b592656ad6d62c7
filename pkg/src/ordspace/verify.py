"""Certification of piecewise homeomorphisms on finite exhaustions.

A :class:`PiecewiseMap` is a bijection assembled from countably many
stage pieces.  Each :class:`StageFamily` describes one indexed family of
pieces (the n-th vertical, the alpha-th strip, ...) by locating points on
both sides and evaluating the canonical order isomorphisms.  Continuity is
checked at limit points through the canonical local bases and a declared
modulus ``m`` with ``f(B(p, m(n))) <= B(f(p), n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .invariants import NotCompact, is_compact, ms_invariant
from .ordinal import ZERO, Ordinal, complexity
from .space import (
    Dir, EndpointSide, Immediate, Interval, LGamma, LimitSide, OrderNbhd, Pair, Point, Product,
    RectNbhd, SpaceExpr, Tagged, Unsupported, approach_point, basis, cb_rank, enumerate_points,
    expand_lgamma, member, neighbor,
)

__all__ = [
    "NoModulus", "StagePiece", "StageFamily", "PiecewiseMap", "Claim", "BijectionReport",
    "ContinuityResult", "Certificate", "check_bijection", "check_continuity_at", "certify",
    "point_complexity", "corrupt", "symbolic_corner_inclusion", "FORWARD", "INVERSE",
]

FORWARD, INVERSE = "forward", "inverse"
_SCAN_CAP = 10_000


class NoModulus(Exception):
    pass


class NotCovered(Exception):
    pass


def point_complexity(p: Point) -> int:
    match p:
        case Ordinal():
            return complexity(p)
        case Pair(a, b):
            return point_complexity(a) + point_complexity(b)
        case Tagged(i, q):
            return i + point_complexity(q)
    raise TypeError(p)


# -- map descriptors ----------------------------------------------------------------


@dataclass(frozen=True)
class StagePiece:
    """One piece: its domain in the source and codomain in the target."""
    label: str
    domain: SpaceExpr
    codomain: SpaceExpr


@dataclass(frozen=True)
class StageFamily:
    """An indexed family of pieces with canonical order isomorphisms.

    ``box(i)`` returns the (low, high) corners of the i-th domain, a product
    of closed intervals; ``block(i)`` the (low, high) ends of the i-th
    codomain, an order-convex set of the target.  Both are optional; when
    present and ``monotone`` holds (corners and blocks increase with i) the
    corner continuity checks can run symbolically.
    """
    label: str
    locate: Callable[[Point], Optional[int]]
    forward: Callable[[int, Point], Point]
    locate_image: Callable[[Point], Optional[int]]
    inverse: Callable[[int, Point], Point]
    box: Optional[Callable[[int], Tuple[Point, Point]]] = None
    block: Optional[Callable[[int], Tuple[Point, Point]]] = None
    monotone: bool = False


Modulus = Callable[[int], int]


@dataclass(frozen=True)
class Claim:
    """A named symbolic inclusion proved separately from the basis checks."""
    label: str
    point: Point
    direction: str
    check: Callable[[int], Tuple[bool, str]]


@dataclass
class PiecewiseMap:
    id: str
    source: SpaceExpr
    target: SpaceExpr
    families: Tuple[StageFamily, ...]
    exceptional: Tuple[Tuple[Point, Point], ...] = ()
    moduli: Dict[Tuple[Point, str], Modulus] = field(default_factory=dict)
    default_modulus: Optional[Callable[[Point, str], Modulus]] = None
    claims: Tuple[Claim, ...] = ()
    overrides: Dict[Point, Point] = field(default_factory=dict)  # forward-only, for negative controls

    def matches(self, p: Point) -> List[str]:
        hits = [f"exceptional {p}" for a, _ in self.exceptional if a == p]
        for fam in self.families:
            i = fam.locate(p)
            if i is not None:
                hits.append(f"{fam.label}[{i}]")
        return hits

    def __call__(self, p: Point) -> Point:
        if p in self.overrides:
            return self.overrides[p]
        for a, b in self.exceptional:
            if a == p:
                return b
        for fam in self.families:
            i = fam.locate(p)
            if i is not None:
                return fam.forward(i, p)
        raise NotCovered(f"{p} lies in no piece")

    def inverse(self, q: Point) -> Point:
        for a, b in self.exceptional:
            if b == q:
                return a
        for fam in self.families:
            i = fam.locate_image(q)
            if i is not None:
                return fam.inverse(i, q)
        raise NotCovered(f"{q} lies in no piece image")

    def pieces(self, count_per_family: int) -> List[StagePiece]:
        """Descriptors of the first few pieces of every family."""
        out = []
        for fam in self.families:
            if fam.box is None or fam.block is None:
                continue
            for i in range(count_per_family):
                (lo, hi), (blo, bhi) = fam.box(i), fam.block(i)
                out.append(StagePiece(f"{fam.label}[{i}]", _box_expr(self.source, lo, hi),
                                      Interval(self.target, blo, bhi)))
        return out

    def modulus(self, p: Point, direction: str) -> Modulus:
        m = self.moduli.get((p, direction))
        if m is None and self.default_modulus is not None:
            m = self.default_modulus(p, direction)
        if m is None:
            raise NoModulus(f"no modulus declared at {p} ({direction})")
        return m


def _resolve(X):
    while isinstance(X, LGamma):
        X = expand_lgamma(X)
    return X


def _box_expr(source, lo, hi):
    S = _resolve(source)
    if isinstance(S, Product):
        return Product(Interval(S.x, lo.first, hi.first), Interval(S.y, lo.second, hi.second))
    return Interval(S, lo, hi)


def corrupt(f: PiecewiseMap, p: Point, q: Point) -> PiecewiseMap:
    """Negative control: swap the images of ``p`` and ``q`` in the forward
    direction only."""
    g = PiecewiseMap(f"{f.id}-corrupted", f.source, f.target, f.families, f.exceptional,
                     dict(f.moduli), f.default_modulus, f.claims)
    fp, fq = f(p), f(q)
    g.overrides = {p: fq, q: fp}
    return g


# -- bijection -----------------------------------------------------------------------


@dataclass
class BijectionReport:
    checked_source: int
    checked_target: int
    orphans: List[str] = field(default_factory=list)
    problems: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.orphans and not self.problems

    def to_json(self):
        return {"checked": {"source": self.checked_source, "target": self.checked_target},
                "orphans": list(self.orphans), "problems": list(self.problems)}


def check_bijection(f: PiecewiseMap, k: int) -> BijectionReport:
    src = enumerate_points(f.source, k)
    tgt = enumerate_points(f.target, k)
    rep = BijectionReport(len(src), len(tgt))
    seen: Dict[Point, Point] = {}
    for p in src:
        hits = f.matches(p)
        if len(hits) != 1:
            rep.problems.append(f"{p} matched {len(hits)} pieces: {', '.join(hits) or 'none'}")
            if not hits:
                continue
        q = f(p)
        if not member(f.target, q):
            rep.problems.append(f"image {q} of {p} is not in the target")
            continue
        if q in seen:
            rep.problems.append(f"{seen[q]} and {p} both map to {q}")
        seen[q] = p
        try:
            back = f.inverse(q)
        except NotCovered:
            back = None
        if back != p:
            rep.problems.append(f"round trip {p} -> {q} -> {back}")
    for q in tgt:
        try:
            p = f.inverse(q)
        except NotCovered:
            rep.orphans.append(f"{q} has no preimage")
            continue
        if not member(f.source, p) or f(p) != q:
            rep.orphans.append(f"{q} has no preimage (inverse gives {p}, which maps to {f(p)})")
    return rep


# -- continuity ---------------------------------------------------------------------


@dataclass
class ContinuityResult:
    point: str
    direction: str
    n_max: int
    mode: str  # "vacuous" | "symbolic" | "sampled"
    passed: bool
    witness: Optional[str] = None
    label: Optional[str] = None

    def to_json(self):
        out = {"point": self.point, "direction": self.direction, "n_max": self.n_max,
               "mode": self.mode, "pass": self.passed}
        if self.witness:
            out["witness"] = self.witness
        if self.label:
            out["label"] = self.label
        return out


def _local(S: SpaceExpr, p: Point, n: int, r: int) -> List[Point]:
    """Points near ``p``: canonical approach sequences, recursively."""
    S = _resolve(S)
    if isinstance(S, Product):
        return [Pair(a, b) for a in _local(S.x, p.first, n, r) for b in _local(S.y, p.second, n, r)]
    if not S.ordered:
        return [p]
    out = [p]
    if r == 0:
        return out
    for d in (Dir.DOWN, Dir.UP):
        s = neighbor(S, p, d)
        if isinstance(s, LimitSide):
            for j in range(n, n + 3):
                q = approach_point(S, p, d, j)
                out.extend(_local(S, q, j, r - 1))
        elif isinstance(s, Immediate):
            out.append(s.point)
    return out


def _final(nb) -> bool:
    """True when ``nb`` reaches the top of its space (a final segment or a
    product of final segments)."""
    if isinstance(nb, RectNbhd):
        return _final(nb.first) and _final(nb.second)
    if isinstance(nb, OrderNbhd):
        return nb.hi is None and isinstance(neighbor(nb.space, nb.center, Dir.UP), EndpointSide)
    return False


def symbolic_corner_inclusion(f: PiecewiseMap, direction: str, U, V) -> Optional[Tuple[bool, str]]:
    """Interval-arithmetic inclusion g(U) <= V at the top corner.

    Valid when U and V are final segments (products of them on the product
    side) and every family is monotone with boxes and blocks: a piece meets
    U exactly when its top corner lies in U, and once a piece lies wholly in
    U with image in V every later piece does too.
    """
    if not (_final(U) and _final(V)):
        return None
    if not all(fam.monotone and fam.box and fam.block for fam in f.families):
        return None
    for a, b in f.exceptional:
        src, dst = (a, b) if direction == FORWARD else (b, a)
        if U.contains(src) and not V.contains(dst):
            return False, f"exceptional {src} -> {dst} escapes {V}"
    for fam in f.families:
        for i in range(_SCAN_CAP):
            box, blk = fam.box(i), fam.block(i)
            dom, img = (box, blk) if direction == FORWARD else (blk, box)
            if U.contains(dom[1]) and not (V.contains(img[0]) and V.contains(img[1])):
                return False, f"{fam.label}[{i}] meets {U} but its image leaves {V}"
            if U.contains(dom[0]) and V.contains(img[0]):
                break
        else:
            return None
    return True, ""


def check_continuity_at(f: PiecewiseMap, p: Point, n_max: int, k: int,
                        direction: str = FORWARD) -> ContinuityResult:
    S, T = (f.source, f.target) if direction == FORWARD else (f.target, f.source)
    g = f if direction == FORWARD else f.inverse
    if cb_rank(S, p) == ZERO:
        return ContinuityResult(str(p), direction, n_max, "vacuous", True)
    m = f.modulus(p, direction)
    gp = g(p)
    pool = enumerate_points(S, k)
    symbolic = True
    for n in range(n_max + 1):
        U, V = basis(S, p, m(n)), basis(T, gp, n)
        sym = symbolic_corner_inclusion(f, direction, U, V)
        if sym is None:
            symbolic = False
        elif not sym[0]:
            return ContinuityResult(str(p), direction, n_max, "symbolic", False, f"n={n}: {sym[1]}")
        for q in list(pool) + _local(S, p, m(n), 2):
            if U.contains(q) and not V.contains(g(q)):
                return ContinuityResult(str(p), direction, n_max, "sampled", False,
                                        f"n={n}: {q} in {U} but {g(q)} not in {V}")
    return ContinuityResult(str(p), direction, n_max, "symbolic" if symbolic else "sampled", True)


# -- certificates --------------------------------------------------------------------


@dataclass
class Certificate:
    id: str
    k: int
    n_max: int
    bijection: BijectionReport
    continuity: List[ContinuityResult]
    invariant_src: Optional[str]
    invariant_tgt: Optional[str]

    @property
    def oracle_equal(self) -> Optional[bool]:
        if self.invariant_src is None or self.invariant_tgt is None:
            return None
        return self.invariant_src == self.invariant_tgt

    @property
    def passed(self) -> bool:
        return (self.bijection.ok and all(c.passed for c in self.continuity)
                and self.oracle_equal is not False)

    def failures(self) -> List[str]:
        out = [f"bijection: {w}" for w in self.bijection.problems + self.bijection.orphans]
        out += [f"continuity {c.direction} at {c.point}: {c.witness}" for c in self.continuity if not c.passed]
        if self.oracle_equal is False:
            out.append(f"oracle: {self.invariant_src} != {self.invariant_tgt}")
        return out

    def to_json(self):
        return {
            "id": self.id,
            "depths": {"k": self.k, "n_max": self.n_max},
            "bijection": self.bijection.to_json(),
            "continuity": [c.to_json() for c in self.continuity],
            "oracle": {"invariant_src": self.invariant_src, "invariant_tgt": self.invariant_tgt,
                       "equal": self.oracle_equal},
            "pass": self.passed,
        }


def _invariant(X) -> Optional[str]:
    try:
        if not is_compact(X):
            return None
        return str(ms_invariant(X))
    except (NotCompact, Unsupported):
        return None


def certify(f: PiecewiseMap, k: int = 5, n_max: int = 8) -> Certificate:
    """Run every check; points are visited in enumeration order, so the
    certificate is reproducible."""
    bij = check_bijection(f, k)
    results = []
    corners = [a for a, _ in f.exceptional]
    for direction, space, extra in ((FORWARD, f.source, corners),
                                    (INVERSE, f.target, [b for _, b in f.exceptional])):
        points = list(extra) + [p for p in enumerate_points(space, k) if p not in extra]
        for p in points:
            if cb_rank(space, p) == ZERO:
                continue
            try:
                results.append(check_continuity_at(f, p, n_max, k, direction))
            except NotCovered as e:
                results.append(ContinuityResult(str(p), direction, n_max, "sampled", False, str(e)))
    for claim in f.claims:
        bad = next(((n, why) for n in range(n_max + 1) for ok, why in [claim.check(n)] if not ok), None)
        results.append(ContinuityResult(str(claim.point), claim.direction, n_max, "symbolic", bad is None,
                                        None if bad is None else f"n={bad[0]}: {bad[1]}", claim.label))
    return Certificate(f.id, k, n_max, bij, results, _invariant(f.source), _invariant(f.target))
