"""The explicit homeomorphisms between Cartesian and lexicographic squares.

Everything is instantiated at gamma = w, where L = L_w is the segment
[0, w^2] and its blocks are I_0 = [0, w] and I_c = [w*c+1, w*(c+1)] for
c >= 1.  Every stage piece is sent onto its target copy by the canonical
order isomorphism, so all maps are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

from .invariants import HomeoVerdict, homeo_decide, is_discrete
from .ordinal import OMEGA, ONE, ZERO, Ordinal, add, left_sub, mul, nat
from .space import (
    And, ClosedSeg, ExplicitSet, HalfOpenSeg, InRange, Interval, IsIsolated, LGamma, Lex, Not, Omit,
    Or, OrderedSum, OrderNbhd, Pair, Product, Reorder, Rev, SpaceError, SpaceExpr, Unsupported, basis,
    cb_rank, enumerate_points, is_empty, omit_position, order_type,
)
from .space.query import omit_at
from .verify import (
    FORWARD, INVERSE, Claim, PiecewiseMap, StageFamily, point_complexity, symbolic_corner_inclusion,
)

__all__ = [
    "PairPartition", "pair_partition", "block_of", "block_ends", "iota", "iota_inv",
    "square", "square_inv", "convseq_map", "square_map_lgamma", "rect_map_lgamma",
    "full_map_lgamma", "CONSTRUCTIONS", "build", "NotInClass", "DecompPiece", "Decomposition",
    "decompose_L", "Embedding", "embed_lgamma", "ZLikeDemo", "zlike_order_demo",
]

W = OMEGA
W2 = mul(OMEGA, OMEGA)
SEG = ClosedSeg(W)
L = LGamma(W)


# -- blocks of L_w ---------------------------------------------------------------------


@dataclass(frozen=True)
class PairPartition:
    """Pairs (a, a+1) of isolated ordinals below gamma, in increasing order."""
    gamma: Ordinal

    def __call__(self, alpha: int) -> Tuple[Ordinal, Ordinal]:
        return nat(2 * alpha), nat(2 * alpha + 1)

    def index_of(self, x: Ordinal) -> int:
        return int(x) // 2


def pair_partition(gamma: Ordinal = W) -> PairPartition:
    if gamma != W:
        raise Unsupported(f"pairing is implemented for gamma = w only (got {gamma})")
    return PairPartition(gamma)


def _wc(c: int, k: int = 0) -> Ordinal:
    return add(mul(W, nat(c)), nat(k))


def _minus(t: Ordinal, j: int) -> Ordinal:
    """t - j on [0, w], where w - j = w."""
    return nat(int(t) - j) if t.is_finite else t


def _plus(t: Ordinal, j: int) -> Ordinal:
    return nat(int(t) + j) if t.is_finite else t


def block_of(y: Ordinal) -> int:
    """Index c of the block I_c containing y < w^2."""
    c = sum(coef for e, coef in y.terms if e == Ordinal.of(1))
    return c - 1 if c and y.finite_part() == 0 else c


def iota(c: int, t: Ordinal) -> Ordinal:
    """Canonical isomorphism [0, w] -> I_c."""
    if not t.is_finite:
        return _wc(c + 1)
    return _wc(c, int(t) + (1 if c else 0))


def iota_inv(c: int, y: Ordinal) -> Ordinal:
    if y == _wc(c + 1):
        return W
    return nat(y.finite_part() - (1 if c else 0))


def block_ends(c: int) -> Tuple[Ordinal, Ordinal]:
    return iota(c, ZERO), iota(c, W)


def _start(s: int) -> Ordinal:
    return iota(s, ZERO)


def _shift(s: int, y: Ordinal) -> Ordinal:
    """Isomorphism of the tail [start(s), w^2] onto L."""
    return left_sub(_start(s), y)


def _unshift(s: int, z: Ordinal) -> Ordinal:
    return add(_start(s), z)


def _tau(t: Ordinal) -> Ordinal:
    """L -> (0, w^2]."""
    return nat(int(t) + 1) if t.is_finite else t


def _tau_inv(v: Ordinal) -> Ordinal:
    return nat(int(v) - 1) if v.is_finite else v


# -- the square map [0,w]^2 -> L_w --------------------------------------------------------


def square(x: Ordinal, y: Ordinal) -> Ordinal:
    """Vertical {a} x [a, w] onto I_{2a+1}, horizontal (a, w] x {a} onto I_{2a},
    corner onto the maximum."""
    if x == W and y == W:
        return W2
    if x.is_finite and y >= x:
        a = int(x)
        return iota(2 * a + 1, _minus(y, a))
    a = int(y)
    return iota(2 * a, _minus(x, a + 1))


def square_inv(z: Ordinal) -> Tuple[Ordinal, Ordinal]:
    if z == W2:
        return W, W
    c = block_of(z)
    t = iota_inv(c, z)
    if c % 2:
        a = c // 2
        return nat(a), _plus(t, a)
    a = c // 2
    return _plus(t, a + 1), nat(a)


# -- the rectangle map [0,w] x L -> Z5 --------------------------------------------------------


def rect(x: Ordinal, y: Ordinal) -> Pair:
    if x == W and y == W2:
        return Pair(W, ZERO)
    if y != W2:
        c = block_of(y)
        if not x.is_finite or int(x) >= c:
            return Pair(nat(2 * c), square(_minus(x, c), iota_inv(c, y)))
    a = int(x)
    return Pair(nat(2 * a + 1), _shift(a + 1, y))


def rect_inv(q: Pair) -> Pair:
    a, z = q.first, q.second
    if a == W:
        return Pair(W, W2)
    c = int(a)
    if c % 2 == 0:
        u, v = square_inv(z)
        return Pair(_plus(u, c // 2), iota(c // 2, v))
    return Pair(nat(c // 2), _unshift(c // 2 + 1, z))


def _lift(u: Ordinal, v: Ordinal) -> Tuple[Ordinal, Ordinal]:
    """L x [0, w] -> [0, w] x_l L, onto the whole lexicographic rectangle."""
    if u <= W:
        return W, _tau(square(u, v))
    q = rect(v, _shift(1, u))
    return q.first, q.second


def _lift_inv(a: Ordinal, b: Ordinal) -> Tuple[Ordinal, Ordinal]:
    if a == W and b != ZERO:
        return square_inv(_tau_inv(b))
    p = rect_inv(Pair(a, b))
    return _unshift(1, p.second), p.first


# -- assembling maps ------------------------------------------------------------------------


def _default_modulus(p, direction):
    c = point_complexity(p)
    return lambda n: 2 * n + 2 * c + 4


def _lex_block(c) -> Tuple[Pair, Pair]:
    return Pair(nat(c), ZERO), Pair(nat(c), W2)


def convseq_map() -> PiecewiseMap:
    """[0,w]^2 onto Y = [<0,0>, <w,0>] in the lexicographic square."""
    source = Product(SEG, SEG)
    target = Interval(Lex(SEG, SEG), Pair(ZERO, ZERO), Pair(W, ZERO))

    def v_locate(p):
        return int(p.first) if p.first.is_finite and p.second >= p.first else None

    def h_locate(p):
        return int(p.second) if p.second.is_finite and p.first > p.second else None

    def image_locate(parity):
        return lambda q: int(q.first) // 2 if q.first.is_finite and int(q.first) % 2 == parity else None

    vertical = StageFamily(
        "vertical", v_locate,
        lambda j, p: Pair(nat(2 * j), _minus(p.second, j)),
        image_locate(0),
        lambda j, q: Pair(nat(j), _plus(q.second, j)),
        box=lambda j: (Pair(nat(j), nat(j)), Pair(nat(j), W)),
        block=lambda j: (Pair(nat(2 * j), ZERO), Pair(nat(2 * j), W)),
        monotone=True)
    horizontal = StageFamily(
        "horizontal", h_locate,
        lambda j, p: Pair(nat(2 * j + 1), _minus(p.first, j + 1)),
        image_locate(1),
        lambda j, q: Pair(_plus(q.second, j + 1), nat(j)),
        box=lambda j: (Pair(nat(j + 1), nat(j)), Pair(W, nat(j))),
        block=lambda j: (Pair(nat(2 * j + 1), ZERO), Pair(nat(2 * j + 1), W)),
        monotone=True)
    corner, image = Pair(W, W), Pair(W, ZERO)
    f = PiecewiseMap(
        "convseq", source, target, (vertical, horizontal), ((corner, image),),
        moduli={(corner, FORWARD): lambda n: n + 1, (image, INVERSE): lambda n: 2 * n},
        default_modulus=_default_modulus)

    def target_set(n):
        # {<a,b> in Y : a >= 2n}
        return OrderNbhd(target, image, Pair(nat(2 * n), ZERO), True, None, True)

    def image_claim(n):
        return symbolic_corner_inclusion(f, FORWARD, basis(source, corner, n), target_set(n)) or \
            (False, "not expressible")

    def open_claim(n):
        B = basis(target, image, 2 * n)
        ok = target_set(n).contains(B.lo)
        return ok, "" if ok else f"{B} is not inside {{a >= {2 * n}}}"

    f.claims = (Claim("f(U_n) within {a >= 2n}", corner, FORWARD, image_claim),
                Claim("{a >= 2n} is a neighbourhood of the image", image, INVERSE, open_claim))
    return f


def square_map_lgamma() -> PiecewiseMap:
    """[0,w]^2 onto L_w; verticals onto the odd blocks, horizontals onto the even ones."""
    source = Product(SEG, SEG)
    vertical = StageFamily(
        "vertical",
        lambda p: int(p.first) if p.first.is_finite and p.second >= p.first else None,
        lambda a, p: square(p.first, p.second),
        lambda z: block_of(z) // 2 if z != W2 and block_of(z) % 2 else None,
        lambda a, z: Pair(*square_inv(z)),
        box=lambda a: (Pair(nat(a), nat(a)), Pair(nat(a), W)),
        block=lambda a: block_ends(2 * a + 1),
        monotone=True)
    horizontal = StageFamily(
        "horizontal",
        lambda p: int(p.second) if p.second.is_finite and p.first > p.second else None,
        lambda a, p: square(p.first, p.second),
        lambda z: block_of(z) // 2 if z != W2 and not block_of(z) % 2 else None,
        lambda a, z: Pair(*square_inv(z)),
        box=lambda a: (Pair(nat(a + 1), nat(a)), Pair(W, nat(a))),
        block=lambda a: block_ends(2 * a),
        monotone=True)
    corner = Pair(W, W)
    return PiecewiseMap(
        "lgamma-square", source, L, (vertical, horizontal), ((corner, W2),),
        moduli={(corner, FORWARD): lambda n: n, (W2, INVERSE): lambda n: 2 * n + 1},
        default_modulus=_default_modulus)


def rect_map_lgamma() -> PiecewiseMap:
    """[0,w] x L_w onto Z5 = [<0,0>, <w,0>] in [0,w] x_l L_w."""
    source = Product(SEG, L)
    target = Interval(Lex(SEG, L), Pair(ZERO, ZERO), Pair(W, ZERO))

    def strip_locate(p):
        if p.second == W2:
            return None
        c = block_of(p.second)
        return c if not p.first.is_finite or int(p.first) >= c else None

    def vert_locate(p):
        if not p.first.is_finite:
            return None
        a = int(p.first)
        return a if p.second >= _start(a + 1) else None

    def image_locate(parity):
        return lambda q: int(q.first) // 2 if q.first.is_finite and int(q.first) % 2 == parity else None

    strip = StageFamily(
        "strip", strip_locate, lambda c, p: rect(p.first, p.second), image_locate(0),
        lambda c, q: rect_inv(q),
        box=lambda c: (Pair(nat(c), _start(c)), Pair(W, iota(c, W))),
        block=lambda c: _lex_block(2 * c),
        monotone=True)
    vertical = StageFamily(
        "vertical", vert_locate, lambda a, p: rect(p.first, p.second), image_locate(1),
        lambda a, q: rect_inv(q),
        box=lambda a: (Pair(nat(a), _start(a + 1)), Pair(nat(a), W2)),
        block=lambda a: _lex_block(2 * a + 1),
        monotone=True)
    corner, image = Pair(W, W2), Pair(W, ZERO)
    return PiecewiseMap(
        "lgamma-rect", source, target, (strip, vertical), ((corner, image),),
        moduli={(corner, FORWARD): lambda n: n + 1, (image, INVERSE): lambda n: 2 * n + 1},
        default_modulus=_default_modulus)


def full_map_lgamma() -> PiecewiseMap:
    """L_w x L_w onto Z = [<0,0>, <w^2,0>] in L_w x_l L_w."""
    source = Product(L, L)
    target = Interval(Lex(L, L), Pair(ZERO, ZERO), Pair(W2, ZERO))

    def h_locate(p):
        if p.second == W2:
            return None
        b = block_of(p.second)
        return b if p.first >= _start(b) else None

    def v_locate(p):
        if p.first == W2:
            return None
        a = block_of(p.first)
        return a if p.second >= _start(a + 1) else None

    def image_locate(parity):
        def loc(q):
            if q.first == W2:
                return None
            c = block_of(q.first)
            return c // 2 if c % 2 == parity else None
        return loc

    def h_fwd(b, p):
        u, v = _lift(_shift(b, p.first), iota_inv(b, p.second))
        return Pair(iota(2 * b, u), v)

    def h_inv(b, q):
        x, y = _lift_inv(iota_inv(2 * b, q.first), q.second)
        return Pair(_unshift(b, x), iota(b, y))

    def v_fwd(a, p):
        u, v = _lift(_shift(a + 1, p.second), iota_inv(a, p.first))
        return Pair(iota(2 * a + 1, u), v)

    def v_inv(a, q):
        y, x = _lift_inv(iota_inv(2 * a + 1, q.first), q.second)
        return Pair(iota(a, x), _unshift(a + 1, y))

    def t_block(c):
        lo, hi = block_ends(c)
        return Pair(lo, ZERO), Pair(hi, W2)

    horizontal = StageFamily(
        "horizontal", h_locate, h_fwd, image_locate(0), h_inv,
        box=lambda b: (Pair(_start(b), _start(b)), Pair(W2, iota(b, W))),
        block=lambda b: t_block(2 * b),
        monotone=True)
    vertical = StageFamily(
        "vertical", v_locate, v_fwd, image_locate(1), v_inv,
        box=lambda a: (Pair(_start(a), _start(a + 1)), Pair(iota(a, W), W2)),
        block=lambda a: t_block(2 * a + 1),
        monotone=True)
    corner, image = Pair(W2, W2), Pair(W2, ZERO)
    return PiecewiseMap(
        "lgamma-full", source, target, (horizontal, vertical), ((corner, image),),
        moduli={(corner, FORWARD): lambda n: n + 1, (image, INVERSE): lambda n: 2 * n + 2},
        default_modulus=_default_modulus)


CONSTRUCTIONS = {
    "convseq": convseq_map,
    "lgamma-square": square_map_lgamma,
    "lgamma-rect": rect_map_lgamma,
    "lgamma-full": full_map_lgamma,
}


def build(name: str) -> PiecewiseMap:
    try:
        return CONSTRUCTIONS[name]()
    except KeyError:
        raise Unsupported(f"unknown construction {name!r}; known: {', '.join(CONSTRUCTIONS)}") from None


# -- free-sum decomposition and embedding into L_w ---------------------------------------------


class NotInClass(SpaceError):
    def __init__(self, message: str, witness: Ordinal):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class DecompPiece:
    x: Ordinal
    alpha_x: Ordinal
    beta_x: Optional[Ordinal]  # None: the piece starts at the bottom of X
    piece: SpaceExpr


@dataclass(frozen=True)
class Decomposition:
    space: SpaceExpr
    pieces: Tuple[DecompPiece, ...]
    discrete_rest: SpaceExpr

    def check(self, depth: int = 4) -> List[str]:
        """Problems with the free-sum claims, empty when they all hold."""
        problems = []
        for pc in self.pieces:
            limits = [p for p in enumerate_points(pc.piece, depth) if cb_rank(pc.piece, p) != ZERO]
            if limits != [pc.x]:
                problems.append(f"piece at {pc.x} has non-isolated points {limits}")
        for a, b in zip(self.pieces, self.pieces[1:]):
            v = homeo_decide(a.piece, b.piece)
            if v.verdict != "Yes":
                problems.append(f"pieces at {a.x} and {b.x}: {v.verdict}")
        d = is_discrete(self.discrete_rest)
        if not d.discrete:
            problems.append(f"rest is not discrete: {d.witness}")
        return problems


def _as_omit(X: SpaceExpr) -> Omit:
    if isinstance(X, Omit):
        return X
    if isinstance(X, (ClosedSeg, HalfOpenSeg)):
        return Omit(X, ExplicitSet(frozenset()))
    raise Unsupported("decompose needs an omit(...) over an ordinal segment")


def decompose_L(X: SpaceExpr) -> Decomposition:
    """Split X (own order topology) into intervals (beta_x, x] around its
    non-isolated points plus a clopen discrete rest.

    The cut beta_x is the previous non-isolated point, so each piece is the
    largest interval with x as its single non-isolated point."""
    omit = _as_omit(X)
    tau = order_type(omit)
    w2 = mul(W, W)
    if tau > w2:
        x = omit_at(omit, w2)
        raise NotInClass(f"{x} is not the single non-isolated point of any interval (beta, {x}]", x)
    if tau == w2:
        raise Unsupported("infinitely many non-isolated points; only finite decompositions are built")
    c = sum(coef for e, coef in tau.terms if e == ONE)
    limits = [j for j in range(1, c + 1) if _wc(j) < tau]
    pieces = []
    for j in limits:
        x = omit_at(omit, _wc(j))
        alpha = omit_at(omit, _wc(j - 1, 1 if j > 1 else 0))
        beta = omit_at(omit, _wc(j - 1)) if j > 1 else None
        pieces.append(DecompPiece(x, alpha, beta, Interval(omit, alpha, x)))
    cut = pieces[-1].x if pieces else None
    if cut is None:
        rest = omit
    else:
        first = omit_at(omit, add(omit_position(omit, cut), ONE))
        rest = HalfOpenSeg(ZERO) if first is None else Interval(omit, first, None)
    return Decomposition(X, tuple(pieces), rest)


@dataclass(frozen=True)
class Embedding:
    """Injective map of X into L_w: the i-th piece onto block I_i, the discrete
    rest onto isolated points of the first unused block."""
    source: SpaceExpr
    decomposition: Decomposition
    image: SpaceExpr

    def __call__(self, y: Ordinal) -> Ordinal:
        omit = _as_omit(self.source)
        pos = omit_position(omit, y)
        for i, pc in enumerate(self.decomposition.pieces):
            if pc.alpha_x <= y <= pc.x:
                return iota(i, left_sub(omit_position(omit, pc.alpha_x), pos))
        used = len(self.decomposition.pieces)
        start = omit_position(omit, self.decomposition.pieces[-1].x) if used else None
        offset = left_sub(add(start, ONE), pos) if start is not None else pos
        return iota(used, offset)

    def image_pieces(self) -> List[SpaceExpr]:
        return [Interval(L, *block_ends(i)) for i in range(len(self.decomposition.pieces))]

    def check(self, depth: int = 4) -> List[HomeoVerdict]:
        """Per-piece oracle comparison of each piece with its image block."""
        return [homeo_decide(pc.piece, img)
                for pc, img in zip(self.decomposition.pieces, self.image_pieces())]


def embed_lgamma(X: SpaceExpr) -> Embedding:
    dec = decompose_L(X)
    used = len(dec.pieces)
    parts = [InRange(*block_ends(i)) for i in range(used)]
    if not is_empty(dec.discrete_rest):
        lo, hi = block_ends(used)
        rest_type = order_type(dec.discrete_rest)
        if rest_type.is_finite:
            hi = iota(used, nat(int(rest_type) - 1))
        parts.append(And(InRange(lo, hi), IsIsolated()))
    kept = parts[0] if parts else ExplicitSet(frozenset())
    for p in parts[1:]:
        kept = Or(kept, p)
    image = Omit(ClosedSeg(mul(W, W)), Not(kept))
    return Embedding(X, dec, image)


# -- the block-reorder demonstration -------------------------------------------------------------


class ZLikeDemo(NamedTuple):
    two_block: Omit
    reordered: Reorder
    s: OrderedSum


def zlike_order_demo() -> ZLikeDemo:
    """Two w-blocks with their limits removed, their reorder, and S, a copy
    of {+-1/n}."""
    two = Omit(ClosedSeg(_wc(2)), ExplicitSet(frozenset({W, _wc(2)})))
    s = OrderedSum((HalfOpenSeg(W), Rev(HalfOpenSeg(W))))
    return ZLikeDemo(two, Reorder(two), s)
