"""Text and JSON payloads for the command line, DOT emission and demos."""

from __future__ import annotations

from typing import Dict, List, Tuple

from . import constructions as C
from .dsl import to_text
from .invariants import (
    NotCompact, cardinality, homeo_decide, is_compact, is_discrete, ms_invariant,
)
from .ordinal import ZERO, mul, nat
from .space import (
    And, ClosedSeg, ExplicitSet, Interval, IsLimit, Lex, Mode, Not, Omit, Product, SpaceError,
    SpaceExpr, Unsupported, basis, cb_rank, enumerate_points, height, is_isolated, is_well_ordered,
    order_type,
)
from .verify import Certificate, certify, corrupt

W, W2 = C.W, C.W2


def _try(fn, *args):
    try:
        return fn(*args)
    except (SpaceError, NotCompact):
        return None


# -- invariants -----------------------------------------------------------------------------


def invariants_payload(X: SpaceExpr, depth: int) -> Dict:
    wo = is_well_ordered(X) if X.ordered else False
    out = {"expr": _try(to_text, X), "well_ordered": wo}
    out["order_type"] = str(order_type(X)) if wo else None
    compact = _try(is_compact, X)
    out["compact"] = compact
    d = is_discrete(X, depth)
    out["discrete"] = d.discrete
    out["non_isolated_witness"] = None if d.witness is None else str(d.witness)
    h = _try(height, X)
    out["height"] = None if h is None else str(h)
    size = cardinality(X)
    out["cardinality"] = "countably infinite" if size is None else size
    inv = _try(ms_invariant, X, "auto", depth) if compact else None
    out["ms_invariant"] = None if inv is None else inv.to_json()
    return out


def invariants_text(p: Dict) -> str:
    lines = [f"expression:   {p['expr']}"]
    lines.append(f"order type:   {p['order_type'] if p['well_ordered'] else 'not well-ordered'}")
    comp = {True: "yes", False: "no", None: "undetermined"}[p["compact"]]
    lines.append(f"compact:      {comp}")
    disc = "yes" if p["discrete"] else f"no (non-isolated point {p['non_isolated_witness']})"
    lines.append(f"discrete:     {disc}")
    if p["height"] is not None:
        lines.append(f"CB height:    {p['height']}")
    lines.append(f"cardinality:  {p['cardinality']}")
    if p["ms_invariant"]:
        inv = p["ms_invariant"]
        lines.append(f"invariant:    (rank {inv['rank']}, degree {inv['degree']})")
    return "\n".join(lines)


def homeo_text(v) -> str:
    if v.verdict == "Yes":
        head = f"Yes({v.invariant})" if v.invariant else "Yes"
    elif v.verdict == "No":
        head = f"No({v.reason})"
    else:
        head = "Unknown"
    lines = [head]
    if v.witness:
        lines.append(f"  witness: {v.witness}")
    if v.reason and v.verdict != "No":
        lines.append(f"  reason:  {v.reason}")
    return "\n".join(lines)


# -- enumeration and DOT --------------------------------------------------------------------


def enumerate_payload(X: SpaceExpr, depth: int) -> Dict:
    pts = enumerate_points(X, depth)
    return {"expr": to_text(X), "depth": depth,
            "points": [{"point": str(p), "rank": str(cb_rank(X, p))} for p in pts]}


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_graph(X: SpaceExpr, depth: int, basis_max: int) -> str:
    """CB decomposition tree: one rank=same cluster per derivative level;
    each point hangs under the higher-rank point whose base contains it at
    the largest index up to ``basis_max``."""
    pts = enumerate_points(X, depth)
    ranks = {p: cb_rank(X, p) for p in pts}
    levels: Dict = {}
    for p in pts:
        levels.setdefault(ranks[p], []).append(p)
    lines = ["digraph cb {", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for i, r in enumerate(sorted(levels, reverse=True)):
        lines.append(f"  subgraph level_{i} {{")
        lines.append("    rank=same;")
        lines.append(f"    {_quote('level ' + str(r))} [shape=plaintext];")
        for p in levels[r]:
            lines.append(f"    {_quote(str(p))};")
        lines.append("  }")
    order = sorted(levels, reverse=True)
    for hi, lo in zip(order, order[1:]):
        lines.append(f"  {_quote('level ' + str(lo))} -> {_quote('level ' + str(hi))} [style=invis];")
    for p in pts:
        best: Tuple[int, object] = (-1, None)
        for q in pts:
            if ranks[q] <= ranks[p]:
                continue
            for n in range(basis_max, best[0], -1):
                if basis(X, q, n).contains(p):
                    best = (n, q)
                    break
        if best[1] is not None:
            lines.append(f"  {_quote(str(p))} -> {_quote(str(best[1]))} [label={best[0]}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- certificates ---------------------------------------------------------------------------


def certificate_text(cert: Certificate) -> str:
    b = cert.bijection
    modes: Dict[str, int] = {}
    for c in cert.continuity:
        modes[c.mode] = modes.get(c.mode, 0) + 1
    lines = [
        f"certificate {cert.id} at k={cert.k}, n_max={cert.n_max}: {'PASS' if cert.passed else 'FAIL'}",
        f"  bijection: {b.checked_source} source / {b.checked_target} target points, "
        f"{len(b.orphans)} orphans, {len(b.problems)} problems",
        f"  continuity: {len(cert.continuity)} checks "
        + ", ".join(f"{n} {m}" for m, n in sorted(modes.items())),
    ]
    for c in cert.continuity:
        if c.label:
            lines.append(f"    [{c.mode}] {c.label} at {c.point}: {'pass' if c.passed else 'FAIL'}")
    lines.append(f"  oracle: source {cert.invariant_src}, target {cert.invariant_tgt}"
                 + ("" if cert.oracle_equal is None else f", equal={cert.oracle_equal}"))
    for w in cert.failures()[:10]:
        lines.append(f"  ! {w}")
    return "\n".join(lines)


def run_certificate(cid: str, k: int, n_max: int, corrupted: bool = False) -> Certificate:
    f = C.build(cid)
    if corrupted:
        corner = f.exceptional[0][0]
        f = corrupt(f, corner, _first_isolated(f))
    return certify(f, k, n_max)


def _first_isolated(f):
    for p in enumerate_points(f.source, 2):
        if cb_rank(f.source, p) == ZERO:
            return p
    raise Unsupported("no isolated point to corrupt")


# -- fixtures and demos -----------------------------------------------------------------------


def decompose_fixture() -> Omit:
    """All ordinals up to w*3: the isolated ones plus w, w*2, w*3."""
    keep = ExplicitSet(frozenset({W, mul(W, nat(2)), mul(W, nat(3))}))
    return Omit(ClosedSeg(mul(W, nat(3))), And(IsLimit(), Not(keep)))


def not_in_class_fixture() -> Omit:
    """The isolated ordinals below w^2 plus w and w^2."""
    return Omit(ClosedSeg(W2), And(IsLimit(), Not(ExplicitSet(frozenset({W, W2})))))


def decompose_payload(X: SpaceExpr, depth: int = 4) -> Dict:
    dec = C.decompose_L(X)
    rest = enumerate_points(dec.discrete_rest, depth)
    return {
        "expr": to_text(X),
        "pieces": [{"x": str(p.x), "alpha_x": str(p.alpha_x),
                    "beta_x": None if p.beta_x is None else str(p.beta_x),
                    "order_type": str(order_type(p.piece))} for p in dec.pieces],
        "discrete_rest": {"sample": [str(p) for p in rest], "order_type": str(order_type(dec.discrete_rest))},
        "problems": dec.check(depth),
    }


def embed_payload(X: SpaceExpr, depth: int = 4) -> Dict:
    e = C.embed_lgamma(X)
    pts = enumerate_points(X, depth)
    images = [e(p) for p in pts]
    verdicts = e.check(depth)
    return {
        "expr": to_text(X),
        "blocks": len(e.decomposition.pieces),
        "map": [{"point": str(p), "image": str(q)} for p, q in zip(pts, images)],
        "injective": len(set(images)) == len(images),
        "pieces": [v.to_json() for v in verdicts],
    }


def _check(lines: List[str], ok: bool, text: str) -> bool:
    lines.append(f"  [{'ok' if ok else 'FAIL'}] {text}")
    return ok


def demo(cid: str, depth: int, basis_max: int) -> Tuple[str, bool]:
    """Scripted scenario for a construction id: narrative text and overall pass."""
    lines: List[str] = []
    ok = True
    if cid in C.CONSTRUCTIONS:
        f = C.build(cid)
        lines.append(f"{cid}: {to_text(f.source)}  ->  {_describe(f.target)}")
        for piece in f.pieces(3):
            lines.append(f"  piece {piece.label}: {_describe(piece.domain)} onto {_describe(piece.codomain)}")
        for a, b in f.exceptional:
            lines.append(f"  exceptional: {a} -> {b}")
        sample = [p for p in enumerate_points(f.source, 3)][:8]
        lines.append("  sample: " + ", ".join(f"{p}->{f(p)}" for p in sample))
        cert = certify(f, depth, basis_max)
        lines.append(certificate_text(cert))
        ok = cert.passed
    elif cid == "decompose":
        X = decompose_fixture()
        p = decompose_payload(X)
        lines.append(f"decompose: X = {to_text(X)}")
        for pc in p["pieces"]:
            lines.append(f"  piece ({pc['beta_x'] or 'bottom'}, {pc['x']}]  type {pc['order_type']}")
        lines.append(f"  discrete rest: type {p['discrete_rest']['order_type']}")
        ok &= _check(lines, len(p["pieces"]) == 3 and not p["problems"],
                     "three pieces, each with one non-isolated point, pairwise homeomorphic; rest discrete")
        neg = not_in_class_fixture()
        try:
            C.decompose_L(neg)
            ok &= _check(lines, False, f"{to_text(neg)} rejected")
        except C.NotInClass as e:
            ok &= _check(lines, True, f"{to_text(neg)} rejected; witness {e.witness}")
    elif cid == "embed":
        X = decompose_fixture()
        p = embed_payload(X)
        lines.append(f"embed: X = {to_text(X)} into L[w], {p['blocks']} blocks used")
        lines.append("  map: " + ", ".join(f"{m['point']}->{m['image']}" for m in p["map"][:10]))
        ok &= _check(lines, p["injective"], "injective on the exhaustion")
        ok &= _check(lines, all(v["verdict"] == "Yes" for v in p["pieces"]),
                     "every piece is homeomorphic to its image block")
    elif cid == "zlike":
        z = C.zlike_order_demo()
        two = z.two_block
        pts = enumerate_points(two, depth)
        limits = [str(q) for q in pts if cb_rank(two, q) != ZERO]
        lines.append(f"zlike: X = {to_text(two)}")
        ok &= _check(lines, limits == [str(C._wc(1, 1))],
                     f"own order topology: non-isolated points {limits}")
        ok &= _check(lines, all(is_isolated(two, q, Mode.AMBIENT) for q in pts), "ambient topology: discrete")
        ok &= _check(lines, is_discrete(z.reordered).discrete, f"{to_text(z.reordered)} is discrete")
        v = homeo_decide(Product(z.s, z.s), Lex(z.s, z.s), depth)
        lines.append(f"  S = {to_text(z.s)}")
        ok &= _check(lines, is_discrete(Lex(z.s, z.s)).discrete, "S xl S is discrete")
        ok &= _check(lines, v.verdict == "Yes", f"S x S vs S xl S: {homeo_text(v).splitlines()[0]}")
    else:
        raise Unsupported(f"unknown construction {cid!r}")
    return "\n".join(lines), ok


def _describe(X: SpaceExpr) -> str:
    try:
        return to_text(X)
    except Unsupported:
        pass
    if isinstance(X, Interval):
        top = "top" if X.b is None else str(X.b)
        return f"[{X.a}, {top}] in {_describe(X.parent)}"
    if isinstance(X, Product):
        return f"{_describe(X.x)} x {_describe(X.y)}"
    return type(X).__name__


__all__ = [
    "invariants_payload", "invariants_text", "homeo_text", "enumerate_payload", "dot_graph",
    "certificate_text", "run_certificate", "decompose_fixture", "not_in_class_fixture",
    "decompose_payload", "embed_payload", "demo",
]
