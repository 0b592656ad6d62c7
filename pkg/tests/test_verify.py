import dataclasses

import pytest

from ordspace import constructions as C
from ordspace.ordinal import OMEGA, ZERO, nat
from ordspace.report import run_certificate
from ordspace.space import ClosedSeg, Pair
from ordspace.verify import (
    FORWARD, INVERSE, NoModulus, PiecewiseMap, StageFamily, certify, check_bijection,
    check_continuity_at, corrupt,
)

W = OMEGA
CORNER, IMAGE = Pair(W, W), Pair(W, ZERO)


def identity_on_seg():
    S = ClosedSeg(W)
    fam = StageFamily("all", lambda p: 0, lambda i, p: p, lambda q: 0, lambda i, q: q)
    return PiecewiseMap("identity", S, S, (fam,), default_modulus=lambda p, d: (lambda n: n))


def with_moduli(f, **changes):
    g = dataclasses.replace(f, **changes)
    g.claims = f.claims
    return g


def test_identity_passes():
    cert = certify(identity_on_seg(), 5, 6)
    assert cert.passed
    assert cert.oracle_equal is True


def test_convseq_bijection():
    rep = check_bijection(C.convseq_map(), 5)
    assert rep.ok and not rep.orphans


def test_swapped_images_are_reported():
    f = C.convseq_map()
    g = corrupt(f, CORNER, Pair(ZERO, ZERO))
    rep = check_bijection(g, 5)
    assert not rep.ok
    assert any("<0,0>" in w for w in rep.problems + rep.orphans)
    cert = certify(g, 5, 8)
    assert not cert.passed
    assert any(str(CORNER) in w for w in cert.failures())


def test_isolated_point_is_vacuous():
    r = check_continuity_at(C.convseq_map(), Pair(nat(2), nat(3)), 8, 5)
    assert r.passed and r.mode == "vacuous"


def test_corner_checks_are_symbolic():
    f = C.convseq_map()
    r = check_continuity_at(f, CORNER, 8, 5, FORWARD)
    assert r.passed and r.mode == "symbolic"
    r = check_continuity_at(f, IMAGE, 8, 5, INVERSE)
    assert r.passed and r.mode == "symbolic"


def test_too_small_forward_modulus_fails():
    f = C.convseq_map()
    moduli = dict(f.moduli)
    moduli[(CORNER, FORWARD)] = lambda n: n
    r = check_continuity_at(with_moduli(f, moduli=moduli), CORNER, 8, 5, FORWARD)
    assert not r.passed and r.witness


def test_too_small_inverse_modulus_fails():
    f = C.convseq_map()
    moduli = dict(f.moduli)
    moduli[(IMAGE, INVERSE)] = lambda n: n
    r = check_continuity_at(with_moduli(f, moduli=moduli), IMAGE, 8, 5, INVERSE)
    assert not r.passed
    assert "n=" in r.witness


def test_too_small_default_modulus_fails():
    f = C.convseq_map()
    g = with_moduli(f, default_modulus=lambda p, d: (lambda n: n))
    cert = certify(g, 5, 8)
    assert not cert.passed
    assert any(not c.passed and c.mode == "sampled" for c in cert.continuity)


def test_missing_modulus_raises():
    f = C.convseq_map()
    g = with_moduli(f, default_modulus=None)
    with pytest.raises(NoModulus):
        check_continuity_at(g, Pair(nat(1), W), 4, 4)


def test_half_index_modulus_claim_holds_separately():
    cert = certify(C.convseq_map(), 5, 8)
    claims = [c for c in cert.continuity if c.label]
    assert len(claims) == 2 and all(c.passed and c.mode == "symbolic" for c in claims)


def test_certificate_json():
    out = certify(C.convseq_map(), 4, 4).to_json()
    assert out["pass"] is True
    assert out["depths"] == {"k": 4, "n_max": 4}
    assert out["oracle"] == {"invariant_src": "(2,1)", "invariant_tgt": "(2,1)", "equal": True}
    assert {c["direction"] for c in out["continuity"]} == {FORWARD, INVERSE}


@pytest.mark.parametrize("cid", ["lgamma-square", "lgamma-rect"])
def test_corrupted_constructions_fail(cid):
    corner = C.build(cid).exceptional[0][0]
    cert = run_certificate(cid, 3, 3, corrupted=True)
    assert not cert.passed
    assert any(str(corner) in w for w in cert.failures())
