"""Independent reference implementations used to freeze expected values.

The arithmetic oracle uses none of the package arithmetic: ordinals are
modelled as non-increasing tuples of exponents (``w^e1 + w^e2 + ...`` with
repeats in place of coefficients), each exponent again such a tuple.  The
derived-set oracle uses bases and isolation but never the divisibility rule.
"""

from __future__ import annotations

from ordspace import ordinal as _ord
from ordspace.ordinal import OMEGA, fundamental
from ordspace.space import basis, is_isolated

ZERO = ()
ONE = (ZERO,)


def cmp(a, b) -> int:
    for x, y in zip(a, b):
        c = cmp(x, y)
        if c:
            return c
    return (len(a) > len(b)) - (len(a) < len(b))


def add(a, b):
    if not b:
        return a
    head = b[0]
    keep = tuple(e for e in a if cmp(e, head) >= 0)
    return keep + b


def mul(a, b):
    """b copies of a: distribute over the terms of b."""
    out = ZERO
    if not a:
        return ZERO
    for e in b:
        out = add(out, a if not e else (add(a[0], e),))
    return out


def from_ordinal(o):
    out = []
    for e, c in o.terms:
        out += [from_ordinal(e)] * c
    return tuple(out)


def to_int(a) -> int:
    assert all(e == ZERO for e in a)
    return len(a)


def second_derived_by_limits(X, p, n_max=5):
    """p is a limit of non-isolated points: each basic neighbourhood holds the
    least limit above its lower bound.  Uses only arithmetic, bases and
    isolation, never the divisibility rule."""
    if is_isolated(X, p):
        return False
    for n in range(n_max):
        q = _ord.add(fundamental(p, n), OMEGA)
        if not (q < p and basis(X, p, n).contains(q) and not is_isolated(X, q)):
            return False
    return True
