"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is an immutable tuple of ``(exponent, coefficient)`` terms
with strictly decreasing exponents, each exponent itself an :class:`Ordinal`.
Zero is the empty tuple.  Literals use the ASCII syntax ``w^2+w*3+1``.
"""

from __future__ import annotations

import enum
from functools import lru_cache, total_ordering
from typing import Iterator, Tuple, Union

__all__ = [
    "Ordinal",
    "Cmp",
    "Kind",
    "NotLimit",
    "OrdinalSyntaxError",
    "ZERO",
    "ONE",
    "OMEGA",
    "nat",
    "compare",
    "add",
    "mul",
    "pow_omega",
    "classify",
    "fundamental",
    "complexity",
    "divides_pow_omega",
    "natural_sum",
    "left_sub",
    "parse_ordinal",
    "ordinals_up_to_complexity",
]


class NotLimit(ValueError):
    """Raised when a fundamental sequence is requested for a non-limit."""


class OrdinalSyntaxError(ValueError):
    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        super().__init__(f"at position {position}: expected {expected}" + (f" in {text!r}" if text else ""))


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class Kind(enum.Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


Term = Tuple["Ordinal", int]


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Tuple[Term, ...] = ()):
        prev = None
        for exp, coef in terms:
            if not isinstance(exp, Ordinal) or not isinstance(coef, int) or coef < 1:
                raise ValueError(f"bad CNF term ({exp!r}, {coef!r})")
            if prev is not None and not exp < prev:
                raise ValueError("CNF exponents must strictly decrease")
            prev = exp
        object.__setattr__(self, "terms", tuple(terms))
        object.__setattr__(self, "_hash", hash(self.terms))

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    # -- coercion -----------------------------------------------------------

    @staticmethod
    def of(value: Union["Ordinal", int]) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return nat(value)
        raise TypeError(f"cannot convert {value!r} to Ordinal")

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = nat(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = nat(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) is Cmp.LT

    # -- arithmetic sugar ---------------------------------------------------

    def __add__(self, other):
        return add(self, Ordinal.of(other))

    def __radd__(self, other):
        return add(Ordinal.of(other), self)

    def __mul__(self, other):
        return mul(self, Ordinal.of(other))

    def __rmul__(self, other):
        return mul(Ordinal.of(other), self)

    def __bool__(self):
        return bool(self.terms)

    # -- structure ----------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0])

    def __int__(self):
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def leading_exponent(self) -> "Ordinal":
        return self.terms[0][0] if self.terms else ZERO

    @property
    def leading_coefficient(self) -> int:
        return self.terms[0][1] if self.terms else 0

    @property
    def last_exponent(self) -> "Ordinal":
        """Exponent of the last CNF term; the Cantor-Bendixson rank of the point."""
        return self.terms[-1][0] if self.terms else ZERO

    def limit_part(self) -> "Ordinal":
        """The largest limit (or zero) not exceeding self."""
        if self.terms and not self.terms[-1][0]:
            return Ordinal(self.terms[:-1])
        return self

    def finite_part(self) -> int:
        if self.terms and not self.terms[-1][0]:
            return self.terms[-1][1]
        return 0

    def __repr__(self):
        return f"Ordinal({self})"

    def __str__(self):
        return render(self)


def nat(n: int) -> Ordinal:
    if n < 0:
        raise ValueError("ordinals are non-negative")
    return _nat(n)


@lru_cache(maxsize=4096)
def _nat(n: int) -> Ordinal:
    return Ordinal(((ZERO, n),)) if n else ZERO


ZERO = Ordinal(())
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def compare(a: Ordinal, b: Ordinal) -> Cmp:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c is not Cmp.EQ:
            return c
        if ca != cb:
            return Cmp.LT if ca < cb else Cmp.GT
    la, lb = len(a.terms), len(b.terms)
    if la == lb:
        return Cmp.EQ
    return Cmp.LT if la < lb else Cmp.GT


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    e = b.terms[0][0]
    kept = [t for t in a.terms if t[0] > e]
    same = [t for t in a.terms if t[0] == e]
    if same:
        return Ordinal(tuple(kept) + ((e, same[0][1] + b.terms[0][1]),) + b.terms[1:])
    return Ordinal(tuple(kept) + b.terms)


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal product ``a*b``: ``b`` copies of ``a`` laid end to end."""
    if not a.terms or not b.terms:
        return ZERO
    lead_exp, lead_coef = a.terms[0]
    out = ZERO
    for e, c in b.terms:
        if e.terms:
            piece = Ordinal(((add(lead_exp, e), c),))
        else:
            piece = Ordinal(((lead_exp, lead_coef * c),) + a.terms[1:])
        out = add(out, piece)
    return out


def pow_omega(a: Ordinal) -> Ordinal:
    return Ordinal(((a, 1),))


def classify(a: Ordinal):
    """Return ``(Kind, predecessor-or-None)``."""
    if not a.terms:
        return Kind.ZERO, None
    exp, coef = a.terms[-1]
    if exp.terms:
        return Kind.LIMIT, None
    head = a.terms[:-1]
    return Kind.SUCCESSOR, Ordinal(head + (((ZERO, coef - 1),) if coef > 1 else ()))


def is_limit(a: Ordinal) -> bool:
    return bool(a.terms) and bool(a.terms[-1][0].terms)


def fundamental(a: Ordinal, n: int) -> Ordinal:
    if not is_limit(a):
        raise NotLimit(f"{a} is not a limit ordinal")
    exp, coef = a.terms[-1]
    prefix = Ordinal(a.terms[:-1] + (((exp, coef - 1),) if coef > 1 else ()))
    kind, pred = classify(exp)
    if kind is Kind.SUCCESSOR:
        tail = mul(pow_omega(pred), nat(n))
    else:
        tail = pow_omega(fundamental(exp, n))
    return add(prefix, tail)


@lru_cache(maxsize=None)
def complexity(a: Ordinal) -> int:
    return sum(complexity(e) + c for e, c in a.terms)


def divides_pow_omega(delta: Ordinal, x: Ordinal) -> bool:
    if not x.terms:
        return not delta.terms
    return all(e >= delta for e, _ in x.terms)


def natural_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Hessenberg sum: merge CNF terms, adding coefficients of equal exponents."""
    coefs = {}
    for e, c in a.terms + b.terms:
        coefs[e] = coefs.get(e, 0) + c
    return Ordinal(tuple(sorted(coefs.items(), key=lambda t: t[0], reverse=True)))


def left_sub(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique ``d`` with ``a + d == b``; requires ``a <= b``."""
    if b < a:
        raise ValueError(f"{a} exceeds {b}")
    for i, ((ea, ca), (eb, cb)) in enumerate(zip(a.terms, b.terms)):
        if ea == eb and ca == cb:
            continue
        if ea == eb:
            return Ordinal(((eb, cb - ca),) + b.terms[i + 1:])
        return Ordinal(b.terms[i:])
    return Ordinal(b.terms[len(a.terms):])


# -- literals -----------------------------------------------------------------


def render(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if not e.terms:
            parts.append(str(c))
            continue
        if e == ONE:
            s = "w"
        elif e.is_finite or (len(e.terms) == 1 and e.terms[0][1] == 1):
            s = f"w^{render(e)}"
        else:
            s = f"w^({render(e)})"
        if c > 1:
            s += f"*{c}"
        parts.append(s)
    return "+".join(parts)


class _LitParser:
    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, expected: str):
        raise OrdinalSyntaxError(self.pos, expected, self.text)

    def natural(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("natural number")
        return int(self.text[start:self.pos])

    def starts_term(self) -> bool:
        ch = self.peek()
        if ch.isdigit():
            return True
        if ch == "w":
            nxt = self.text[self.pos + 1:self.pos + 2]
            return not (nxt.isalnum() or nxt == "_")
        return False

    def term(self) -> Ordinal:
        ch = self.peek()
        if ch.isdigit():
            return nat(self.natural())
        if not self.starts_term():
            self.error("ordinal term ('w' or a natural)")
        self.pos += 1
        exp = ONE
        if self.peek() == "^":
            self.pos += 1
            exp = self.exponent()
        coef = 1
        if self.peek() == "*":
            save = self.pos
            self.pos += 1
            if self.peek().isdigit():
                coef = self.natural()
            else:
                self.pos = save
        return mul(pow_omega(exp), nat(coef)) if coef else ZERO

    def exponent(self) -> Ordinal:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            e = self.literal()
            if self.peek() != ")":
                self.error("')'")
            self.pos += 1
            return e
        if ch.isdigit():
            return nat(self.natural())
        if self.starts_term():
            self.pos += 1
            if self.peek() == "^":
                self.pos += 1
                return pow_omega(self.exponent())
            return OMEGA
        self.error("exponent")

    def literal(self) -> Ordinal:
        out = self.term()
        while True:
            save = self.pos
            if self.peek() != "+":
                break
            self.pos += 1
            if not self.starts_term():
                self.pos = save
                break
            out = add(out, self.term())
        return out


def parse_ordinal(text: str) -> Ordinal:
    p = _LitParser(text)
    value = p.literal()
    p.skip()
    if p.pos != len(text):
        p.error("end of input")
    return value


# -- finite exhaustion ---------------------------------------------------------


@lru_cache(maxsize=None)
def ordinals_up_to_complexity(k: int) -> Tuple[Ordinal, ...]:
    """All ordinals of complexity at most ``k``, sorted ascending."""
    found = set(_gen_terms(k, None))
    return tuple(sorted(found))


def _gen_terms(budget: int, bound) -> Iterator[Ordinal]:
    # sequences of terms with exponents strictly below ``bound`` (None = unbounded)
    yield ZERO
    if budget <= 0:
        return
    for exp in ordinals_up_to_complexity(budget - 1):
        if bound is not None and not exp < bound:
            continue
        cost_e = complexity(exp)
        for coef in range(1, budget - cost_e + 1):
            head = Ordinal(((exp, coef),))
            for rest in _gen_terms(budget - cost_e - coef, exp):
                yield Ordinal(head.terms + rest.terms)
