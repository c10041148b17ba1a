"""Ordinals below w^(w*3)+3 and Mostowski-Rabin indices.

An ordinal below w^(w*3) is kept as a flat Cantor normal form whose
exponents are pairs (j, k) standing for w*j + k with j in {0, 1, 2}. The
three coefficients of the base-w^w presentation,

    alpha = w^(w*2)*a2 + w^w*a1 + a0,

are exposed as polynomials in w (tuples of (exponent, coefficient)).
Above everything sit TOP(0) = w^(w*3), TOP(1) and TOP(2).
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from typing import Iterable, Optional

Exp = tuple[int, int]
Term = tuple[Exp, int]
OmegaPoly = tuple[tuple[int, int], ...]


class Order(enum.Enum):
    LT = "<"
    EQ = "="
    GT = ">"
    INCOMPARABLE = "incomparable"

    def flip(self) -> "Order":
        return {Order.LT: Order.GT, Order.GT: Order.LT}.get(self, self)


class OrdinalError(ValueError):
    pass


def _cmp(a, b) -> Order:
    return Order.LT if a < b else Order.GT if a > b else Order.EQ


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple[Term, ...] = ()
    top: Optional[int] = None

    def __post_init__(self):
        if self.top is not None:
            if self.top not in (0, 1, 2) or self.terms:
                raise OrdinalError("TOP carries k in {0,1,2} and no terms")
            return
        prev = None
        for (j, k), c in self.terms:
            if j not in (0, 1, 2) or k < 0 or c < 1:
                raise OrdinalError(f"bad term {((j, k), c)}")
            if prev is not None and not (j, k) < prev:
                raise OrdinalError("exponents must strictly decrease")
            prev = (j, k)

    # ordering: tops above every triple
    def _key(self):
        if self.top is not None:
            return (1, self.top)
        return (0, _flat_key(self.terms))

    def __lt__(self, other: "Ordinal") -> bool:
        return self._key() < other._key()

    @property
    def is_top(self) -> bool:
        return self.top is not None

    @property
    def is_zero(self) -> bool:
        return self.top is None and not self.terms

    def part(self, j: int) -> OmegaPoly:
        return tuple((k, c) for (jj, k), c in self.terms if jj == j)

    @property
    def a2(self) -> OmegaPoly:
        return self.part(2)

    @property
    def a1(self) -> OmegaPoly:
        return self.part(1)

    @property
    def a0(self) -> OmegaPoly:
        return self.part(0)

    @property
    def finite(self) -> Optional[int]:
        """The value if the ordinal is a natural number, else None."""
        if self.top is not None:
            return None
        if not self.terms:
            return 0
        if len(self.terms) == 1 and self.terms[0][0] == (0, 0):
            return self.terms[0][1]
        return None

    @property
    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0] == (0, 0):
            return self.terms[-1][1]
        return 0

    def __add__(self, other: "Ordinal") -> "Ordinal":
        if self.top is not None or other.top is not None:
            raise OrdinalError("no addition above w^(w*3)")
        if not other.terms:
            return self
        lead = other.terms[0][0]
        head = [t for t in self.terms if t[0] > lead]
        same = [c for e, c in self.terms if e == lead]
        rest = list(other.terms)
        if same:
            rest[0] = (lead, rest[0][1] + same[0])
        return Ordinal(tuple(head + rest))

    def __str__(self) -> str:
        return ord_print(self)

    def __repr__(self) -> str:
        return f"Ordinal({ord_print(self)!r})"


def _flat_key(terms):
    # lexicographic on (exponent, coefficient) pairs; a longer list wins ties
    return tuple(terms)


ZERO = Ordinal()


def top(k: int = 0) -> Ordinal:
    return Ordinal(top=k)


def nat(n: int) -> Ordinal:
    if n < 0:
        raise OrdinalError("negative")
    return Ordinal(((((0, 0), n),) if n else ()))


def wpow(j: int, k: int = 0, c: int = 1) -> Ordinal:
    """w^(w*j + k) * c."""
    return Ordinal(((((j, k), c),)))


def from_parts(a2: OmegaPoly = (), a1: OmegaPoly = (), a0: OmegaPoly = ()) -> Ordinal:
    terms = [((2, k), c) for k, c in a2] + [((1, k), c) for k, c in a1] + [((0, k), c) for k, c in a0]
    return Ordinal(tuple(terms))


def ord_compare(a: Ordinal, b: Ordinal) -> Order:
    return _cmp(a._key(), b._key())


# ---------------------------------------------------------------- text form

def _print_exp(e: Exp) -> str:
    j, k = e
    if j == 0:
        return str(k)
    head = "w" if j == 1 else "w*2"
    return head if k == 0 else f"{head}+{k}"


def _print_term(term: Term) -> str:
    e, c = term
    if e == (0, 0):
        return str(c)
    base = "w" if e == (0, 1) else f"w^[{_print_exp(e)}]"
    return base if c == 1 else f"{base}*{c}"


def ord_print(a: Ordinal) -> str:
    if a.top is not None:
        return "TOP" if a.top == 0 else f"TOP+{a.top}"
    if not a.terms:
        return "0"
    return " + ".join(_print_term(t) for t in a.terms)


_NAT = r"(?:0|[1-9][0-9]*)"
_POS = r"[1-9][0-9]*"
_EXP = rf"(?:w\*2\+{_POS}|w\*2|w\+{_POS}|w|{_POS})"
_TERM = re.compile(rf"^(?:w\^\[(?P<exp>{_EXP})\](?:\*(?P<c1>{_POS}))?|w(?:\*(?P<c2>{_POS}))?|(?P<n>{_POS}))$")


def _parse_exp(s: str) -> Exp:
    if s.startswith("w*2"):
        return (2, int(s[4:]) if len(s) > 3 else 0)
    if s.startswith("w"):
        return (1, int(s[2:]) if len(s) > 1 else 0)
    return (0, int(s))


def ord_parse(text: str) -> Ordinal:
    if text in ("TOP", "TOP+1", "TOP+2"):
        return top(0 if text == "TOP" else int(text[-1]))
    if text == "0":
        return ZERO
    terms = []
    for chunk in text.split(" + "):
        m = _TERM.match(chunk)
        if not m:
            if re.match(r"^w\^\[w\*[3-9]", chunk) or re.match(r"^w\^\[w\*[0-9]{2,}", chunk):
                raise OrdinalError(f"exponent must be below w*3: {chunk!r}")
            raise OrdinalError(f"malformed term {chunk!r}")
        if m.group("exp") is not None:
            e, c = _parse_exp(m.group("exp")), int(m.group("c1") or 1)
        elif m.group("n") is not None:
            e, c = (0, 0), int(m.group("n"))
        else:
            e, c = (0, 1), int(m.group("c2") or 1)
        if terms and not e < terms[-1][0]:
            raise OrdinalError(f"exponents must strictly decrease at {chunk!r}")
        terms.append((e, c))
    return Ordinal(tuple(terms))


@dataclass(frozen=True)
class Decomposition:
    a2: OmegaPoly
    a1: OmegaPoly
    a0: OmegaPoly

    @staticmethod
    def leading(p: OmegaPoly) -> Optional[tuple[int, int]]:
        return p[0] if p else None

    @staticmethod
    def trailing(p: OmegaPoly) -> Optional[tuple[int, int]]:
        return p[-1] if p else None


def ord_decompose(a: Ordinal) -> Decomposition:
    if a.top is not None:
        raise OrdinalError("TOP values have no base-w^w presentation")
    return Decomposition(a.a2, a.a1, a.a0)


# ---------------------------------------------------------------- indices

@dataclass(frozen=True, order=True)
class Index:
    iota: int
    kappa: int

    def __post_init__(self):
        if self.iota not in (0, 1) or self.kappa < self.iota:
            raise OrdinalError(f"invalid index ({self.iota},{self.kappa})")

    @property
    def span(self) -> int:
        return self.kappa - self.iota

    def __str__(self) -> str:
        return f"({self.iota},{self.kappa})"


def index_from_chain(length: int, last_parity: int) -> Index:
    """Type of an alternating chain of the given length ending at the given parity."""
    iota = (last_parity - (length - 1)) % 2
    return Index(iota, iota + length - 1)


def index_dual(i: Index) -> Index:
    return Index(1, i.kappa + 1) if i.iota == 0 else Index(0, i.kappa - 1)


def index_compare(i1: Index, i2: Index) -> Order:
    if i1.span != i2.span:
        return _cmp(i1.span, i2.span)
    return Order.EQ if i1.iota == i2.iota else Order.INCOMPARABLE


def index_leq(i1: Index, i2: Index) -> bool:
    return index_compare(i1, i2) in (Order.LT, Order.EQ)


@lru_cache(maxsize=None)
def index_and(i1: Index, i2: Index) -> Index:
    def even(p):
        return p[0] % 2 == 0 and p[1] % 2 == 0

    cells = [(x, y) for x in range(i1.iota, i1.kappa + 1) for y in range(i2.iota, i2.kappa + 1)]
    best = {}
    for p in cells:  # product order is compatible with this enumeration order
        b = 1
        for q in cells:
            if q == p:
                break
            if q[0] <= p[0] and q[1] <= p[1] and even(q) != even(p):
                b = max(b, best[q] + 1)
        best[p] = b
    topcell = (i1.kappa, i2.kappa)
    return index_from_chain(best[topcell], 0 if even(topcell) else 1)


def all_terms(terms: Iterable[Term]) -> Ordinal:
    return Ordinal(tuple(terms))
