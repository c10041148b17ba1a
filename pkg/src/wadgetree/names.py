"""Canonical names and their closure algebra.

A name is a letter C, D or E with an ordinal. Below the three top names
every canonical automaton is an ordered chain of simple components glued
by sequential composition, lowest component first:

    finite part  (C1 / D1 / E1, repeated)
    branching    C_(w^k), k >= 1
    flowers      C/D/E_(w^(w+k))
    branching    C_(w^(w*2+k))

The ordinal of a chain is the ordinal sum of the component levels taken
from the last component to the first. The closure operations never look
at automata: they work on these chains.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .ordinals import (ZERO, Index, Order, Ordinal, OrdinalError, index_and, nat,
                       ord_compare, ord_parse, ord_print, top, wpow)


class NameError_(ValueError):
    """Raised for invalid names or undefined operations."""


@dataclass(frozen=True)
class CanonicalName:
    letter: str
    ordinal: Ordinal

    def __post_init__(self):
        if self.letter not in ("C", "D", "E"):
            raise NameError_(f"bad letter {self.letter!r}")

    @property
    def is_top(self) -> bool:
        return self.ordinal.is_top

    def __str__(self) -> str:
        return f"{self.letter}({ord_print(self.ordinal)})"

    def __repr__(self) -> str:
        return f"CanonicalName({str(self)!r})"


def _ord(x) -> Ordinal:
    return nat(x) if isinstance(x, int) else x


def C(x) -> CanonicalName:
    return CanonicalName("C", _ord(x))


def D(x) -> CanonicalName:
    return CanonicalName("D", _ord(x))


def E(x) -> CanonicalName:
    return CanonicalName("E", _ord(x))


C1, D1, E1 = C(1), D(1), E(1)
C2, D2, E2, C3, D3 = C(2), D(2), E(2), C(3), D(3)
F01 = C(wpow(1, 0))          # the (0,1)-flower
F12 = D(wpow(1, 0))          # the (1,2)-flower
F02 = C(wpow(1, 1))          # the (0,2)-flower
TOP0, TOP1, TOP2 = C(top(0)), C(top(1)), C(top(2))

_NAME = re.compile(r"^([CDE])\((.*)\)$")


def name_parse(text: str) -> CanonicalName:
    m = _NAME.match(text)
    if not m:
        raise NameError_(f"malformed name {text!r}")
    try:
        n = CanonicalName(m.group(1), ord_parse(m.group(2)))
    except OrdinalError as exc:
        raise NameError_(str(exc)) from None
    if not name_validate(n):
        raise NameError_(f"{text} is not a canonical name")
    return n


def name_print(n: CanonicalName) -> str:
    return str(n)


# ---------------------------------------------------------------- validity

def _in_J(a: Ordinal) -> bool:
    """Ordinals carrying D and E: finite ones, and those with a nonzero w^w part and finite tail."""
    if a.is_top or a.is_zero:
        return False
    branch0 = any(k > 0 for k, _ in a.a0)
    if a.a1:
        return not branch0
    return not a.a2 and not branch0


def name_validate(n: CanonicalName) -> bool:
    if not isinstance(n, CanonicalName):
        return False
    a = n.ordinal
    if n.letter == "C":
        return a.is_top or not a.is_zero
    return _in_J(a)


def _check(*names: CanonicalName, allow_top: bool = False):
    for n in names:
        if not name_validate(n):
            raise NameError_(f"invalid name {n}")
        if n.is_top and not allow_top:
            raise NameError_(f"operation undefined on {n}")


# ---------------------------------------------------------------- order

def name_leq(n1: CanonicalName, n2: CanonicalName) -> Order:
    _check(n1, n2, allow_top=True)
    o = ord_compare(n1.ordinal, n2.ordinal)
    if o is not Order.EQ:
        return o
    if n1.letter == n2.letter:
        return Order.EQ
    if n1.letter == "E":
        return Order.GT
    if n2.letter == "E":
        return Order.LT
    return Order.INCOMPARABLE


def _le(n1: CanonicalName, n2: CanonicalName) -> bool:
    return name_leq(n1, n2) in (Order.LT, Order.EQ)


def _lt(n1: CanonicalName, n2: CanonicalName) -> bool:
    return name_leq(n1, n2) is Order.LT


def name_max(names: Iterable[CanonicalName]) -> CanonicalName:
    out = None
    for n in names:
        out = n if out is None else or_name(out, n)
    if out is None:
        raise NameError_("empty alternative")
    return out


# ---------------------------------------------------------------- components

def _kind(s: CanonicalName) -> str:
    (j, k), c = s.ordinal.terms[0]
    if j == 0:
        return "fin" if k == 0 else "br0"
    return "fl" if j == 1 else "br2"


def is_simple(n: CanonicalName) -> bool:
    t = n.ordinal.terms
    return (not n.is_top and len(t) == 1 and t[0][1] == 1 and name_validate(n))


def is_branching(s: CanonicalName) -> bool:
    return _kind(s) in ("br0", "br2")


def flower_index(s: CanonicalName) -> Index:
    """Index of a simple C/D flower-type component (C1 and D1 included)."""
    kind = _kind(s)
    if kind == "fin":
        return Index(0, 0) if s.letter == "C" else Index(1, 1)
    if kind != "fl" or s.letter == "E":
        raise NameError_(f"{s} is not a flower")
    k = s.ordinal.terms[0][0][1]
    return Index(0, k + 1) if s.letter == "C" else Index(1, k + 2)


def flower_name(i: Index) -> CanonicalName:
    if i.kappa == i.iota:
        return C1 if i.iota == 0 else D1
    if i.iota == 0:
        return C(wpow(1, i.kappa - 1))
    return D(wpow(1, i.kappa - 2))


def _dual(s: CanonicalName) -> CanonicalName:
    return CanonicalName("D" if s.letter == "C" else "C", s.ordinal)


def _ascending(poly) -> list[tuple[int, int]]:
    return sorted(poly)


@lru_cache(maxsize=4096)
def _components(n: CanonicalName) -> tuple[CanonicalName, ...]:
    a = n.ordinal
    fin = a.finite_part
    br0 = [(k, c) for k, c in _ascending(a.a0) if k > 0]
    fl = _ascending(a.a1)
    br2 = _ascending(a.a2)
    L = n.letter
    out: list[CanonicalName] = []
    if fin:
        if not (br0 or fl or br2) or (fl and not br0):
            head = L
        else:
            head = "C" if fin % 2 else "D"
        out.append(CanonicalName(head, nat(1)))
        out.extend([E1] * (fin - 1))
    for k, c in br0:
        out.extend([C(wpow(0, k))] * c)
    first = True
    for k, c in fl:
        for _ in range(c):
            letter = L if (first and not fin and not br0) else "E"
            out.append(CanonicalName(letter, wpow(1, k)))
            first = False
    for k, c in br2:
        out.extend([C(wpow(2, k))] * c)
    return tuple(out)


def components(n: CanonicalName) -> list[CanonicalName]:
    _check(n)
    return list(_components(n))


def _chain_ordinal(comps: Sequence[CanonicalName]) -> Ordinal:
    total = ZERO
    for s in reversed(comps):
        total = total + s.ordinal
    return total


def recompose(comps: Sequence[CanonicalName]) -> CanonicalName:
    if not comps:
        raise NameError_("empty component list")
    total = _chain_ordinal(comps)
    for letter in "CDE":
        cand = CanonicalName(letter, total)
        if name_validate(cand) and _components(cand) == tuple(comps):
            return cand
    raise NameError_("not a canonical chain: " + ", ".join(map(str, comps)))


def tail_name(comps: Sequence[CanonicalName]) -> Optional[CanonicalName]:
    """Canonical name of the sequential composition of the given components."""
    if not comps:
        return None
    acc = comps[-1]
    for s in reversed(comps[:-1]):
        acc = _simple_oplus(s, acc)
    return acc


# ---------------------------------------------------------------- alternative

def or_name(n1: CanonicalName, n2: CanonicalName) -> CanonicalName:
    o = name_leq(n1, n2)
    if o is Order.INCOMPARABLE:
        return E(n1.ordinal)
    return n2 if o in (Order.LT, Order.EQ) else n1


# ---------------------------------------------------------------- sequential composition

def _tail_from(comps: Sequence[CanonicalName], s: CanonicalName) -> list[CanonicalName]:
    for i, c in enumerate(comps):
        if _le(s, c):
            return list(comps[i:])
    raise NameError_(f"no component above {s}")


@lru_cache(maxsize=65536)
def _simple_oplus(s: CanonicalName, b: CanonicalName) -> CanonicalName:
    if s.letter == "E":
        return or_name(_simple_oplus(C(s.ordinal), b), _simple_oplus(D(s.ordinal), b))
    bc = _components(b)
    if is_branching(s):
        if _lt(b, s):
            return s
        tail = _tail_from(bc, s)
        if _kind(tail[0]) == "fl" and tail[0].letter != "E":
            return recompose(tail)
        return recompose([s] + tail)
    trivial = _kind(s) == "fin"
    if not trivial and _lt(b, s):
        return s
    b1 = bc[0]
    if b1 == _dual(s):
        return recompose([s, E(s.ordinal)] + list(bc[1:]))
    if _le(s, b1):
        if is_branching(b1):
            # a rejecting head waits in the branching head loop; anything that can accept
            # while staying put cannot be simulated there
            return b if s == D1 else recompose([s] + list(bc))
        if b1.letter == "E":
            return recompose([s] + list(bc))
        return b
    return _simple_oplus(s, recompose(_tail_from(bc, s)))


def oplus_name(n1: CanonicalName, n2: CanonicalName) -> CanonicalName:
    _check(n1, n2)
    acc = n2
    for s in reversed(_components(n1)):
        acc = _simple_oplus(s, acc)
    return acc


def _oplus_opt(n1: CanonicalName, n2: Optional[CanonicalName]) -> CanonicalName:
    return n1 if n2 is None else oplus_name(n1, n2)


# ---------------------------------------------------------------- B^- prefix

def bminus_oplus_name(band: CanonicalName, rest: Optional[CanonicalName] = None) -> CanonicalName:
    """Name of (D1 -> X) + rest, where band = C1 -> X is simple branching."""
    _check(band)
    if not (is_simple(band) and is_branching(band)):
        raise NameError_(f"{band} is not a simple branching name")
    if rest is None:
        return D1  # the prefix alone accepts nothing
    _check(rest)
    return _bminus(band, rest)


@lru_cache(maxsize=65536)
def _bminus(band: CanonicalName, rest: CanonicalName) -> CanonicalName:
    comps = _components(rest)
    s, tail = comps[0], tail_name(comps[1:])
    if is_branching(s):
        return _oplus_opt(s if _le(band, s) else band, tail)
    if _kind(s) == "fl":
        return rest if _kind(band) == "br0" else _oplus_opt(band, tail)
    if s.letter == "D":
        return D1 if tail is None else _bminus(band, tail)
    return _oplus_opt(band, tail)


# ---------------------------------------------------------------- parallel composition

@lru_cache(maxsize=65536)
def _and(a: CanonicalName, b: CanonicalName) -> CanonicalName:
    if a == C1:
        return b
    if b == C1:
        return a
    if a.letter == "E":
        return or_name(_and(C(a.ordinal), b), _and(D(a.ordinal), b))
    if b.letter == "E":
        return or_name(_and(a, C(b.ordinal)), _and(a, D(b.ordinal)))
    ac, bc = _components(a), _components(b)
    a1, b1 = ac[0], bc[0]
    if is_branching(a1) or is_branching(b1):
        if not is_branching(b1) or (is_branching(a1) and _lt(b1, a1)):
            a, b, ac, bc, a1, b1 = b, a, bc, ac, b1, a1
        at, bt = tail_name(ac[1:]), tail_name(bc[1:])
        if at is not None and bt is not None:
            inner = or_name(_and(at, b), _and(a, oplus_name(C1, bt)))
        elif bt is not None:
            inner = _and(a, oplus_name(C1, bt))
        elif at is not None:
            inner = or_name(_and(at, b), a)
        else:
            inner = a
        return _bminus(b1, inner)
    f = flower_name(index_and(flower_index(a1), flower_index(b1)))
    at, bt = tail_name(ac[1:]), tail_name(bc[1:])
    if at is not None and bt is not None:
        return oplus_name(f, or_name(_and(a, bt), _and(at, b)))
    if at is not None:
        return oplus_name(f, _and(at, b))
    if bt is not None:
        return oplus_name(f, _and(a, bt))
    return f


def and_name(n1: CanonicalName, n2: CanonicalName) -> CanonicalName:
    _check(n1, n2)
    return _and(n1, n2)


# ---------------------------------------------------------------- replication

def _band_above(b: CanonicalName) -> CanonicalName:
    """Least simple branching name of the right band that is >= b."""
    a = b.ordinal
    if not a.a1 and not a.a2:
        lead = a.terms[0][0][1]
        k = max(1, lead if a == wpow(0, lead) else lead + 1)
        return C(wpow(0, k))
    lead_j, lead_k = a.terms[0][0]
    if lead_j < 2:
        return C(wpow(2, 0))
    return C(wpow(2, lead_k if a == wpow(2, lead_k) else lead_k + 1))


def arrow_name(n1: CanonicalName, n2: CanonicalName) -> CanonicalName:
    _check(n1, n2)
    return _arrow(n1, n2)


@lru_cache(maxsize=65536)
def _arrow(a: CanonicalName, b: CanonicalName) -> CanonicalName:
    if b == D1:
        return or_name(a, D1)
    if b == E2:
        return _arrow(a, D3)
    if b in (C1, E1, C2, D2, D3):
        return _and(oplus_name(D1, a), b)
    o = b.ordinal
    if (o.a1 or o.a2) and not _le(F02, b):
        head = _and(oplus_name(D1, a), F01) if b != F12 else None
        if b == F01:
            return head
        if b == F12:
            return _and(oplus_name(D1, a), F12)
        return _and(head, F12)
    return _bminus(_band_above(b), a)


# ---------------------------------------------------------------- flower replication

def contains_flower_name(n: CanonicalName, i: Index) -> bool:
    """Does the canonical automaton of n contain an i-flower (i one of (0,1), (1,2), (0,2))?"""
    return _le({Index(0, 1): F01, Index(1, 2): F12, Index(0, 2): F02}[i], n)


def admits_d2(n: CanonicalName) -> bool:
    return _le(D2, n)


def krep_name(base: CanonicalName, idx: Index, reps: Sequence[CanonicalName]) -> CanonicalName:
    reps = tuple(reps)
    if len(reps) != idx.kappa - idx.iota + 1:
        raise NameError_(f"{idx} replication takes {idx.kappa - idx.iota + 1} automata, got {len(reps)}")
    _check(base, *reps, allow_top=True)
    return _krep(base, idx, reps)


def _top_escape(base, idx: Index, reps) -> Optional[CanonicalName]:
    level = -1
    for n in (base,) + reps:
        if n.is_top:
            level = max(level, n.ordinal.top)
    for i, n in zip(range(idx.iota, idx.kappa + 1), reps):
        if (i % 2 == 0 or i < idx.kappa) and contains_flower_name(n, Index(0, 1)):
            level = max(level, 1)
        if idx.iota < idx.kappa and contains_flower_name(n, Index(0, 2)):
            level = max(level, 0)
    return C(top(level)) if level >= 0 else None


def _without_dead_petals(base, idx: Index, reps):
    """A loop replicating the empty language can never be taken: drop it and re-index."""
    alive = [(j, n) for j, n in zip(range(idx.iota, idx.kappa + 1), reps) if n != D1]
    exits = or_name(base, D1)
    if not alive:
        return or_name(exits, C1 if idx.iota % 2 == 0 else D1), None, ()
    if idx.iota % 2 == 0 or alive[-1][0] > idx.iota:
        exits = or_name(exits, C1)
    groups: list[list[CanonicalName]] = []
    for pos, (j, n) in enumerate(alive):
        if pos and alive[pos - 1][0] % 2 == j % 2:
            groups[-1].append(n)
        else:
            groups.append([n])
    g, p = len(groups), alive[-1][0] % 2
    kappa = g - 1 if (g - 1) % 2 == p else g
    return exits, Index(kappa - g + 1, kappa), tuple(name_max(grp) for grp in groups)


@lru_cache(maxsize=16384)
def _krep(base, idx: Index, reps) -> CanonicalName:
    if D1 in reps:
        base, idx, reps = _without_dead_petals(base, idx, reps)
        if idx is None:
            return base
    if idx == Index(1, 1) and base == D1:
        return D1  # the rejecting head loop has no way out
    esc = _top_escape(base, idx, reps)
    if esc is not None:
        return esc
    if idx.iota == idx.kappa:
        if idx.kappa % 2 == 1:
            return _arrow(base, reps[0])
        a0 = reps[0]
        if contains_flower_name(a0, Index(1, 2)) or admits_d2(a0):
            return _and(oplus_name(C1, base), F12)
        if a0 in (C1, D1, C2):
            return _and(oplus_name(C1, base), a0)
        if a0 == E1:
            return oplus_name(C1, or_name(base, C1))
        raise NameError_(f"unexpected (0,0) replica {a0}")
    f = flower_name(idx)
    has01 = any(contains_flower_name(n, Index(0, 1)) for n in reps)
    has12 = any(contains_flower_name(n, Index(1, 2)) for n in reps)
    if has01 and has12:
        return _and(_and(oplus_name(f, base), F12), F01)
    if has12:
        return _and(oplus_name(f, base), F12)
    if has01:
        return _and(_krep(base, idx, reps[:-1] + (C1,)), F01)
    if idx.iota == 0 and admits_d2(reps[0]):
        return _and(oplus_name(f, base), F12)
    return oplus_name(f, base)
