"""Finite partial values and the definedness order.

A partial value is a finite constructor tree whose leaves may be bottom.
Two flavours of bottom are kept apart: a *definite* bottom is a value we
have proven to be undefined (a crash, a failed pattern match, an explicit
``error``), while an *indefinite* leaf records that evaluation gave up
(fuel ran out, or the observation depth was reached) and the value there
is simply unknown.  Definite bottom is the least element of the order;
indefinite leaves are not values at all and taint any comparison whose
outcome they could still change.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Tag(enum.Enum):
    """Constructor tags, in canonical enumeration order."""

    NIL = ("[]", 0)
    CONS = (":", 2)
    TRUE = ("True", 0)
    FALSE = ("False", 0)
    NOTHING = ("Nothing", 0)
    JUST = ("Just", 1)
    PAIR = ("(,)", 2)
    UNIT = ("()", 0)
    LT = ("LT", 0)
    EQ = ("EQ", 0)
    GT = ("GT", 0)

    def __init__(self, label: str, arity: int):
        self.label = label
        self.arity = arity


# Position of each tag within its data type, for the Ord instances the
# evaluator implements ([] < (:), False < True, Nothing < Just, LT < EQ < GT).
ORD_INDEX = {
    Tag.NIL: 0,
    Tag.CONS: 1,
    Tag.FALSE: 0,
    Tag.TRUE: 1,
    Tag.NOTHING: 0,
    Tag.JUST: 1,
    Tag.PAIR: 0,
    Tag.UNIT: 0,
    Tag.LT: 0,
    Tag.EQ: 1,
    Tag.GT: 2,
}


class Cause(enum.Enum):
    FUEL_EXHAUSTED = "fuel exhausted"
    DEPTH_TRUNCATED = "depth truncated"


class PValue:
    """Base class for partial values."""

    __slots__ = ()


@dataclass(frozen=True)
class Bottom(PValue):
    """Definite bottom: the unique least element of every type.

    The reason is diagnostic metadata only; bottom is one value, so two
    bottoms are equal whatever crashed to produce them.
    """

    reason: str = field(default="undefined", compare=False)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Indefinite(PValue):
    """Unknown subvalue: evaluation stopped before deciding it."""

    cause: Cause

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class IntVal(PValue):
    value: int

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class CharVal(PValue):
    value: str

    def __post_init__(self) -> None:
        if len(self.value) != 1:
            raise ValueError(f"CharVal wants a single character, got {self.value!r}")

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Con(PValue):
    tag: Tag
    children: tuple[PValue, ...] = ()

    def __post_init__(self) -> None:
        if len(self.children) != self.tag.arity:
            raise ValueError(
                f"{self.tag.label} wants {self.tag.arity} children, got {len(self.children)}"
            )

    def __str__(self) -> str:
        return render(self)


BOTTOM = Bottom()
NIL = Con(Tag.NIL)
TRUE = Con(Tag.TRUE)
FALSE = Con(Tag.FALSE)
NOTHING = Con(Tag.NOTHING)
UNIT = Con(Tag.UNIT)


def cons(head: PValue, tail: PValue) -> Con:
    return Con(Tag.CONS, (head, tail))


def just(v: PValue) -> Con:
    return Con(Tag.JUST, (v,))


def pair(a: PValue, b: PValue) -> Con:
    return Con(Tag.PAIR, (a, b))


def from_bool(b: bool) -> Con:
    return TRUE if b else FALSE


def from_list(items: list[PValue] | tuple[PValue, ...], tail: PValue = NIL) -> PValue:
    out = tail
    for item in reversed(items):
        out = cons(item, out)
    return out


class Relation(enum.Enum):
    EQUAL = "Equal"
    STRICTLY_LESS = "StrictlyLess"
    STRICTLY_GREATER = "StrictlyGreater"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class OrderResult:
    relation: Relation
    definite: bool

    def __str__(self) -> str:
        return f"{self.relation.value} ({'definite' if self.definite else 'indefinite'})"


class ValueMismatch(Exception):
    """Values of different types reached a comparison: an internal bug."""


_E = Relation.EQUAL
_L = Relation.STRICTLY_LESS
_G = Relation.STRICTLY_GREATER
_I = Relation.INCOMPARABLE

_ALL = frozenset((_E, _L, _G, _I))


def _combine(a: Relation, b: Relation) -> Relation:
    if a is _E:
        return b
    if b is _E or a is b:
        return a
    return _I


def _point_relation(a: PValue, b: PValue) -> Relation:
    """Relation with every indefinite leaf read as bottom."""
    a_bot = isinstance(a, (Bottom, Indefinite))
    b_bot = isinstance(b, (Bottom, Indefinite))
    if a_bot and b_bot:
        return _E
    if a_bot:
        return _L
    if b_bot:
        return _G
    if isinstance(a, IntVal) and isinstance(b, IntVal):
        return _E if a.value == b.value else _I
    if isinstance(a, CharVal) and isinstance(b, CharVal):
        return _E if a.value == b.value else _I
    if isinstance(a, Con) and isinstance(b, Con):
        if a.tag is not b.tag:
            return _I
        rel = _E
        for ca, cb in zip(a.children, b.children):
            rel = _combine(rel, _point_relation(ca, cb))
        return rel
    raise ValueMismatch(f"cannot compare {a!r} with {b!r}")


def is_fully_defined(v: PValue) -> bool:
    """No bottom and no indefinite leaf anywhere: the value is maximal."""
    if isinstance(v, (Bottom, Indefinite)):
        return False
    if isinstance(v, Con):
        return all(is_fully_defined(c) for c in v.children)
    return True


def _possible(a: PValue, b: PValue) -> frozenset[Relation]:
    """All relations reachable by refining the indefinite leaves of a and b.

    Sets may be over-approximated (never under-approximated), which only
    matters for whether they are singletons; slack beyond two elements is
    harmless.
    """
    a_ind = isinstance(a, Indefinite)
    b_ind = isinstance(b, Indefinite)
    if a_ind and b_ind:
        return _ALL
    if a_ind:
        if isinstance(b, Bottom):
            return frozenset((_E, _G))
        rels = {_L, _E, _I}
        if not is_fully_defined(b):
            rels.add(_G)
        return frozenset(rels)
    if b_ind:
        if isinstance(a, Bottom):
            return frozenset((_E, _L))
        rels = {_G, _E, _I}
        if not is_fully_defined(a):
            rels.add(_L)
        return frozenset(rels)
    if isinstance(a, Bottom):
        return frozenset((_E,)) if isinstance(b, Bottom) else frozenset((_L,))
    if isinstance(b, Bottom):
        return frozenset((_G,))
    if isinstance(a, Con) and isinstance(b, Con):
        if a.tag is not b.tag:
            return frozenset((_I,))
        combos = {_E}
        for ca, cb in zip(a.children, b.children):
            child = _possible(ca, cb)
            combos = {_combine(r, c) for r in combos for c in child}
        return frozenset(combos)
    # Atoms carry no indefinite leaves; the point relation is final.
    return frozenset((_point_relation(a, b),))


def compare_values(a: PValue, b: PValue) -> OrderResult:
    """Compare two partial values under the definedness order.

    The reported relation reads indefinite leaves as bottom; the result is
    definite exactly when no refinement of an indefinite leaf could change
    that relation.
    """
    relation = _point_relation(a, b)
    definite = len(_possible(a, b)) == 1
    return OrderResult(relation, definite)


def truncate(v: PValue, depth: int) -> PValue:
    """Replace constructors nested deeper than ``depth`` with indefinite leaves.

    Atoms and bottoms pass through: depth bounds structure, not leaf size.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if isinstance(v, Con):
        if depth == 0:
            return Indefinite(Cause.DEPTH_TRUNCATED)
        return Con(v.tag, tuple(truncate(c, depth - 1) for c in v.children))
    return v


def _render_atomish(v: PValue) -> str:
    text = render(v)
    if isinstance(v, Con) and v.children and v.tag is not Tag.PAIR and not text.startswith("["):
        return f"({text})"
    if isinstance(v, IntVal) and v.value < 0:
        return f"({text})"
    return text


def render(v: PValue) -> str:
    """Canonical textual form: ``_|_`` for bottom, ``?`` for indefinite,
    list sugar where the spine is fully defined."""
    if isinstance(v, Bottom):
        return "_|_"
    if isinstance(v, Indefinite):
        return "?"
    if isinstance(v, IntVal):
        return str(v.value)
    if isinstance(v, CharVal):
        return "'" + v.value.replace("\\", "\\\\").replace("'", "\\'") + "'"
    assert isinstance(v, Con)
    if v.tag is Tag.CONS:
        items: list[str] = []
        node: PValue = v
        while isinstance(node, Con) and node.tag is Tag.CONS:
            items.append(_render_atomish(node.children[0]))
            node = node.children[1]
        if isinstance(node, Con) and node.tag is Tag.NIL:
            return "[" + ", ".join(items) + "]"
        return " : ".join(items + [render(node)])
    if v.tag is Tag.PAIR:
        return f"({render(v.children[0])}, {render(v.children[1])})"
    if v.tag is Tag.JUST:
        return f"Just {_render_atomish(v.children[0])}"
    return v.tag.label
