"""Bounded-exhaustive enumeration of partial values in minimality order.

Every value of rank at most the configured bound is produced exactly
once, ordered by (rank, constructor count, canonical value order), so
the first element satisfying a predicate is a minimal witness.  Rank
gives bottom 0 and atoms 1, which puts spine-partial lists like
``_|_ : _|_`` ahead of fully defined lists of the same length.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .domain import BOTTOM, CharVal, Con, IntVal, PValue, Tag
from .typecheck import BOOL, CHAR, INTEGER, ORDERING, TCon, TList, TMaybe, TPair, Type, UNIT


class UnsupportedType(Exception):
    pass


@dataclass(frozen=True)
class EnumConfig:
    depth: int = 3
    ints: tuple[int, ...] = (-1, 0, 1, 2)
    chars: tuple[str, ...] = ("a", "b")

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise ValueError("depth must be non-negative")
        if not self.ints or not self.chars:
            raise ValueError("atom pools must be non-empty")

    @property
    def canonical_ints(self) -> tuple[int, ...]:
        # Small-magnitude first, positive before negative: 0, 1, -1, 2, ...
        return tuple(sorted(set(self.ints), key=lambda n: (abs(n), n < 0)))

    @property
    def canonical_chars(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.chars)))


_TAG_INDEX = {tag: i for i, tag in enumerate(Tag)}


def rank(v: PValue) -> int:
    if isinstance(v, (IntVal, CharVal)):
        return 1
    if isinstance(v, Con):
        if not v.children:
            return 1
        return 1 + max(rank(c) for c in v.children)
    return 0  # definite or indefinite bottom


def con_count(v: PValue) -> int:
    if isinstance(v, Con):
        return 1 + sum(con_count(c) for c in v.children)
    return 0


def canonical_key(v: PValue):
    if isinstance(v, IntVal):
        return (1, abs(v.value), v.value < 0)
    if isinstance(v, CharVal):
        return (1, ord(v.value), False)
    if isinstance(v, Con):
        return (2, _TAG_INDEX[v.tag]) + tuple(canonical_key(c) for c in v.children)
    return (0,)


_RANK_CACHE: dict[tuple[Type, int, EnumConfig], tuple[PValue, ...]] = {}


def _values_of_rank(t: Type, r: int, cfg: EnumConfig) -> tuple[PValue, ...]:
    key = (t, r, cfg)
    cached = _RANK_CACHE.get(key)
    if cached is not None:
        return cached

    out: list[PValue] = []
    if r == 0:
        out = [BOTTOM]
    elif isinstance(t, TCon):
        if t not in (INTEGER, CHAR, BOOL, UNIT, ORDERING):
            raise UnsupportedType(f"cannot enumerate {t}")
        if r == 1:
            if t == INTEGER:
                out = [IntVal(n) for n in cfg.canonical_ints]
            elif t == CHAR:
                out = [CharVal(c) for c in cfg.canonical_chars]
            elif t == BOOL:
                out = [Con(Tag.TRUE), Con(Tag.FALSE)]
            elif t == UNIT:
                out = [Con(Tag.UNIT)]
            else:
                out = [Con(Tag.LT), Con(Tag.EQ), Con(Tag.GT)]
        # atoms and nullary constructors have no values of higher rank
    elif isinstance(t, TList):
        if r == 1:
            out.append(Con(Tag.NIL))
        for rh in range(r):
            for rt in range(r):
                if max(rh, rt) != r - 1:
                    continue
                for h in _values_of_rank(t.elem, rh, cfg):
                    for tl in _values_of_rank(t, rt, cfg):
                        out.append(Con(Tag.CONS, (h, tl)))
    elif isinstance(t, TPair):
        for ra in range(r):
            for rb in range(r):
                if max(ra, rb) != r - 1:
                    continue
                for a in _values_of_rank(t.first, ra, cfg):
                    for b in _values_of_rank(t.second, rb, cfg):
                        out.append(Con(Tag.PAIR, (a, b)))
    elif isinstance(t, TMaybe):
        if r == 1:
            out.append(Con(Tag.NOTHING))
        for x in _values_of_rank(t.elem, r - 1, cfg):
            out.append(Con(Tag.JUST, (x,)))
    else:
        raise UnsupportedType(f"cannot enumerate {t}")

    out.sort(key=lambda v: (con_count(v), canonical_key(v)))
    result = tuple(out)
    _RANK_CACHE[key] = result
    return result


def enum_values(t: Type, cfg: EnumConfig = EnumConfig()) -> Iterator[PValue]:
    """All partial values of ``t`` with rank <= cfg.depth, minimal first.

    Only definite bottoms appear; indefinite leaves are never generated.
    """
    # Validate the type shape up front so errors surface before iteration.
    _values_of_rank(t, min(1, cfg.depth), cfg)
    for r in range(cfg.depth + 1):
        yield from _values_of_rank(t, r, cfg)


def enum_valuations(
    variables: dict[str, Type], cfg: EnumConfig = EnumConfig()
) -> Iterator[dict[str, PValue]]:
    """Cartesian product of per-variable enumerations.

    Ordered by total rank, then lexicographically in the per-variable
    sequences (variables in name order); exhaustive and duplicate-free.
    """
    names = sorted(variables)
    if not names:
        yield {}
        return
    buckets = {
        name: [_values_of_rank(variables[name], r, cfg) for r in range(cfg.depth + 1)]
        for name in names
    }
    n = len(names)

    def go(i: int, remaining: int, acc: dict[str, PValue]) -> Iterator[dict[str, PValue]]:
        name = names[i]
        if i == n - 1:
            if remaining <= cfg.depth:
                for v in buckets[name][remaining]:
                    acc[name] = v
                    yield dict(acc)
            return
        rest_capacity = (n - 1 - i) * cfg.depth
        for r in range(min(cfg.depth, remaining) + 1):
            if remaining - r > rest_capacity:
                continue
            for v in buckets[name][r]:
                acc[name] = v
                yield from go(i + 1, remaining - r, acc)

    for total in range(n * cfg.depth + 1):
        yield from go(0, total, {})
