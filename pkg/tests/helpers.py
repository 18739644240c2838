"""Shared test utilities: generators and independently written oracles.

The oracles here deliberately re-derive behaviour from first principles
(straightforward recursion, brute-force search) rather than reusing the
code under test.
"""
from __future__ import annotations

import random

from hintcheck.domain import (
    BOTTOM,
    Bottom,
    CharVal,
    Con,
    Indefinite,
    IntVal,
    PValue,
    Tag,
)
from hintcheck.syntax import (
    App,
    CharLit,
    Expr,
    Ident,
    IntLit,
    Lambda,
    ListLit,
    MetaVar,
    TupleLit,
)
from hintcheck.typecheck import (
    BOOL,
    CHAR,
    INTEGER,
    ORDERING,
    UNIT,
    TCon,
    TFun,
    TList,
    TMaybe,
    TPair,
    TVar,
    Type,
)

# ---------------------------------------------------------------------------
# Random normalized expressions (for parse/pretty round-trips)

_IDENTS = [
    "reverse", "sort", "head", "tail", "length", "map", "filter", "foldr",
    "isPrefixOf", "take", "drop", "fromMaybe", "id", "const", "xs", "ys",
    "value", "Just", "Nothing", "True", "False",
]
_OPS = ["++", "!!", "==", "/=", "<", "<=", ">", ">=", "&&", "||", "+", "-", "*", ":"]
_CHARS = ["a", "b", "z", "'", "\\", "\n"]


def random_expr(rng: random.Random, depth: int = 4) -> Expr:
    """A random expression already in normal form (no $, no raw strings)."""
    atoms = ["metavar", "ident", "int", "char", "opname"]
    if depth <= 0:
        kind = rng.choice(atoms)
    else:
        kind = rng.choice(atoms + ["list", "string", "tuple", "app", "opapp", "lambda"])
    if kind == "metavar":
        return MetaVar(rng.choice("abcdefgxyz"))
    if kind == "ident":
        return Ident(rng.choice(_IDENTS))
    if kind == "int":
        return IntLit(rng.randint(-3, 3))
    if kind == "char":
        return CharLit(rng.choice(_CHARS))
    if kind == "opname":
        return Ident(rng.choice(_OPS))
    if kind == "list":
        return ListLit(tuple(random_expr(rng, depth - 1) for _ in range(rng.randint(0, 3))))
    if kind == "string":
        n = rng.randint(1, 4)
        return ListLit(tuple(CharLit(rng.choice(_CHARS)) for _ in range(n)))
    if kind == "tuple":
        return TupleLit(random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    if kind == "app":
        return App(random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    if kind == "opapp":
        op = Ident(rng.choice(_OPS))
        return App(App(op, random_expr(rng, depth - 1)), random_expr(rng, depth - 1))
    return Lambda(rng.choice(["x", "y", "acc"]), random_expr(rng, depth - 1))


# ---------------------------------------------------------------------------
# Random partial values

_SUPPORTED_TYPES = [
    INTEGER,
    BOOL,
    CHAR,
    ORDERING,
    TList(INTEGER),
    TList(BOOL),
    TMaybe(INTEGER),
    TPair(INTEGER, BOOL),
    TList(TList(INTEGER)),
]


def random_type(rng: random.Random) -> Type:
    return rng.choice(_SUPPORTED_TYPES)


def random_pvalue(rng: random.Random, t: Type, depth: int = 3, indefinite: bool = False) -> PValue:
    """A random partial value of type t, with bottoms sprinkled in."""
    if rng.random() < 0.25:
        if indefinite and rng.random() < 0.5:
            from hintcheck.domain import Cause

            return Indefinite(rng.choice(list(Cause)))
        return BOTTOM
    if t == INTEGER:
        return IntVal(rng.randint(-2, 2))
    if t == CHAR:
        return CharVal(rng.choice("ab"))
    if t == BOOL:
        return Con(rng.choice((Tag.TRUE, Tag.FALSE)))
    if t == ORDERING:
        return Con(rng.choice((Tag.LT, Tag.EQ, Tag.GT)))
    if t == UNIT:
        return Con(Tag.UNIT)
    if isinstance(t, TList):
        if depth <= 0 or rng.random() < 0.3:
            return Con(Tag.NIL)
        return Con(
            Tag.CONS,
            (
                random_pvalue(rng, t.elem, depth - 1, indefinite),
                random_pvalue(rng, t, depth - 1, indefinite),
            ),
        )
    if isinstance(t, TMaybe):
        if rng.random() < 0.4:
            return Con(Tag.NOTHING)
        return Con(Tag.JUST, (random_pvalue(rng, t.elem, depth - 1, indefinite),))
    if isinstance(t, TPair):
        return Con(
            Tag.PAIR,
            (
                random_pvalue(rng, t.first, depth - 1, indefinite),
                random_pvalue(rng, t.second, depth - 1, indefinite),
            ),
        )
    raise AssertionError(f"no generator for {t}")


# ---------------------------------------------------------------------------
# Enumeration oracle: a separate, direct recursion over "rank <= d"


def oracle_values(t: Type, d: int, ints: tuple[int, ...], chars: tuple[str, ...]) -> set[PValue]:
    """Every value of rank at most d, built by plain structural recursion."""
    if d < 0:
        return set()
    out: set[PValue] = {BOTTOM}
    if d >= 1:
        if t == INTEGER:
            out |= {IntVal(n) for n in ints}
        elif t == CHAR:
            out |= {CharVal(c) for c in chars}
        elif t == BOOL:
            out |= {Con(Tag.TRUE), Con(Tag.FALSE)}
        elif t == ORDERING:
            out |= {Con(Tag.LT), Con(Tag.EQ), Con(Tag.GT)}
        elif t == UNIT:
            out |= {Con(Tag.UNIT)}
        elif isinstance(t, TList):
            out.add(Con(Tag.NIL))
            heads = oracle_values(t.elem, d - 1, ints, chars)
            tails = oracle_values(t, d - 1, ints, chars)
            out |= {Con(Tag.CONS, (h, tl)) for h in heads for tl in tails}
        elif isinstance(t, TMaybe):
            out.add(Con(Tag.NOTHING))
            out |= {Con(Tag.JUST, (x,)) for x in oracle_values(t.elem, d - 1, ints, chars)}
        elif isinstance(t, TPair):
            firsts = oracle_values(t.first, d - 1, ints, chars)
            seconds = oracle_values(t.second, d - 1, ints, chars)
            out |= {Con(Tag.PAIR, (a, b)) for a in firsts for b in seconds}
        else:
            raise AssertionError(f"no oracle for {t}")
    return out


# ---------------------------------------------------------------------------
# Type matching (for the most-general-unifier check)


def match_type(pattern: Type, target: Type, binding: dict[int, Type]) -> bool:
    """Can pattern be instantiated to target by substituting its variables?"""
    if isinstance(pattern, TVar):
        bound = binding.get(pattern.id)
        if bound is None:
            binding[pattern.id] = target
            return True
        return bound == target
    if isinstance(pattern, TCon):
        return pattern == target
    if isinstance(pattern, TList) and isinstance(target, TList):
        return match_type(pattern.elem, target.elem, binding)
    if isinstance(pattern, TMaybe) and isinstance(target, TMaybe):
        return match_type(pattern.elem, target.elem, binding)
    if isinstance(pattern, TPair) and isinstance(target, TPair):
        return match_type(pattern.first, target.first, binding) and match_type(
            pattern.second, target.second, binding
        )
    if isinstance(pattern, TFun) and isinstance(target, TFun):
        return match_type(pattern.arg, target.arg, binding) and match_type(
            pattern.result, target.result, binding
        )
    return False


def apply_mapping(t: Type, mapping: dict[int, Type]) -> Type:
    if isinstance(t, TVar):
        return mapping.get(t.id, t)
    if isinstance(t, TList):
        return TList(apply_mapping(t.elem, mapping))
    if isinstance(t, TMaybe):
        return TMaybe(apply_mapping(t.elem, mapping))
    if isinstance(t, TPair):
        return TPair(apply_mapping(t.first, mapping), apply_mapping(t.second, mapping))
    if isinstance(t, TFun):
        return TFun(apply_mapping(t.arg, mapping), apply_mapping(t.result, mapping))
    return t


def random_small_type(rng: random.Random, depth: int = 2) -> Type:
    kinds = ["int", "bool", "var"]
    if depth > 0:
        kinds += ["list", "maybe", "pair", "fun"]
    kind = rng.choice(kinds)
    if kind == "int":
        return INTEGER
    if kind == "bool":
        return BOOL
    if kind == "var":
        return TVar(rng.randint(0, 2))
    if kind == "list":
        return TList(random_small_type(rng, depth - 1))
    if kind == "maybe":
        return TMaybe(random_small_type(rng, depth - 1))
    if kind == "pair":
        return TPair(random_small_type(rng, depth - 1), random_small_type(rng, depth - 1))
    return TFun(random_small_type(rng, depth - 1), random_small_type(rng, depth - 1))


# Ground types a brute-force substitution may assign to a variable.
BRUTE_TYPES: list[Type] = [
    INTEGER,
    BOOL,
    TList(INTEGER),
    TList(BOOL),
    TMaybe(INTEGER),
    TVar(0),
    TVar(1),
    TVar(2),
]


def type_is_ground_for(v: PValue, t: Type) -> bool:
    """Does the value structurally belong to the (ground) type?"""
    if isinstance(v, (Bottom, Indefinite)):
        return True
    if isinstance(v, IntVal):
        return t == INTEGER
    if isinstance(v, CharVal):
        return t == CHAR
    assert isinstance(v, Con)
    if v.tag in (Tag.TRUE, Tag.FALSE):
        return t == BOOL
    if v.tag in (Tag.LT, Tag.EQ, Tag.GT):
        return t == ORDERING
    if v.tag is Tag.UNIT:
        return t == UNIT
    if v.tag is Tag.NIL:
        return isinstance(t, TList)
    if v.tag is Tag.CONS:
        return (
            isinstance(t, TList)
            and type_is_ground_for(v.children[0], t.elem)
            and type_is_ground_for(v.children[1], t)
        )
    if v.tag is Tag.NOTHING:
        return isinstance(t, TMaybe)
    if v.tag is Tag.JUST:
        return isinstance(t, TMaybe) and type_is_ground_for(v.children[0], t.elem)
    if v.tag is Tag.PAIR:
        return (
            isinstance(t, TPair)
            and type_is_ground_for(v.children[0], t.first)
            and type_is_ground_for(v.children[1], t.second)
        )
    return False


def contains_indefinite(v: PValue) -> bool:
    if isinstance(v, Indefinite):
        return True
    if isinstance(v, Con):
        return any(contains_indefinite(c) for c in v.children)
    return False
