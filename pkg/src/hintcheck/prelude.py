"""The evaluable prelude: standard-report equations plus a few primitives.

Function definitions are written below as plain equations in the object
language itself and parsed at import time, so the listing printed by
``hintcheck dump-prelude`` is exactly what the evaluator runs.  Only
genuinely primitive operations (Integer arithmetic, structural equality
and comparison, ``seq``, ``error``) live in Python.

Where the report gives a point-free or class-default definition, an
extensionally equal first-order equation is used instead; those spots
are marked with comments in the source text.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import syntax
from .syntax import App, CharLit, Expr, Ident, IntLit, ListLit, MetaVar, TupleLit
from .typecheck import Signature

PRELUDE_SOURCE = """
-- Booleans ----------------------------------------------------------------
not True  = False
not False = True

True  && x = x
False && _ = False

True  || _ = True
False || x = x

otherwise = True

-- Eq and Ord --------------------------------------------------------------
-- (==) and compare are primitive (derived-instance behaviour: structural,
-- left to right, short-circuiting).  The rest are the standard defaults.
x /= y = not (x == y)

x <  y = compare x y == LT
x <= y = compare x y /= GT
x >  y = compare x y == GT
x >= y = compare x y /= LT

max x y | x <= y    = y
        | otherwise = x
min x y | x <= y    = x
        | otherwise = y

-- Integers ----------------------------------------------------------------
-- (+), (-), (*) and negate are primitive, strict in both arguments.
abs x | x >= 0    = x
      | otherwise = negate x

-- Tuples ------------------------------------------------------------------
fst (x, y) = x
snd (x, y) = y

-- Maybe ---------------------------------------------------------------------
maybe n f Nothing  = n
maybe n f (Just x) = f x

isJust Nothing  = False
isJust (Just x) = True

isNothing Nothing  = True
isNothing (Just x) = False

fromMaybe d Nothing  = d
fromMaybe d (Just v) = v

-- Lists ---------------------------------------------------------------------
[] ++ ys     = ys
(x:xs) ++ ys = x : (xs ++ ys)

head (x:_) = x
head []    = error "Prelude.head: empty list"

last [x]    = x
last (_:xs) = last xs
last []     = error "Prelude.last: empty list"

tail (_:xs) = xs
tail []     = error "Prelude.tail: empty list"

init [x]    = []
init (x:xs) = x : init xs
init []     = error "Prelude.init: empty list"

null []    = True
null (_:_) = False

length []    = 0
length (_:l) = 1 + length l

-- The naive reversal, not the foldl form; they agree extensionally.
reverse []     = []
reverse (x:xs) = reverse xs ++ [x]

take n _ | n <= 0 = []
take _ []         = []
take n (x:xs)     = x : take (n-1) xs

drop n xs | n <= 0 = xs
drop _ []          = []
drop n (_:xs)      = drop (n-1) xs

splitAt n xs = (take n xs, drop n xs)

xs !! n | n < 0 = error "Prelude.!!: negative index"
[] !! _         = error "Prelude.!!: index too large"
(x:_) !! 0      = x
(_:xs) !! n     = xs !! (n-1)

repeat x = x : repeat x

replicate n x = take n (repeat x)

map f []     = []
map f (x:xs) = f x : map f xs

filter p []     = []
filter p (x:xs) | p x       = x : filter p xs
                | otherwise = filter p xs

foldr f z []     = z
foldr f z (x:xs) = f x (foldr f z xs)

foldl f z []     = z
foldl f z (x:xs) = foldl f (f z x) xs

concat xss = foldr (++) [] xss

-- Report: concatMap f = concat . map f; eta-expanded here.
concatMap f xs = concat (map f xs)

-- Report: elem x = any (== x), notElem x = all (/= x); first-order here.
elem x []     = False
elem x (y:ys) = x == y || elem x ys

notElem x xs = not (elem x xs)

isPrefixOf []     _      = True
isPrefixOf _      []     = False
isPrefixOf (x:xs) (y:ys) = x == y && isPrefixOf xs ys

isSuffixOf x y = reverse x `isPrefixOf` reverse y

insert x []     = [x]
insert x (y:ys) | x <= y    = x : y : ys
                | otherwise = y : insert x ys

-- Insertion sort via insert, the simple specification.
sort []     = []
sort (x:xs) = insert x (sort xs)

-- Control -------------------------------------------------------------------
-- seq and error are primitive; undefined is the report's definition.
undefined = error "Prelude.undefined"

id x = x

const x _ = x

flip f x y = f y x
"""

# Primitives: name -> (arity, short description for the audit listing).
PRIMITIVES = {
    "+": (2, "Integer addition, strict in both arguments"),
    "-": (2, "Integer subtraction, strict in both arguments"),
    "*": (2, "Integer multiplication, strict in both arguments"),
    "negate": (1, "Integer negation, strict"),
    "==": (2, "structural equality, left to right, short-circuiting"),
    "compare": (2, "structural lexicographic comparison to LT/EQ/GT"),
    "seq": (2, "force the first argument to head shape, return the second"),
    "error": (1, "definite bottom carrying its message"),
}

# Type signatures for everything hints may mention.  Constructors are
# included so that expressions like `Just x` or `LT` type directly.
SIGNATURES: dict[str, str] = {
    # constructors
    ":": "a -> [a] -> [a]",
    "()": "()",
    "True": "Bool",
    "False": "Bool",
    "Nothing": "Maybe a",
    "Just": "a -> Maybe a",
    "LT": "Ordering",
    "EQ": "Ordering",
    "GT": "Ordering",
    # booleans
    "not": "Bool -> Bool",
    "&&": "Bool -> Bool -> Bool",
    "||": "Bool -> Bool -> Bool",
    "otherwise": "Bool",
    # Eq / Ord
    "==": "Eq a => a -> a -> Bool",
    "/=": "Eq a => a -> a -> Bool",
    "<": "Ord a => a -> a -> Bool",
    "<=": "Ord a => a -> a -> Bool",
    ">": "Ord a => a -> a -> Bool",
    ">=": "Ord a => a -> a -> Bool",
    "compare": "Ord a => a -> a -> Ordering",
    "min": "Ord a => a -> a -> a",
    "max": "Ord a => a -> a -> a",
    # numbers
    "+": "Num a => a -> a -> a",
    "-": "Num a => a -> a -> a",
    "*": "Num a => a -> a -> a",
    "negate": "Num a => a -> a",
    "abs": "Num a => a -> a",
    # tuples
    "fst": "(a, b) -> a",
    "snd": "(a, b) -> b",
    # Maybe
    "maybe": "b -> (a -> b) -> Maybe a -> b",
    "fromMaybe": "a -> Maybe a -> a",
    "isJust": "Maybe a -> Bool",
    "isNothing": "Maybe a -> Bool",
    # lists
    "++": "[a] -> [a] -> [a]",
    "head": "[a] -> a",
    "last": "[a] -> a",
    "tail": "[a] -> [a]",
    "init": "[a] -> [a]",
    "null": "[a] -> Bool",
    "length": "[a] -> Integer",
    "reverse": "[a] -> [a]",
    "take": "Integer -> [a] -> [a]",
    "drop": "Integer -> [a] -> [a]",
    "splitAt": "Integer -> [a] -> ([a], [a])",
    "!!": "[a] -> Integer -> a",
    "repeat": "a -> [a]",
    "replicate": "Integer -> a -> [a]",
    "map": "(a -> b) -> [a] -> [b]",
    "filter": "(a -> Bool) -> [a] -> [a]",
    "foldr": "(a -> b -> b) -> b -> [a] -> b",
    "foldl": "(b -> a -> b) -> b -> [a] -> b",
    "concat": "[[a]] -> [a]",
    "concatMap": "(a -> [b]) -> [a] -> [b]",
    "elem": "Eq a => a -> [a] -> Bool",
    "notElem": "Eq a => a -> [a] -> Bool",
    "isPrefixOf": "Eq a => [a] -> [a] -> Bool",
    "isSuffixOf": "Eq a => [a] -> [a] -> Bool",
    "insert": "Ord a => a -> [a] -> [a]",
    "sort": "Ord a => [a] -> [a]",
    # control
    "seq": "a -> b -> b",
    "error": "[Char] -> a",
    "undefined": "a",
    "id": "a -> a",
    "const": "a -> b -> a",
    "flip": "(a -> b -> c) -> b -> a -> c",
}

# Constructor identifiers the evaluator and pattern compiler recognise.
from .domain import Tag  # noqa: E402

CONSTRUCTOR_IDENTS = {
    "True": Tag.TRUE,
    "False": Tag.FALSE,
    "Nothing": Tag.NOTHING,
    "Just": Tag.JUST,
    "()": Tag.UNIT,
    "LT": Tag.LT,
    "EQ": Tag.EQ,
    "GT": Tag.GT,
    ":": Tag.CONS,
}


# ---------------------------------------------------------------------------
# Patterns


@dataclass(frozen=True)
class Pattern:
    pass


@dataclass(frozen=True)
class PVar(Pattern):
    name: str


@dataclass(frozen=True)
class PWild(Pattern):
    pass


@dataclass(frozen=True)
class PLit(Pattern):
    value: int | str    # int or single char


@dataclass(frozen=True)
class PCon(Pattern):
    tag: Tag
    children: tuple[Pattern, ...] = ()


class PreludeError(Exception):
    pass


def expr_to_pattern(e: Expr) -> Pattern:
    """Reinterpret a parsed left-hand-side expression as a linear pattern."""
    if isinstance(e, MetaVar):
        return PVar(e.name)
    if isinstance(e, Ident):
        if e.name == "_":
            return PWild()
        if e.name in CONSTRUCTOR_IDENTS:
            tag = CONSTRUCTOR_IDENTS[e.name]
            if tag.arity != 0:
                raise PreludeError(f"constructor {e.name} is not nullary")
            return PCon(tag)
        return PVar(e.name)
    if isinstance(e, IntLit):
        return PLit(e.value)
    if isinstance(e, CharLit):
        return PLit(e.value)
    if isinstance(e, ListLit):
        pat: Pattern = PCon(Tag.NIL)
        for x in reversed(e.elements):
            pat = PCon(Tag.CONS, (expr_to_pattern(x), pat))
        return pat
    if isinstance(e, TupleLit):
        return PCon(Tag.PAIR, (expr_to_pattern(e.first), expr_to_pattern(e.second)))
    if isinstance(e, App):
        head = e
        args: list[Expr] = []
        while isinstance(head, App):
            args.append(head.argument)
            head = head.function
        args.reverse()
        if not isinstance(head, Ident) or head.name not in CONSTRUCTOR_IDENTS:
            raise PreludeError(f"bad pattern head: {syntax.pretty(e)}")
        tag = CONSTRUCTOR_IDENTS[head.name]
        if tag.arity != len(args):
            raise PreludeError(f"constructor {head.name} applied to {len(args)} arguments")
        return PCon(tag, tuple(expr_to_pattern(a) for a in args))
    raise PreludeError(f"bad pattern: {e!r}")


def _pattern_vars(p: Pattern) -> list[str]:
    if isinstance(p, PVar):
        return [p.name]
    if isinstance(p, PCon):
        out: list[str] = []
        for c in p.children:
            out.extend(_pattern_vars(c))
        return out
    return []


# ---------------------------------------------------------------------------
# Definitions


@dataclass(frozen=True)
class Equation:
    patterns: tuple[Pattern, ...]
    # Guarded alternatives tried in order; a None guard always succeeds.
    alternatives: tuple[tuple[Expr | None, Expr], ...]


@dataclass(frozen=True)
class PreludeDef:
    name: str
    arity: int
    equations: tuple[Equation, ...] = ()
    primitive: str | None = None    # key into the evaluator's primitive table


def _split_equation(line: str, lineno: int):
    """Split ``lhs | guard = body`` into lhs tokens and guarded alternatives."""
    tokens = syntax.tokenize(line, lineno)
    depth = 0
    bar_idx = eq_idx = None
    for i, tok in enumerate(tokens):
        if tok.kind in ("lparen", "lbracket"):
            depth += 1
        elif tok.kind in ("rparen", "rbracket"):
            depth -= 1
        elif depth == 0 and tok.kind == "op" and tok.text == "|" and bar_idx is None:
            bar_idx = i
        elif depth == 0 and tok.kind == "op" and tok.text == "=" and eq_idx is None:
            eq_idx = i
    if eq_idx is None:
        raise PreludeError(f"prelude line {lineno}: no '='")
    eof = tokens[-1]
    if bar_idx is not None and bar_idx < eq_idx:
        lhs_tokens = tokens[:bar_idx]
        guard = syntax._parse_tokens(tokens[bar_idx + 1 : eq_idx] + [eof])
    else:
        lhs_tokens = tokens[:eq_idx]
        guard = None
    body = syntax._parse_tokens(tokens[eq_idx + 1 : -1] + [eof])
    return lhs_tokens, guard, body


def _lhs_to_head(lhs_tokens, eof) -> tuple[str, tuple[Pattern, ...]]:
    expr = syntax._parse_tokens(list(lhs_tokens) + [eof])
    head = expr
    args: list[Expr] = []
    while isinstance(head, App):
        args.append(head.argument)
        head = head.function
    args.reverse()
    if not isinstance(head, (Ident, MetaVar)):
        raise PreludeError(f"bad equation head: {syntax.pretty(expr)}")
    name = head.name
    pats = tuple(expr_to_pattern(a) for a in args)
    seen: set[str] = set()
    for p in pats:
        for v in _pattern_vars(p):
            if v in seen:
                raise PreludeError(f"non-linear pattern in {name}")
            seen.add(v)
    return name, pats


def parse_prelude_source(source: str) -> dict[str, PreludeDef]:
    """Parse the equation listing into a definition table."""
    raw: dict[str, list[Equation]] = {}
    order: list[str] = []
    current: tuple[str, tuple[Pattern, ...], list] | None = None

    def flush() -> None:
        nonlocal current
        if current is not None:
            name, pats, alts = current
            raw.setdefault(name, [])
            if name not in order:
                order.append(name)
            raw[name].append(Equation(pats, tuple(alts)))
            current = None

    for lineno, line in enumerate(source.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("--"):
            continue
        tokens = syntax.tokenize(line, lineno)
        if tokens[0].kind == "op" and tokens[0].text == "|":
            # Continuation: another guarded alternative for the open equation.
            if current is None:
                raise PreludeError(f"prelude line {lineno}: guard without equation")
            depth = 0
            eq_idx = None
            for i, tok in enumerate(tokens):
                if tok.kind in ("lparen", "lbracket"):
                    depth += 1
                elif tok.kind in ("rparen", "rbracket"):
                    depth -= 1
                elif depth == 0 and tok.kind == "op" and tok.text == "=" and eq_idx is None:
                    eq_idx = i
            if eq_idx is None:
                raise PreludeError(f"prelude line {lineno}: no '=' in guard line")
            eof = tokens[-1]
            guard = syntax._parse_tokens(tokens[1:eq_idx] + [eof])
            body = syntax._parse_tokens(tokens[eq_idx + 1 : -1] + [eof])
            current[2].append((guard, body))
            continue
        flush()
        lhs_tokens, guard, body = _split_equation(line, lineno)
        name, pats = _lhs_to_head(lhs_tokens, tokens[-1])
        current = (name, pats, [(guard, body)])
    flush()

    defs: dict[str, PreludeDef] = {}
    for name in order:
        equations = raw[name]
        arities = {len(eq.patterns) for eq in equations}
        if len(arities) != 1:
            raise PreludeError(f"{name}: equations disagree on arity")
        defs[name] = PreludeDef(name, arities.pop(), tuple(equations))
    return defs


@lru_cache(maxsize=1)
def prelude() -> tuple[Signature, dict[str, PreludeDef]]:
    """The signature table and definition table, parsed once."""
    defs = parse_prelude_source(PRELUDE_SOURCE)
    for name, (arity, _doc) in PRIMITIVES.items():
        if name in defs:
            raise PreludeError(f"{name} is both primitive and defined")
        defs[name] = PreludeDef(name, arity, primitive=name)
    for name in defs:
        if name not in SIGNATURES:
            raise PreludeError(f"{name} has no signature")
    return Signature(dict(SIGNATURES)), defs


def dump_listing() -> str:
    """Human-readable audit listing of the definitions actually used."""
    lines = [
        "-- Prelude definitions used by the evaluator.",
        "-- Primitive operations:",
    ]
    for name, (arity, doc) in PRIMITIVES.items():
        lines.append(f"--   {name} (arity {arity}): {doc}")
    lines.append("")
    lines.append(PRELUDE_SOURCE.strip())
    lines.append("")
    lines.append("-- Signatures:")
    for name, scheme in SIGNATURES.items():
        lines.append(f"--   {name} :: {scheme}")
    return "\n".join(lines) + "\n"
