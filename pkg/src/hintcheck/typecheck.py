"""Monomorphic typing of hints by unification against the prelude signatures.

Hints are untyped; before enumeration can generate inputs, every
metavariable needs a concrete type.  Both hint sides are inferred at a
common result type, remaining type variables are defaulted to Integer
(the strongest instance available for the Eq/Ord/Num classes), and
function-typed results are eta-expanded with fresh metavariables until
the compared values are first order.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import syntax
from .syntax import App, CharLit, Expr, Hint, Ident, IntLit, Lambda, ListLit, MetaVar, TupleLit


class TypingError(Exception):
    pass


class UnificationError(TypingError):
    pass


# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True)
class Type:
    pass


@dataclass(frozen=True)
class TCon(Type):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class TList(Type):
    elem: Type

    def __str__(self) -> str:
        return f"[{self.elem}]"


@dataclass(frozen=True)
class TPair(Type):
    first: Type
    second: Type

    def __str__(self) -> str:
        return f"({self.first}, {self.second})"


@dataclass(frozen=True)
class TMaybe(Type):
    elem: Type

    def __str__(self) -> str:
        inner = str(self.elem)
        if isinstance(self.elem, (TFun, TMaybe)):
            inner = f"({inner})"
        return f"Maybe {inner}"


@dataclass(frozen=True)
class TFun(Type):
    arg: Type
    result: Type

    def __str__(self) -> str:
        arg = str(self.arg)
        if isinstance(self.arg, TFun):
            arg = f"({arg})"
        return f"{arg} -> {self.result}"


@dataclass(frozen=True)
class TVar(Type):
    id: int

    def __str__(self) -> str:
        return f"t{self.id}"


INTEGER = TCon("Integer")
BOOL = TCon("Bool")
CHAR = TCon("Char")
UNIT = TCon("()")
ORDERING = TCon("Ordering")

CLASSES = ("Eq", "Ord", "Num")


# ---------------------------------------------------------------------------
# Substitutions and unification


class Subst:
    """Mutable binding store for type variables, with class constraints."""

    def __init__(self) -> None:
        self.bindings: dict[int, Type] = {}
        self.constraints: dict[int, set[str]] = {}

    def resolve(self, t: Type) -> Type:
        while isinstance(t, TVar) and t.id in self.bindings:
            t = self.bindings[t.id]
        return t

    def apply(self, t: Type) -> Type:
        t = self.resolve(t)
        if isinstance(t, TList):
            return TList(self.apply(t.elem))
        if isinstance(t, TMaybe):
            return TMaybe(self.apply(t.elem))
        if isinstance(t, TPair):
            return TPair(self.apply(t.first), self.apply(t.second))
        if isinstance(t, TFun):
            return TFun(self.apply(t.arg), self.apply(t.result))
        return t

    def occurs(self, var_id: int, t: Type) -> bool:
        t = self.resolve(t)
        if isinstance(t, TVar):
            return t.id == var_id
        if isinstance(t, TList):
            return self.occurs(var_id, t.elem)
        if isinstance(t, TMaybe):
            return self.occurs(var_id, t.elem)
        if isinstance(t, TPair):
            return self.occurs(var_id, t.first) or self.occurs(var_id, t.second)
        if isinstance(t, TFun):
            return self.occurs(var_id, t.arg) or self.occurs(var_id, t.result)
        return False

    def constrain(self, t: Type, cls: str) -> None:
        """Require a class instance, pushing the obligation into children."""
        t = self.resolve(t)
        if isinstance(t, TVar):
            self.constraints.setdefault(t.id, set()).add(cls)
            return
        if cls == "Num":
            if t != INTEGER:
                raise UnificationError(f"no Num instance for {t}")
            return
        # Eq and Ord: every first-order type has the derived instance.
        if isinstance(t, TFun):
            raise UnificationError(f"no {cls} instance for functions")
        if isinstance(t, TList):
            self.constrain(t.elem, cls)
        elif isinstance(t, TMaybe):
            self.constrain(t.elem, cls)
        elif isinstance(t, TPair):
            self.constrain(t.first, cls)
            self.constrain(t.second, cls)

    def bind(self, var_id: int, t: Type) -> None:
        if self.occurs(var_id, t):
            raise UnificationError(f"occurs check failed: t{var_id} in {self.apply(t)}")
        self.bindings[var_id] = t
        for cls in self.constraints.pop(var_id, ()):
            self.constrain(t, cls)

    def unify(self, a: Type, b: Type) -> None:
        a = self.resolve(a)
        b = self.resolve(b)
        if isinstance(a, TVar) and isinstance(b, TVar) and a.id == b.id:
            return
        if isinstance(a, TVar):
            self.bind(a.id, b)
            return
        if isinstance(b, TVar):
            self.bind(b.id, a)
            return
        if isinstance(a, TCon) and isinstance(b, TCon) and a.name == b.name:
            return
        if isinstance(a, TList) and isinstance(b, TList):
            self.unify(a.elem, b.elem)
            return
        if isinstance(a, TMaybe) and isinstance(b, TMaybe):
            self.unify(a.elem, b.elem)
            return
        if isinstance(a, TPair) and isinstance(b, TPair):
            self.unify(a.first, b.first)
            self.unify(a.second, b.second)
            return
        if isinstance(a, TFun) and isinstance(b, TFun):
            self.unify(a.arg, b.arg)
            self.unify(a.result, b.result)
            return
        raise UnificationError(f"cannot unify {self.apply(a)} with {self.apply(b)}")


def free_vars(t: Type) -> set[int]:
    if isinstance(t, TVar):
        return {t.id}
    if isinstance(t, TList):
        return free_vars(t.elem)
    if isinstance(t, TMaybe):
        return free_vars(t.elem)
    if isinstance(t, TPair):
        return free_vars(t.first) | free_vars(t.second)
    if isinstance(t, TFun):
        return free_vars(t.arg) | free_vars(t.result)
    return set()


def unify(a: Type, b: Type) -> dict[int, Type]:
    """Most general unifier of two types, as a map from variable id to type."""
    subst = Subst()
    subst.unify(a, b)
    return {v: subst.apply(TVar(v)) for v in (free_vars(a) | free_vars(b)) & set(subst.bindings)}


# ---------------------------------------------------------------------------
# Type schemes and signatures

_SCHEME_CACHE: dict[str, tuple[Type, dict[int, frozenset[str]]]] = {}


def parse_scheme(text: str) -> tuple[Type, dict[int, frozenset[str]]]:
    """Parse a Haskell-style signature like ``Ord a => a -> [a] -> [a]``.

    Lowercase names are scheme variables, numbered by first use; the
    result pairs the type with the class constraints per variable id.
    """
    if text in _SCHEME_CACHE:
        return _SCHEME_CACHE[text]
    named_constraints: dict[str, set[str]] = {}
    body = text
    if "=>" in text:
        ctx, body = text.split("=>", 1)
        ctx = ctx.strip()
        if ctx.startswith("(") and ctx.endswith(")"):
            ctx = ctx[1:-1]
        for part in ctx.split(","):
            cls, var = part.split()
            if cls not in CLASSES:
                raise TypingError(f"unknown class {cls!r} in signature {text!r}")
            named_constraints.setdefault(var, set()).add(cls)

    pos = 0

    def skip_ws() -> None:
        nonlocal pos
        while pos < len(body) and body[pos] == " ":
            pos += 1

    def parse_fun() -> Type:
        nonlocal pos
        left = parse_app()
        skip_ws()
        if body.startswith("->", pos):
            pos += 2
            return TFun(left, parse_fun())
        return left

    def parse_app() -> Type:
        nonlocal pos
        skip_ws()
        if body.startswith("Maybe", pos) and not _ident_continues(pos + 5):
            pos += 5
            return TMaybe(parse_atom())
        return parse_atom()

    def _ident_continues(at: int) -> bool:
        return at < len(body) and (body[at].isalnum() or body[at] == "_")

    def parse_atom() -> Type:
        nonlocal pos
        skip_ws()
        if pos >= len(body):
            raise TypingError(f"bad signature {text!r}")
        c = body[pos]
        if c == "[":
            pos += 1
            inner = parse_fun()
            skip_ws()
            if body[pos] != "]":
                raise TypingError(f"bad signature {text!r}")
            pos += 1
            return TList(inner)
        if c == "(":
            pos += 1
            skip_ws()
            if body[pos] == ")":
                pos += 1
                return UNIT
            first = parse_fun()
            skip_ws()
            if body[pos] == ",":
                pos += 1
                second = parse_fun()
                skip_ws()
                if body[pos] != ")":
                    raise TypingError(f"bad signature {text!r}")
                pos += 1
                return TPair(first, second)
            if body[pos] != ")":
                raise TypingError(f"bad signature {text!r}")
            pos += 1
            return first
        start = pos
        while _ident_continues(pos):
            pos += 1
        word = body[start:pos]
        if not word:
            raise TypingError(f"bad signature {text!r}")
        if word[0].islower():
            return TVar(_scheme_var_id(word))
        named = {"Integer": INTEGER, "Bool": BOOL, "Char": CHAR, "Ordering": ORDERING}
        if word in named:
            return named[word]
        raise TypingError(f"unknown type {word!r} in signature {text!r}")

    names: dict[str, int] = {}

    def _scheme_var_id(name: str) -> int:
        return names.setdefault(name, len(names))

    t = parse_fun()
    skip_ws()
    if pos != len(body):
        raise TypingError(f"trailing junk in signature {text!r}")
    constraints = {
        names[var]: frozenset(classes)
        for var, classes in named_constraints.items()
        if var in names
    }
    result = (t, constraints)
    _SCHEME_CACHE[text] = result
    return result


@dataclass
class Signature:
    """Name to type-scheme table for every identifier the prelude defines."""

    schemes: dict[str, str] = field(default_factory=dict)

    def has(self, name: str) -> bool:
        return name in self.schemes

    def instantiate(self, name: str, subst: Subst, fresh) -> Type:
        scheme_text = self.schemes.get(name)
        if scheme_text is None:
            raise TypingError(f"unknown identifier {name!r}")
        t, constraints = parse_scheme(scheme_text)
        mapping: dict[int, TVar] = {}

        def walk(s: Type) -> Type:
            if isinstance(s, TVar):
                if s.id not in mapping:
                    mapping[s.id] = fresh()
                return mapping[s.id]
            if isinstance(s, TList):
                return TList(walk(s.elem))
            if isinstance(s, TMaybe):
                return TMaybe(walk(s.elem))
            if isinstance(s, TPair):
                return TPair(walk(s.first), walk(s.second))
            if isinstance(s, TFun):
                return TFun(walk(s.arg), walk(s.result))
            return s

        out = walk(t)
        for var_id, classes in constraints.items():
            if var_id not in mapping:
                continue
            for cls in classes:
                subst.constrain(mapping[var_id], cls)
        return out


# ---------------------------------------------------------------------------
# Inference


@dataclass(frozen=True)
class Inference:
    """Result of typing a hint: concrete input types plus the eta-expanded
    sides whose values the certifier actually compares."""

    metavar_types: dict[str, Type]
    lhs: Expr
    rhs: Expr
    result_type: Type
    instance_checked: bool      # some type variable was defaulted
    eq_assumed: bool            # an Eq constraint landed on a defaulted variable


def _default(t: Type, defaulted: list[int]) -> Type:
    if isinstance(t, TVar):
        defaulted.append(t.id)
        return INTEGER
    if isinstance(t, TList):
        return TList(_default(t.elem, defaulted))
    if isinstance(t, TMaybe):
        return TMaybe(_default(t.elem, defaulted))
    if isinstance(t, TPair):
        return TPair(_default(t.first, defaulted), _default(t.second, defaulted))
    if isinstance(t, TFun):
        return TFun(_default(t.arg, defaulted), _default(t.result, defaulted))
    return t


def infer(hint: Hint, sig: Signature) -> Inference:
    """Assign a concrete type to every metavariable of a hint.

    Both sides are unified at a common result type; leftover variables
    default to Integer; a function-typed result is eta-expanded with
    fresh metavariables until it is first order.
    """
    subst = Subst()
    counter = [0]

    def fresh() -> TVar:
        counter[0] += 1
        return TVar(counter[0])

    env: dict[str, TVar] = {}
    for name in sorted(syntax.metavars(hint.lhs) | syntax.metavars(hint.rhs)):
        env[name] = fresh()

    def check(e: Expr) -> Type:
        if isinstance(e, MetaVar):
            return env[e.name]
        if isinstance(e, Ident):
            return sig.instantiate(e.name, subst, fresh)
        if isinstance(e, IntLit):
            v = fresh()
            subst.constrain(v, "Num")
            return v
        if isinstance(e, CharLit):
            return CHAR
        if isinstance(e, ListLit):
            elem = fresh()
            for x in e.elements:
                subst.unify(elem, check(x))
            return TList(elem)
        if isinstance(e, TupleLit):
            return TPair(check(e.first), check(e.second))
        if isinstance(e, App):
            fn = check(e.function)
            arg = check(e.argument)
            result = fresh()
            subst.unify(fn, TFun(arg, result))
            return result
        if isinstance(e, Lambda):
            raise TypingError("hints may not contain lambdas")
        raise TypingError(f"cannot type {e!r}")

    lhs_t = check(hint.lhs)
    rhs_t = check(hint.rhs)
    subst.unify(lhs_t, rhs_t)

    # Eta-expand function-typed results so the compared values are first order.
    lhs, rhs = hint.lhs, hint.rhs
    result = subst.resolve(lhs_t)
    used = syntax.metavars(lhs) | syntax.metavars(rhs)
    while isinstance(result, TFun):
        name = next((c for c in "abcdefghijklmnopqrstuvwxyz" if c not in used), None)
        if name is None:
            raise TypingError("cannot eta-expand: out of metavariable names")
        used.add(name)
        var = fresh()
        subst.unify(var, result.arg)
        env[name] = var
        lhs = App(lhs, MetaVar(name))
        rhs = App(rhs, MetaVar(name))
        result = subst.resolve(result.result)

    # Anything still variable is unconstrained or Eq/Ord/Num-constrained;
    # Integer satisfies all of those, and is the strongest Eq instance.
    defaulted: list[int] = []
    metavar_types = {name: _default(subst.apply(v), defaulted) for name, v in env.items()}
    result_type = _default(subst.apply(result), defaulted)
    eq_assumed = any(
        "Eq" in subst.constraints.get(v, set()) for v in defaulted
    )
    return Inference(
        metavar_types=metavar_types,
        lhs=lhs,
        rhs=rhs,
        result_type=result_type,
        instance_checked=bool(defaulted),
        eq_assumed=eq_assumed,
    )
