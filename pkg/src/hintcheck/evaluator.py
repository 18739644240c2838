"""Fuel-bounded lazy evaluation of expressions to partial values.

Evaluation is call-by-need over thunks; the contract is extensional
equality with call-by-need, and sharing is unobservable.  Fuel is spent
once per equation unfolding or primitive application, so results depend
only on the initial fuel, never on wall-clock or machine details.  When
fuel runs out the demanded position becomes an indefinite leaf; when the
observation depth is reached, deeper structure does the same.  Definite
bottom arises only from ``error``, pattern-match failure, or a bottom
already present in the input.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass

from .domain import (
    Bottom,
    CharVal,
    Cause,
    Con,
    Indefinite,
    IntVal,
    ORD_INDEX,
    PValue,
    Tag,
)
from .prelude import CONSTRUCTOR_IDENTS, PCon, PLit, PreludeDef, PVar, PWild, prelude
from .syntax import (
    App,
    CharLit,
    Expr,
    Ident,
    IntLit,
    Lambda,
    ListLit,
    MetaVar,
    StrLit,
    TupleLit,
)

DEFAULT_FUEL = 10_000
DEFAULT_OBS_DEPTH = 5


class EvalError(Exception):
    """Dynamic type error: typing should make this unreachable."""


class EvaluationLimitError(Exception):
    """The interpreter stack overflowed before fuel ran out."""


class Fuel:
    """Countdown of permitted unfoldings."""

    __slots__ = ("remaining",)

    def __init__(self, remaining: int):
        if remaining < 0:
            raise ValueError("fuel must be non-negative")
        self.remaining = remaining

    def spend(self) -> bool:
        if self.remaining > 0:
            self.remaining -= 1
            return True
        return False


# ---------------------------------------------------------------------------
# Runtime values (weak head normal forms)


class Value:
    __slots__ = ()


class IntV(Value):
    __slots__ = ("value",)

    def __init__(self, value: int):
        self.value = value


class CharV(Value):
    __slots__ = ("value",)

    def __init__(self, value: str):
        self.value = value


class ConV(Value):
    __slots__ = ("tag", "children")

    def __init__(self, tag: Tag, children: tuple = ()):
        self.tag = tag
        self.children = children


class BotV(Value):
    __slots__ = ("definite", "detail")

    def __init__(self, definite: bool, detail):
        self.definite = definite
        self.detail = detail      # reason string if definite, Cause otherwise


class FunV(Value):
    __slots__ = ("defn", "args")

    def __init__(self, defn, args: tuple = ()):
        self.defn = defn          # PreludeDef or _ConMaker
        self.args = args


@dataclass(frozen=True)
class _ConMaker:
    tag: Tag

    @property
    def arity(self) -> int:
        return self.tag.arity


class Thunk:
    __slots__ = ("expr", "env", "value")

    def __init__(self, expr: Expr | None, env: dict | None, value: Value | None = None):
        self.expr = expr
        self.env = env
        self.value = value

    @staticmethod
    def of_value(value: Value) -> "Thunk":
        return Thunk(None, None, value)


class _Tail:
    """Marker telling the whnf loop to continue with a new expression."""

    __slots__ = ("expr", "env")

    def __init__(self, expr: Expr, env: dict):
        self.expr = expr
        self.env = env


def _fuel_bot() -> BotV:
    return BotV(False, Cause.FUEL_EXHAUSTED)


def _force(thunk: Thunk, fuel: Fuel) -> Value:
    if thunk.value is None:
        thunk.value = _whnf(thunk.expr, thunk.env, fuel)
        thunk.expr = None
        thunk.env = None
    return thunk.value


def _whnf(expr: Expr, env: dict, fuel: Fuel) -> Value:
    while True:
        result = _step(expr, env, fuel)
        if type(result) is _Tail:
            expr, env = result.expr, result.env
            continue
        return result


def _step(expr: Expr, env: dict, fuel: Fuel):
    if isinstance(expr, (MetaVar, Ident)):
        return _lookup(expr.name, env, fuel)
    if isinstance(expr, App):
        args: list[Thunk] = []
        head = expr
        while isinstance(head, App):
            args.append(Thunk(head.argument, env))
            head = head.function
        args.reverse()
        value = (
            _lookup(head.name, env, fuel)
            if isinstance(head, (MetaVar, Ident))
            else _whnf(head, env, fuel)
        )
        if type(value) is _Tail:
            value = _whnf(value.expr, value.env, fuel)
        return _apply(value, args, fuel)
    if isinstance(expr, IntLit):
        return IntV(expr.value)
    if isinstance(expr, CharLit):
        return CharV(expr.value)
    if isinstance(expr, ListLit):
        value: Value = ConV(Tag.NIL)
        for element in reversed(expr.elements):
            value = ConV(Tag.CONS, (Thunk(element, env), Thunk.of_value(value)))
        return value
    if isinstance(expr, TupleLit):
        return ConV(Tag.PAIR, (Thunk(expr.first, env), Thunk(expr.second, env)))
    if isinstance(expr, StrLit):
        raise EvalError("string literal reached the evaluator; normalize first")
    if isinstance(expr, Lambda):
        raise EvalError("lambda reached the evaluator")
    raise EvalError(f"cannot evaluate {expr!r}")


def _lookup(name: str, env: dict, fuel: Fuel):
    binding = env.get(name)
    if binding is not None:
        return _force(binding, fuel)
    defn = _DEFS.get(name)
    if defn is not None:
        if defn.arity == 0:
            return _dispatch(defn, (), fuel)
        return FunV(defn, ())
    tag = CONSTRUCTOR_IDENTS.get(name)
    if tag is not None:
        if tag.arity == 0:
            return ConV(tag)
        return FunV(_ConMaker(tag), ())
    raise EvalError(f"unknown identifier {name!r}")


def _apply(value: Value, args: list[Thunk], fuel: Fuel):
    i = 0
    while i < len(args):
        if isinstance(value, BotV):
            return value
        if not isinstance(value, FunV):
            raise EvalError("application of a non-function value")
        defn = value.defn
        arity = defn.arity
        need = arity - len(value.args)
        take = min(need, len(args) - i)
        collected = value.args + tuple(args[i : i + take])
        i += take
        if len(collected) < arity:
            return FunV(defn, collected)
        if isinstance(defn, _ConMaker):
            value = ConV(defn.tag, collected)
            continue
        result = _dispatch(defn, collected, fuel)
        if type(result) is _Tail:
            if i == len(args):
                return result
            value = _whnf(result.expr, result.env, fuel)
        else:
            value = result
    return value


def _dispatch(defn: PreludeDef, args: tuple, fuel: Fuel):
    if not fuel.spend():
        return _fuel_bot()
    if defn.primitive is not None:
        return _PRIMITIVE_FUNCS[defn.primitive](args, fuel)
    for equation in defn.equations:
        bindings: dict[str, Thunk] = {}
        outcome = _match_all(equation.patterns, args, bindings, fuel)
        if isinstance(outcome, BotV):
            return outcome
        if not outcome:
            continue
        for guard, body in equation.alternatives:
            if guard is None:
                return _Tail(body, bindings)
            guard_value = _whnf(guard, bindings, fuel)
            if isinstance(guard_value, BotV):
                return guard_value
            if not isinstance(guard_value, ConV):
                raise EvalError("guard did not evaluate to a Bool")
            if guard_value.tag is Tag.TRUE:
                return _Tail(body, bindings)
            if guard_value.tag is not Tag.FALSE:
                raise EvalError("guard did not evaluate to a Bool")
        # All guards failed: fall through to the next equation.
    return BotV(True, f"pattern match failure in {defn.name}")


def _match_all(patterns, args, bindings: dict, fuel: Fuel):
    for pattern, arg in zip(patterns, args):
        outcome = _match(pattern, arg, bindings, fuel)
        if outcome is not True:
            return outcome
    return True


def _match(pattern, arg: Thunk, bindings: dict, fuel: Fuel):
    """Match one pattern: True, False, or the bottom the scrutinee forced to.

    A constructor or literal pattern demands head shape; a definite bottom
    there makes the whole equation group definitely bottom, while an
    indefinite one leaves the branch unknowable.
    """
    if isinstance(pattern, PVar):
        bindings[pattern.name] = arg
        return True
    if isinstance(pattern, PWild):
        return True
    value = _force(arg, fuel)
    if isinstance(value, BotV):
        return value
    if isinstance(pattern, PLit):
        if isinstance(value, IntV) and isinstance(pattern.value, int):
            return value.value == pattern.value
        if isinstance(value, CharV) and isinstance(pattern.value, str):
            return value.value == pattern.value
        raise EvalError("literal pattern against a non-atom")
    assert isinstance(pattern, PCon)
    if not isinstance(value, ConV):
        raise EvalError("constructor pattern against a non-constructor")
    if value.tag is not pattern.tag:
        return False
    return _match_all(pattern.children, value.children, bindings, fuel)


# ---------------------------------------------------------------------------
# Primitives


def _strict_pair(args, fuel: Fuel):
    """Force both arguments of a function strict in both.

    Either side being definitely bottom makes the result definitely
    bottom, whatever the other side is.
    """
    a = _force(args[0], fuel)
    if isinstance(a, BotV) and a.definite:
        return a, None
    b = _force(args[1], fuel)
    if isinstance(b, BotV) and b.definite:
        return b, None
    if isinstance(a, BotV):
        return a, None
    if isinstance(b, BotV):
        return b, None
    return None, (a, b)


def _arith(op):
    def prim(args, fuel: Fuel):
        bot, pair = _strict_pair(args, fuel)
        if bot is not None:
            return bot
        a, b = pair
        if not (isinstance(a, IntV) and isinstance(b, IntV)):
            raise EvalError("arithmetic on non-integers")
        return IntV(op(a.value, b.value))

    return prim


def _prim_negate(args, fuel: Fuel):
    a = _force(args[0], fuel)
    if isinstance(a, BotV):
        return a
    if not isinstance(a, IntV):
        raise EvalError("negate on a non-integer")
    return IntV(-a.value)


def _prim_eq(args, fuel: Fuel):
    return _eq_thunks(args[0], args[1], fuel)


def _eq_thunks(ta: Thunk, tb: Thunk, fuel: Fuel) -> Value:
    a = _force(ta, fuel)
    if isinstance(a, BotV) and a.definite:
        return a
    b = _force(tb, fuel)
    if isinstance(b, BotV) and b.definite:
        return b
    if isinstance(a, BotV):
        return a
    if isinstance(b, BotV):
        return b
    if isinstance(a, IntV) and isinstance(b, IntV):
        return ConV(Tag.TRUE if a.value == b.value else Tag.FALSE)
    if isinstance(a, CharV) and isinstance(b, CharV):
        return ConV(Tag.TRUE if a.value == b.value else Tag.FALSE)
    if isinstance(a, ConV) and isinstance(b, ConV):
        if a.tag is not b.tag:
            return ConV(Tag.FALSE)
        for ca, cb in zip(a.children, b.children):
            child = _eq_thunks(ca, cb, fuel)
            if isinstance(child, BotV):
                return child
            if isinstance(child, ConV) and child.tag is Tag.FALSE:
                return child
        return ConV(Tag.TRUE)
    raise EvalError("equality on incompatible values")


def _prim_compare(args, fuel: Fuel):
    return _cmp_thunks(args[0], args[1], fuel)


_ORDERING = {-1: Tag.LT, 0: Tag.EQ, 1: Tag.GT}


def _cmp_thunks(ta: Thunk, tb: Thunk, fuel: Fuel) -> Value:
    a = _force(ta, fuel)
    if isinstance(a, BotV) and a.definite:
        return a
    b = _force(tb, fuel)
    if isinstance(b, BotV) and b.definite:
        return b
    if isinstance(a, BotV):
        return a
    if isinstance(b, BotV):
        return b
    if isinstance(a, IntV) and isinstance(b, IntV):
        return ConV(_ORDERING[(a.value > b.value) - (a.value < b.value)])
    if isinstance(a, CharV) and isinstance(b, CharV):
        return ConV(_ORDERING[(a.value > b.value) - (a.value < b.value)])
    if isinstance(a, ConV) and isinstance(b, ConV):
        ia, ib = ORD_INDEX[a.tag], ORD_INDEX[b.tag]
        if ia != ib:
            return ConV(_ORDERING[(ia > ib) - (ia < ib)])
        for ca, cb in zip(a.children, b.children):
            child = _cmp_thunks(ca, cb, fuel)
            if isinstance(child, BotV):
                return child
            if isinstance(child, ConV) and child.tag is not Tag.EQ:
                return child
        return ConV(Tag.EQ)
    raise EvalError("comparison on incompatible values")


def _prim_seq(args, fuel: Fuel):
    a = _force(args[0], fuel)
    if isinstance(a, BotV):
        return a
    return _force(args[1], fuel)


def _prim_error(args, fuel: Fuel):
    message = "error"
    expr = args[0].expr
    if isinstance(expr, ListLit) and all(isinstance(c, CharLit) for c in expr.elements):
        message = "".join(c.value for c in expr.elements)
    return BotV(True, message)


_PRIMITIVE_FUNCS = {
    "+": _arith(lambda a, b: a + b),
    "-": _arith(lambda a, b: a - b),
    "*": _arith(lambda a, b: a * b),
    "negate": _prim_negate,
    "==": _prim_eq,
    "compare": _prim_compare,
    "seq": _prim_seq,
    "error": _prim_error,
}

_DEFS = prelude()[1]
assert set(_PRIMITIVE_FUNCS) == {d.primitive for d in _DEFS.values() if d.primitive}


# ---------------------------------------------------------------------------
# Observation


def _inject(pv: PValue) -> Value:
    if isinstance(pv, Bottom):
        return BotV(True, pv.reason)
    if isinstance(pv, Indefinite):
        return BotV(False, pv.cause)
    if isinstance(pv, IntVal):
        return IntV(pv.value)
    if isinstance(pv, CharVal):
        return CharV(pv.value)
    assert isinstance(pv, Con)
    return ConV(pv.tag, tuple(Thunk.of_value(_inject(c)) for c in pv.children))


def _observe(value: Value, depth: int, fuel: Fuel) -> PValue:
    if isinstance(value, BotV):
        if value.definite:
            return Bottom(value.detail)
        return Indefinite(value.detail)
    if isinstance(value, IntV):
        return IntVal(value.value)
    if isinstance(value, CharV):
        return CharVal(value.value)
    if isinstance(value, ConV):
        if depth <= 0:
            return Indefinite(Cause.DEPTH_TRUNCATED)
        return Con(
            value.tag,
            tuple(_observe(_force(c, fuel), depth - 1, fuel) for c in value.children),
        )
    raise EvalError("a function value is not observable")


_MIN_RECURSION_LIMIT = 50_000


def _ensure_stack_headroom() -> None:
    if sys.getrecursionlimit() < _MIN_RECURSION_LIMIT:
        sys.setrecursionlimit(_MIN_RECURSION_LIMIT)


def evaluate(
    expr: Expr,
    env: dict[str, PValue] | None = None,
    fuel: int = DEFAULT_FUEL,
    depth: int = DEFAULT_OBS_DEPTH,
) -> PValue:
    """Evaluate a normalized, closed expression to a depth-bounded value.

    ``env`` maps metavariables to already-evaluated partial values, which
    are injected as literals.
    """
    _ensure_stack_headroom()
    fuel_obj = Fuel(fuel)
    bindings = {
        name: Thunk.of_value(_inject(pv)) for name, pv in (env or {}).items()
    }
    try:
        value = _whnf(expr, bindings, fuel_obj)
        return _observe(value, depth, fuel_obj)
    except RecursionError:
        raise EvaluationLimitError(
            "evaluation nested deeper than the interpreter stack; "
            "reduce the fuel or simplify the expression"
        ) from None
