"""Render hints as proof goals with explicit continuous application.

Every application prints as ``f\\<cdot>x``; a hint noted as increasing
laziness becomes an ``\\<sqsubseteq>`` goal, any other hint an equality.
Operator-headed applications use the prefix names below (the goal
notation shows only alphabetic names, so the mapping is fixed here and
documented in the README).
"""
from __future__ import annotations

from .syntax import (
    App,
    CharLit,
    Expr,
    Hint,
    Ident,
    IntLit,
    Lambda,
    ListLit,
    MetaVar,
    Note,
    StrLit,
    TupleLit,
)

OPERATOR_GOAL_NAMES = {
    "++": "append",
    "!!": "nth",
    ":": "cons",
    "==": "eq",
    "/=": "neq",
    "<": "lt",
    "<=": "le",
    ">": "gt",
    ">=": "ge",
    "&&": "conj",
    "||": "disj",
    "+": "plus",
    "-": "minus",
    "*": "times",
}

CDOT = "\\<cdot>"
BELOW = "\\<sqsubseteq>"


class ProofRenderError(Exception):
    pass


def _atom(e: Expr) -> str:
    text = goal_term(e)
    if isinstance(e, App):
        return f"({text})"
    if isinstance(e, IntLit) and e.value < 0:
        return f"({text})"
    return text


def goal_term(e: Expr) -> str:
    if isinstance(e, MetaVar):
        return e.name
    if isinstance(e, Ident):
        return OPERATOR_GOAL_NAMES.get(e.name, e.name)
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, CharLit):
        return f"'{e.value}'"
    if isinstance(e, ListLit):
        if not e.elements:
            return "[]"
        # Lists print as explicit cons applications.
        term: Expr = ListLit(())
        for x in reversed(e.elements):
            term = App(App(Ident(":"), x), term)
        return goal_term(term)
    if isinstance(e, TupleLit):
        return f"({goal_term(e.first)}, {goal_term(e.second)})"
    if isinstance(e, App):
        return f"{_fun_part(e.function)}{CDOT}{_atom(e.argument)}"
    if isinstance(e, (Lambda, StrLit)):
        raise ProofRenderError("hint cannot be rendered as a first-order goal")
    raise ProofRenderError(f"cannot render {e!r}")


def _fun_part(e: Expr) -> str:
    # Continuous application is left-associative: no parentheses needed
    # around a nested application in function position.
    if isinstance(e, App):
        return goal_term(e)
    return _atom(e)


def goal_line(hint: Hint) -> str:
    connective = BELOW if hint.note is Note.INCREASES_LAZINESS else "="
    return f"{goal_term(hint.lhs)} {connective} {goal_term(hint.rhs)}"


def emit_proofs(hints: list[Hint]) -> str:
    """One goal per hint, LF-terminated ASCII lines."""
    return "".join(goal_line(h) + "\n" for h in hints)
