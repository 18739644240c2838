"""Apply hint left-hand sides to source files and render suggestions.

Matching is plain first-order structural matching: a metavariable
matches any subexpression (consistently across repeated occurrences),
everything else matches only itself.  Identifiers match by name alone;
no name resolution is attempted.
"""
from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    App,
    Expr,
    Hint,
    Lambda,
    ListLit,
    MetaVar,
    Note,
    Severity,
    SourceBinding,
    TupleLit,
    parse_source,
    pretty,
    substitute,
)


def match(pattern: Expr, subject: Expr, bindings: dict[str, Expr] | None = None):
    """Match a hint pattern against a subject expression.

    Returns the metavariable substitution, or None when there is no
    match.  Repeated metavariables must match structurally equal
    subexpressions.
    """
    if bindings is None:
        bindings = {}
    if isinstance(pattern, MetaVar):
        bound = bindings.get(pattern.name)
        if bound is None:
            bindings[pattern.name] = subject
            return bindings
        return bindings if bound == subject else None
    if isinstance(pattern, App) and isinstance(subject, App):
        if match(pattern.function, subject.function, bindings) is None:
            return None
        return match(pattern.argument, subject.argument, bindings)
    if isinstance(pattern, ListLit) and isinstance(subject, ListLit):
        if len(pattern.elements) != len(subject.elements):
            return None
        for p, s in zip(pattern.elements, subject.elements):
            if match(p, s, bindings) is None:
                return None
        return bindings
    if isinstance(pattern, TupleLit) and isinstance(subject, TupleLit):
        if match(pattern.first, subject.first, bindings) is None:
            return None
        return match(pattern.second, subject.second, bindings)
    if isinstance(pattern, Lambda) and isinstance(subject, Lambda):
        if pattern.param != subject.param:
            return None
        return match(pattern.body, subject.body, bindings)
    return bindings if pattern == subject else None


@dataclass(frozen=True)
class Suggestion:
    file: str
    line: int
    col: int
    found: str              # original source text of the matched span
    replacement: Expr
    hint: Hint

    @property
    def replacement_text(self) -> str:
        return pretty(self.replacement)

    @property
    def note_text(self) -> str | None:
        if self.hint.note is Note.INCREASES_LAZINESS:
            return "increases laziness"
        return None


def _scan_expr(e: Expr, hints, binding: SourceBinding, filename: str, out: list) -> None:
    # Outermost first; a match swallows its whole subtree so overlapping
    # matches report only the outermost one.
    for hint in hints:
        subst = match(hint.lhs, e)
        if subst is not None:
            span = e.pos
            found = (
                binding.source_line[span.col - 1 : span.end - 1]
                if span is not None
                else pretty(e)
            )
            out.append(
                Suggestion(
                    file=filename,
                    line=span.line if span else binding.line,
                    col=span.col if span else binding.col,
                    found=found,
                    replacement=substitute(hint.rhs, subst),
                    hint=hint,
                )
            )
            return
    if isinstance(e, App):
        _scan_expr(e.function, hints, binding, filename, out)
        _scan_expr(e.argument, hints, binding, filename, out)
    elif isinstance(e, ListLit):
        for x in e.elements:
            _scan_expr(x, hints, binding, filename, out)
    elif isinstance(e, TupleLit):
        _scan_expr(e.first, hints, binding, filename, out)
        _scan_expr(e.second, hints, binding, filename, out)
    elif isinstance(e, Lambda):
        _scan_expr(e.body, hints, binding, filename, out)


def scan(filename: str, text: str, hints: list[Hint]) -> list[Suggestion]:
    """All suggestions for one source file, sorted by position."""
    suggestions: list[Suggestion] = []
    for binding in parse_source(text):
        _scan_expr(binding.body, hints, binding, filename, suggestions)
    suggestions.sort(key=lambda s: (s.line, s.col))
    return suggestions


_SEVERITY_LABEL = {Severity.WARN: "Warning", Severity.ERROR: "Error"}


def render_suggestion(s: Suggestion) -> str:
    """The report block for one suggestion, in the classic tty format."""
    lines = [
        f"{s.file}:{s.line}:{s.col}: {_SEVERITY_LABEL[s.hint.severity]}: Use alternative",
        "Found:",
        f"  {s.found}",
        "Why not:",
        f"  {s.replacement_text}",
    ]
    note = s.note_text
    if note is not None:
        lines.append(f"Note: {note}")
    return "\n".join(lines) + "\n"
