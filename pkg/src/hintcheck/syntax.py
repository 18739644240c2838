"""Expression, hint, and source-file syntax.

The expression language is a small Haskell-like core: identifiers,
single-letter metavariables, integer/char/string literals, lists, pairs,
lambdas, application, and infix operators with the standard report
fixities.  Parsing normalizes everything to curried prefix form: infix
operators and backticked functions become applications of a prefix
identifier, ``$`` is translated away, and string literals are desugared
to lists of character literals.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field


class ParseError(Exception):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Span:
    line: int
    col: int        # 1-indexed column of the first character
    end: int        # column one past the last character


# ---------------------------------------------------------------------------
# Abstract syntax


@dataclass(frozen=True)
class Expr:
    # Source spans, set by the parser; never part of structural equality.
    # ``pos`` is the reported span of the expression itself, ``extent``
    # additionally covers any parentheses wrapped around it (so a parent
    # node's span always slices to well-formed text).
    pos: Span | None = field(default=None, init=False, compare=False, repr=False)
    extent: Span | None = field(default=None, init=False, compare=False, repr=False)


@dataclass(frozen=True)
class MetaVar(Expr):
    """A free hint variable: any single lowercase letter."""

    name: str


@dataclass(frozen=True)
class Ident(Expr):
    """A program identifier or prefix operator name (e.g. ``++``)."""

    name: str


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class CharLit(Expr):
    value: str


@dataclass(frozen=True)
class StrLit(Expr):
    """Parse-time only; normalization turns it into a list of CharLit."""

    value: str


@dataclass(frozen=True)
class ListLit(Expr):
    elements: tuple[Expr, ...]


@dataclass(frozen=True)
class TupleLit(Expr):
    first: Expr
    second: Expr


@dataclass(frozen=True)
class App(Expr):
    function: Expr
    argument: Expr


@dataclass(frozen=True)
class Lambda(Expr):
    param: str
    body: Expr


def _at(node: Expr, span: Span | None, extent: Span | None = None) -> Expr:
    object.__setattr__(node, "pos", span)
    object.__setattr__(node, "extent", extent if extent is not None else span)
    return node


def _copy_spans(node: Expr, source: Expr) -> Expr:
    return _at(node, source.pos, source.extent)


def _merge(a: Span | None, b: Span | None) -> Span | None:
    if a is None or b is None:
        return a or b
    return Span(a.line, min(a.col, b.col), max(a.end, b.end))


# Haskell-report fixities, restricted to the operators the prelude knows.
class Assoc(enum.Enum):
    LEFT = "l"
    RIGHT = "r"
    NONE = "n"


OPERATORS: dict[str, tuple[int, Assoc]] = {
    "!!": (9, Assoc.LEFT),
    "*": (7, Assoc.LEFT),
    "+": (6, Assoc.LEFT),
    "-": (6, Assoc.LEFT),
    ":": (5, Assoc.RIGHT),
    "++": (5, Assoc.RIGHT),
    "==": (4, Assoc.NONE),
    "/=": (4, Assoc.NONE),
    "<": (4, Assoc.NONE),
    "<=": (4, Assoc.NONE),
    ">": (4, Assoc.NONE),
    ">=": (4, Assoc.NONE),
    "&&": (3, Assoc.RIGHT),
    "||": (2, Assoc.RIGHT),
    "$": (0, Assoc.RIGHT),
}

# Backticked functions get the report's default fixity.
BACKTICK_FIXITY = (9, Assoc.LEFT)


# ---------------------------------------------------------------------------
# Lexer

_SYMBOLS = sorted(
    list(OPERATORS) + ["=", "==>", "|", "->"], key=len, reverse=True
)

_ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", "'": "'", '"': '"'}


@dataclass(frozen=True)
class Token:
    kind: str       # int char str ident where op lparen rparen lbracket rbracket comma backslash btick eof
    text: str
    line: int
    col: int
    end: int

    @property
    def span(self) -> Span:
        return Span(self.line, self.col, self.end)


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_ident_char(c: str) -> bool:
    return c.isalnum() or c in ("_", "'")


def tokenize(text: str, line: int = 1) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)

    def err(message: str, col: int) -> ParseError:
        return ParseError(message, line, col)

    while i < n:
        c = text[i]
        col = i + 1
        if c in " \t":
            i += 1
            continue
        if text.startswith("--", i):
            break
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, col, j + 1))
            i = j
            continue
        if _is_ident_start(c):
            j = i
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            kind = "where" if word == "where" else "ident"
            tokens.append(Token(kind, word, line, col, j + 1))
            i = j
            continue
        if c == "'":
            j = i + 1
            if j < n and text[j] == "\\":
                if j + 1 >= n or text[j + 1] not in _ESCAPES:
                    raise err("bad escape in character literal", col)
                ch = _ESCAPES[text[j + 1]]
                j += 2
            elif j < n and text[j] != "'":
                ch = text[j]
                j += 1
            else:
                raise err("empty character literal", col)
            if j >= n or text[j] != "'":
                raise err("unterminated character literal", col)
            tokens.append(Token("char", ch, line, col, j + 2))
            i = j + 1
            continue
        if c == '"':
            j = i + 1
            buf = []
            while j < n and text[j] != '"':
                if text[j] == "\\":
                    if j + 1 >= n or text[j + 1] not in _ESCAPES:
                        raise err("bad escape in string literal", j + 1)
                    buf.append(_ESCAPES[text[j + 1]])
                    j += 2
                else:
                    buf.append(text[j])
                    j += 1
            if j >= n:
                raise err("unterminated string literal", col)
            tokens.append(Token("str", "".join(buf), line, col, j + 2))
            i = j + 1
            continue
        if c == "`":
            j = i + 1
            if j >= n or not _is_ident_start(text[j]):
                raise err("expected identifier after backtick", col)
            k = j
            while k < n and _is_ident_char(text[k]):
                k += 1
            if k >= n or text[k] != "`":
                raise err("unterminated backticked identifier", col)
            tokens.append(Token("btick", text[j:k], line, col, k + 2))
            i = k + 1
            continue
        simple = {
            "(": "lparen",
            ")": "rparen",
            "[": "lbracket",
            "]": "rbracket",
            ",": "comma",
            "\\": "backslash",
        }
        if c in simple:
            tokens.append(Token(simple[c], c, line, col, col + 1))
            i += 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token("op", sym, line, col, col + len(sym)))
                i += len(sym)
                break
        else:
            raise err(f"unknown operator or character {c!r}", col)
    tokens.append(Token("eof", "", line, n + 1, n + 1))
    return tokens


# ---------------------------------------------------------------------------
# Parser

_ATOM_START = {"int", "char", "str", "ident", "lparen", "lbracket", "backslash"}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def err(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.col)

    def expect(self, kind: str, what: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {what}", tok.line, tok.col)
        return tok

    # -- expressions --

    def parse_expr(self, min_prec: int = 0) -> Expr:
        lhs = self.parse_app()
        prev: tuple[int, Assoc] | None = None
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in OPERATORS:
                prec, assoc = OPERATORS[tok.text]
                op_name = tok.text
            elif tok.kind == "btick":
                prec, assoc = BACKTICK_FIXITY
                op_name = tok.text
            else:
                break
            if prec < min_prec:
                break
            if prev is not None and prev[0] == prec and (
                prev[1] is Assoc.NONE or assoc is Assoc.NONE
            ):
                raise self.err(f"cannot chain non-associative operator {op_name!r}")
            self.next()
            rhs = self.parse_expr(prec if assoc is Assoc.RIGHT else prec + 1)
            span = _merge(lhs.extent, rhs.extent)
            inner = _at(App(_at(Ident(op_name), tok.span), lhs), _merge(lhs.extent, tok.span))
            lhs = _at(App(inner, rhs), span)
            prev = (prec, assoc)
        return lhs

    def parse_app(self) -> Expr:
        # A leading `- <int>` is a negative literal only where an operand is
        # required; in the continuation of an application it is subtraction.
        expr = self.parse_atom(allow_negative=True)
        while self.peek().kind in _ATOM_START:
            arg = self.parse_atom(allow_negative=False)
            expr = _at(App(expr, arg), _merge(expr.extent, arg.extent))
        return expr

    def parse_atom(self, allow_negative: bool = True) -> Expr:
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            return _at(IntLit(int(tok.text)), tok.span)
        if (
            allow_negative
            and tok.kind == "op"
            and tok.text == "-"
            and self.tokens[self.i + 1].kind == "int"
        ):
            self.next()
            num = self.next()
            return _at(IntLit(-int(num.text)), Span(tok.line, tok.col, num.end))
        if tok.kind == "char":
            self.next()
            return _at(CharLit(tok.text), tok.span)
        if tok.kind == "str":
            self.next()
            return _at(StrLit(tok.text), tok.span)
        if tok.kind == "ident":
            self.next()
            name = tok.text
            if len(name) == 1 and name.isalpha() and name.islower():
                return _at(MetaVar(name), tok.span)
            return _at(Ident(name), tok.span)
        if tok.kind == "lbracket":
            self.next()
            elements: list[Expr] = []
            if self.peek().kind != "rbracket":
                elements.append(self.parse_expr())
                while self.peek().kind == "comma":
                    self.next()
                    elements.append(self.parse_expr())
            close = self.expect("rbracket", "']'")
            return _at(ListLit(tuple(elements)), Span(tok.line, tok.col, close.end))
        if tok.kind == "lparen":
            self.next()
            nxt = self.peek()
            if nxt.kind == "rparen":
                close = self.next()
                return _at(Ident("()"), Span(tok.line, tok.col, close.end))
            if nxt.kind == "op" and self.tokens[self.i + 1].kind == "rparen":
                if nxt.text == "$" or nxt.text not in OPERATORS:
                    raise self.err(f"operator {nxt.text!r} cannot be named here", nxt)
                self.next()
                close = self.next()
                return _at(Ident(nxt.text), Span(tok.line, tok.col, close.end))
            inner = self.parse_expr()
            if self.peek().kind == "comma":
                self.next()
                second = self.parse_expr()
                close = self.expect("rparen", "')'")
                return _at(TupleLit(inner, second), Span(tok.line, tok.col, close.end))
            close = self.expect("rparen", "')'")
            # The node reports its own span; the extent keeps the wrapping
            # parentheses so enclosing expressions slice to complete text.
            return _at(inner, inner.pos, Span(tok.line, tok.col, close.end))
        if tok.kind == "backslash":
            self.next()
            params: list[str] = []
            while self.peek().kind == "ident":
                params.append(self.next().text)
            if not params:
                raise self.err("expected parameter after '\\'")
            arrow = self.next()
            if arrow.kind != "op" or arrow.text != "->":
                raise ParseError("expected '->' in lambda", arrow.line, arrow.col)
            body = self.parse_expr()
            expr = body
            for p in reversed(params):
                expr = Lambda(p, expr)
            return _at(expr, _merge(tok.span, body.extent))
        raise self.err(f"unexpected {tok.text!r}" if tok.text else "unexpected end of input")


# ---------------------------------------------------------------------------
# Normalization


def normalize(e: Expr) -> Expr:
    """Desugar to the matching normal form: no ``$``, no string literals.

    Idempotent; spans are carried over from the nodes being rewritten.
    """
    if isinstance(e, App):
        # Rewrite `f $ x` to `f x` before descending, so the bare-$ error
        # below only fires for a genuinely unapplied operator.
        fn_node = e.function
        if (
            isinstance(fn_node, App)
            and isinstance(fn_node.function, Ident)
            and fn_node.function.name == "$"
        ):
            return _copy_spans(App(normalize(fn_node.argument), normalize(e.argument)), e)
        return _copy_spans(App(normalize(fn_node), normalize(e.argument)), e)
    if isinstance(e, StrLit):
        chars = tuple(_copy_spans(CharLit(c), e) for c in e.value)
        return _copy_spans(ListLit(chars), e)
    if isinstance(e, ListLit):
        return _copy_spans(ListLit(tuple(normalize(x) for x in e.elements)), e)
    if isinstance(e, TupleLit):
        return _copy_spans(TupleLit(normalize(e.first), normalize(e.second)), e)
    if isinstance(e, Lambda):
        return _copy_spans(Lambda(e.param, normalize(e.body)), e)
    if isinstance(e, Ident) and e.name == "$":
        raise ParseError("'$' must be applied to two arguments")
    return e


def _parse_tokens(tokens: list[Token]) -> Expr:
    parser = _Parser(tokens)
    expr = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
    return normalize(expr)


def parse_expr(text: str, line: int = 1) -> Expr:
    """Parse and normalize a single expression."""
    return _parse_tokens(tokenize(text, line))


# ---------------------------------------------------------------------------
# Traversal helpers


def metavars(e: Expr) -> set[str]:
    if isinstance(e, MetaVar):
        return {e.name}
    if isinstance(e, App):
        return metavars(e.function) | metavars(e.argument)
    if isinstance(e, ListLit):
        out: set[str] = set()
        for x in e.elements:
            out |= metavars(x)
        return out
    if isinstance(e, TupleLit):
        return metavars(e.first) | metavars(e.second)
    if isinstance(e, Lambda):
        return metavars(e.body)
    return set()


def contains_lambda(e: Expr) -> bool:
    if isinstance(e, Lambda):
        return True
    if isinstance(e, App):
        return contains_lambda(e.function) or contains_lambda(e.argument)
    if isinstance(e, ListLit):
        return any(contains_lambda(x) for x in e.elements)
    if isinstance(e, TupleLit):
        return contains_lambda(e.first) or contains_lambda(e.second)
    return False


def subexpressions(e: Expr):
    """Pre-order traversal: outermost expression first."""
    yield e
    if isinstance(e, App):
        yield from subexpressions(e.function)
        yield from subexpressions(e.argument)
    elif isinstance(e, ListLit):
        for x in e.elements:
            yield from subexpressions(x)
    elif isinstance(e, TupleLit):
        yield from subexpressions(e.first)
        yield from subexpressions(e.second)
    elif isinstance(e, Lambda):
        yield from subexpressions(e.body)


def substitute(e: Expr, mapping: dict[str, Expr]) -> Expr:
    """Replace metavariables; hint sides contain no binders, so plain
    structural substitution is capture-safe."""
    if isinstance(e, MetaVar) and e.name in mapping:
        return mapping[e.name]
    if isinstance(e, App):
        return App(substitute(e.function, mapping), substitute(e.argument, mapping))
    if isinstance(e, ListLit):
        return ListLit(tuple(substitute(x, mapping) for x in e.elements))
    if isinstance(e, TupleLit):
        return TupleLit(substitute(e.first, mapping), substitute(e.second, mapping))
    if isinstance(e, Lambda):
        return Lambda(e.param, substitute(e.body, mapping))
    return e


# ---------------------------------------------------------------------------
# Pretty printer

_APP_LEVEL = 10
_ARG_LEVEL = 11
_ATOM_LEVEL = 99


def _spine(e: Expr) -> tuple[Expr, list[Expr]]:
    args: list[Expr] = []
    while isinstance(e, App):
        args.append(e.argument)
        e = e.function
    args.reverse()
    return e, args


def _level(e: Expr) -> int:
    if isinstance(e, Lambda):
        return 0
    if isinstance(e, IntLit) and e.value < 0:
        return 0
    if isinstance(e, App):
        head, args = _spine(e)
        if isinstance(head, Ident) and head.name in OPERATORS and len(args) >= 2:
            return OPERATORS[head.name][0]
        return _APP_LEVEL
    return _ATOM_LEVEL


def pretty(e: Expr, _ctx: int = 0) -> str:
    """Minimal-parenthesization rendering; re-parsing gives the same tree."""
    text = _pretty_inner(e)
    if _level(e) < _ctx:
        return f"({text})"
    return text


def _pretty_inner(e: Expr) -> str:
    if isinstance(e, MetaVar):
        return e.name
    if isinstance(e, Ident):
        if e.name in OPERATORS:
            return f"({e.name})"
        return e.name
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, CharLit):
        return "'" + _escape(e.value, "'") + "'"
    if isinstance(e, StrLit):
        return '"' + "".join(_escape(c, '"') for c in e.value) + '"'
    if isinstance(e, ListLit):
        if e.elements and all(isinstance(x, CharLit) for x in e.elements):
            return '"' + "".join(_escape(x.value, '"') for x in e.elements) + '"'
        return "[" + ", ".join(pretty(x) for x in e.elements) + "]"
    if isinstance(e, TupleLit):
        return f"({pretty(e.first)}, {pretty(e.second)})"
    if isinstance(e, Lambda):
        return f"\\{e.param} -> {pretty(e.body)}"
    assert isinstance(e, App)
    head, args = _spine(e)
    if isinstance(head, Ident) and head.name in OPERATORS and len(args) >= 2:
        prec, assoc = OPERATORS[head.name]
        left = pretty(args[0], prec if assoc is Assoc.LEFT else prec + 1)
        right = pretty(args[1], prec if assoc is Assoc.RIGHT else prec + 1)
        base = f"{left} {head.name} {right}"
        if len(args) == 2:
            return base
        rest = " ".join(pretty(a, _ARG_LEVEL) for a in args[2:])
        return f"({base}) {rest}"
    fn = pretty(head, _APP_LEVEL)
    rendered = " ".join(pretty(a, _ARG_LEVEL) for a in args)
    return f"{fn} {rendered}"


def _escape(c: str, quote: str) -> str:
    if c == "\\":
        return "\\\\"
    if c == quote:
        return "\\" + quote
    if c == "\n":
        return "\\n"
    if c == "\t":
        return "\\t"
    return c


# ---------------------------------------------------------------------------
# Hints


class Severity(enum.Enum):
    WARN = "warn"
    ERROR = "error"


class Note(enum.Enum):
    INCREASES_LAZINESS = "IncreasesLaziness"


class EqRequirement(enum.Enum):
    NONE = "none"
    SYNTACTIC = "syntactic"
    SYM = "sym"
    EQUIV = "equiv"


@dataclass(frozen=True)
class Hint:
    severity: Severity
    lhs: Expr
    rhs: Expr
    note: Note | None = None
    eq_requirement: EqRequirement = EqRequirement.NONE
    source_text: str = ""

    def __post_init__(self) -> None:
        extra = metavars(self.rhs) - metavars(self.lhs)
        if extra:
            names = ", ".join(sorted(extra))
            raise ParseError(f"right-hand side binds unknown metavariable(s): {names}")


def parse_hint(line: str, lineno: int = 1) -> Hint:
    """Parse ``<severity> = <lhs> ==> <rhs> [where note = <Note>]``."""
    tokens = tokenize(line, lineno)
    if tokens[0].kind != "ident":
        raise ParseError("expected severity at start of hint", lineno, tokens[0].col)
    sev_tok = tokens[0]
    try:
        severity = Severity(sev_tok.text)
    except ValueError:
        raise ParseError(f"unknown severity {sev_tok.text!r}", lineno, sev_tok.col) from None
    if len(tokens) < 2 or tokens[1].kind != "op" or tokens[1].text != "=":
        raise ParseError("expected '=' after severity", lineno, tokens[min(1, len(tokens) - 1)].col)

    depth = 0
    arrow_idx = -1
    for idx, tok in enumerate(tokens):
        if tok.kind in ("lparen", "lbracket"):
            depth += 1
        elif tok.kind in ("rparen", "rbracket"):
            depth -= 1
        elif tok.kind == "op" and tok.text == "==>" and depth == 0:
            if arrow_idx != -1:
                raise ParseError("more than one '==>' in hint", lineno, tok.col)
            arrow_idx = idx
    if arrow_idx == -1:
        raise ParseError("missing '==>' in hint", lineno, tokens[-1].col)

    where_idx = next(
        (i for i in range(arrow_idx + 1, len(tokens)) if tokens[i].kind == "where"), None
    )
    note: Note | None = None
    end = where_idx if where_idx is not None else len(tokens) - 1
    if where_idx is not None:
        clause = tokens[where_idx + 1 : -1]
        if (
            len(clause) != 3
            or clause[0].kind != "ident"
            or clause[0].text != "note"
            or clause[1].kind != "op"
            or clause[1].text != "="
            or clause[2].kind != "ident"
        ):
            raise ParseError("expected 'note = <Note>' after 'where'", lineno, tokens[where_idx].col)
        try:
            note = Note(clause[2].text)
        except ValueError:
            raise ParseError(f"unknown note {clause[2].text!r}", lineno, clause[2].col) from None

    eof = tokens[-1]
    lhs_tokens = tokens[2:arrow_idx] + [eof]
    rhs_tokens = tokens[arrow_idx + 1 : end] + [eof]
    if len(lhs_tokens) == 1:
        raise ParseError("empty left-hand side", lineno, tokens[arrow_idx].col)
    if len(rhs_tokens) == 1:
        raise ParseError("empty right-hand side", lineno, tokens[arrow_idx].col)
    lhs = _parse_tokens(lhs_tokens)
    rhs = _parse_tokens(rhs_tokens)
    return Hint(severity, lhs, rhs, note, EqRequirement.NONE, line.strip())


def parse_hint_file(text: str) -> list[Hint]:
    """One hint per line; blank lines and ``--`` comments are skipped."""
    hints = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("--"):
            continue
        hints.append(parse_hint(line, lineno))
    return hints


# ---------------------------------------------------------------------------
# Source files


@dataclass(frozen=True)
class SourceBinding:
    name: str
    params: tuple[str, ...]
    body: Expr
    line: int
    col: int            # 1-indexed column where the body starts
    source_line: str    # original text, for reporting spans


def parse_source(text: str) -> list[SourceBinding]:
    """Parse a file of ``name params... = expr`` bindings, one per line."""
    bindings = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("--"):
            continue
        tokens = tokenize(line, lineno)
        if tokens[0].kind != "ident":
            raise ParseError("expected binding name", lineno, tokens[0].col)
        name = tokens[0].text
        params: list[str] = []
        i = 1
        while tokens[i].kind == "ident":
            params.append(tokens[i].text)
            i += 1
        if tokens[i].kind != "op" or tokens[i].text != "=":
            raise ParseError("expected '=' in binding", lineno, tokens[i].col)
        body_tokens = tokens[i + 1 : -1]
        if not body_tokens:
            raise ParseError("empty binding body", lineno, tokens[i].col)
        body = _parse_tokens(body_tokens + [tokens[-1]])
        bindings.append(
            SourceBinding(name, tuple(params), body, lineno, body_tokens[0].col, line)
        )
    return bindings
