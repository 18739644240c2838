"""hintcheck: certify rewrite hints for a lazy list language by
bounded-exhaustive testing over partial values."""

from .certify import (
    CheckReport,
    Consistency,
    Verdict,
    VerdictKind,
    Witness,
    annotation_consistency,
    check_hint,
    check_refinement,
    witness,
    witness_text,
)
from .domain import (
    BOTTOM,
    Bottom,
    Cause,
    CharVal,
    Con,
    Indefinite,
    IntVal,
    OrderResult,
    PValue,
    Relation,
    Tag,
    compare_values,
    render,
    truncate,
)
from .enumeration import EnumConfig, enum_valuations, enum_values
from .evaluator import DEFAULT_FUEL, DEFAULT_OBS_DEPTH, evaluate
from .linter import Suggestion, match, render_suggestion, scan
from .prelude import prelude
from .proofs import emit_proofs, goal_line
from .syntax import (
    Expr,
    Hint,
    Note,
    ParseError,
    Severity,
    SourceBinding,
    metavars,
    normalize,
    parse_expr,
    parse_hint,
    parse_hint_file,
    parse_source,
    pretty,
)
from .typecheck import Inference, Signature, Type, TypingError, infer, unify

__version__ = "0.1.0"

__all__ = [
    "BOTTOM",
    "Bottom",
    "Cause",
    "CharVal",
    "CheckReport",
    "Con",
    "Consistency",
    "DEFAULT_FUEL",
    "DEFAULT_OBS_DEPTH",
    "EnumConfig",
    "Expr",
    "Hint",
    "Indefinite",
    "Inference",
    "IntVal",
    "Note",
    "OrderResult",
    "PValue",
    "ParseError",
    "Relation",
    "Severity",
    "Signature",
    "SourceBinding",
    "Suggestion",
    "Tag",
    "Type",
    "TypingError",
    "Verdict",
    "VerdictKind",
    "Witness",
    "annotation_consistency",
    "check_hint",
    "check_refinement",
    "compare_values",
    "emit_proofs",
    "enum_valuations",
    "enum_values",
    "evaluate",
    "goal_line",
    "infer",
    "match",
    "metavars",
    "normalize",
    "parse_expr",
    "parse_hint",
    "parse_hint_file",
    "parse_source",
    "pretty",
    "prelude",
    "render",
    "render_suggestion",
    "scan",
    "truncate",
    "unify",
    "witness",
    "witness_text",
]
