"""Command-line interface: certify, lint, emit-proofs, dump-prelude."""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import certify as certify_mod
from . import linter, proofs
from .domain import render
from .enumeration import EnumConfig
from .evaluator import DEFAULT_FUEL, DEFAULT_OBS_DEPTH
from .prelude import dump_listing, prelude
from .syntax import Hint, ParseError, parse_hint, parse_hint_file
from .typecheck import TypingError, infer

EXIT_OK = 0
EXIT_ANNOTATION = 1      # invalid hint, missing note, or unnecessary note
EXIT_PARSE_TYPE = 2      # hint or source failed to parse or type
EXIT_INCONCLUSIVE = 3    # nothing worse than an inconclusive verdict


def default_hints_path() -> Path:
    """Location of the bundled hint database."""
    return Path(resources.files("hintcheck") / "hints" / "default.hints")


def _add_hint_source_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--with",
        dest="with_hints",
        action="append",
        default=[],
        metavar="HINT",
        help="inline hint text (repeatable)",
    )
    p.add_argument(
        "--hints",
        dest="hint_files",
        action="append",
        default=[],
        metavar="FILE",
        help="hint database file (repeatable)",
    )


def _add_enum_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--depth", type=int, default=3, help="enumeration rank bound (default 3)")
    p.add_argument(
        "--ints",
        default="-1..2",
        metavar="LO..HI",
        help="integer pool as an inclusive range (default -1..2)",
    )
    p.add_argument("--chars", default="ab", metavar="SET", help="character pool (default ab)")
    p.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="unfolding budget per evaluation")
    p.add_argument(
        "--obs-depth", type=int, default=DEFAULT_OBS_DEPTH, help="observation depth for results"
    )


def _parse_ints(text: str) -> tuple[int, ...]:
    lo_text, sep, hi_text = text.partition("..")
    if not sep:
        raise ValueError(f"--ints wants LO..HI, got {text!r}")
    lo, hi = int(lo_text), int(hi_text)
    if lo > hi:
        raise ValueError(f"--ints range is empty: {text!r}")
    return tuple(range(lo, hi + 1))


def _enum_config(args) -> EnumConfig:
    return EnumConfig(depth=args.depth, ints=_parse_ints(args.ints), chars=tuple(args.chars))


def _collect_hints(args) -> list[Hint]:
    """Hints from files first (in order), then inline --with hints.

    At least one source must be named; a named file that happens to
    contain no hints is an empty database, not an error.
    """
    if not args.hint_files and not args.with_hints:
        raise ParseError("no hint source given; use --hints or --with")
    hints: list[Hint] = []
    for path in args.hint_files:
        text = Path(path).read_text(encoding="utf-8")
        hints.extend(parse_hint_file(text))
    for text in args.with_hints:
        hints.append(parse_hint(text))
    return hints


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hintcheck",
        description="Certify and apply rewrite hints for a lazy list language "
        "by bounded-exhaustive testing over partial values.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_certify = sub.add_parser("certify", help="check every hint against all enumerated inputs")
    _add_hint_source_args(p_certify)
    _add_enum_args(p_certify)
    p_certify.add_argument("--format", choices=("text", "json"), default="text")

    p_lint = sub.add_parser("lint", help="suggest rewrites in source files")
    _add_hint_source_args(p_lint)
    p_lint.add_argument("files", nargs="+", metavar="FILE")

    p_proofs = sub.add_parser("emit-proofs", help="write hints as proof goals")
    _add_hint_source_args(p_proofs)
    p_proofs.add_argument("--proof", metavar="FILE", help="output path (default: stdout)")

    sub.add_parser("dump-prelude", help="print the evaluator's definition table")
    return parser


# ---------------------------------------------------------------------------
# certify


def _qualifier(report: certify_mod.CheckReport) -> str:
    cfg = report.config
    ints = ",".join(str(n) for n in cfg.canonical_ints)
    return (
        f"bounded-exhaustive at depth {cfg.depth}, ints {{{ints}}}, "
        f"chars {{{','.join(cfg.canonical_chars)}}}, fuel {report.fuel}, "
        f"observation depth {report.obs_depth}"
    )


def _render_text(report: certify_mod.CheckReport) -> str:
    lines = [report.hint.source_text]
    if report.verdict is None:
        lines.append(f"  verdict: not checkable ({report.reason})")
        lines.append(f"  annotations: {report.consistency.value}")
        return "\n".join(lines) + "\n"
    verdict = report.verdict
    kind = verdict.kind
    if kind is certify_mod.VerdictKind.EQUIVALENT:
        lines.append(f"  verdict: Equivalent ({_qualifier(report)})")
    elif kind is certify_mod.VerdictKind.INCONCLUSIVE:
        lines.append(
            f"  verdict: Inconclusive ({verdict.indefinite} indefinite comparison(s); "
            f"no definite counterexample: the sides are equal under the "
            f"divergence-as-bottom reading at fuel {report.fuel}; {_qualifier(report)})"
        )
    else:
        lines.append(f"  verdict: {kind.value} ({_qualifier(report)})")
    if verdict.witness is not None:
        lines.append(f"  witness: {verdict.witness}")
    if verdict.greater_witness is not None:
        lines.append(f"  witness (other direction): {verdict.greater_witness}")
    lines.append(f"  annotations: {report.consistency.value}")
    if report.eq_assumed:
        lines.append("  note: assumes strict, symmetric equality (checked at Integer)")
    elif report.instance_checked:
        lines.append("  note: polymorphic hint, instance-checked at Integer")
    lines.append(
        f"  tested {verdict.tested} valuation(s), {verdict.indefinite} indefinite, "
        f"{report.duration:.3f}s"
    )
    return "\n".join(lines) + "\n"


def _witness_json(witness: certify_mod.Witness | None):
    if witness is None:
        return None
    return {
        "env": {k: render(v) for k, v in sorted(witness.env.items())},
        "lhs": render(witness.lhs),
        "rhs": render(witness.rhs),
    }


def _render_json(report: certify_mod.CheckReport) -> str:
    verdict = report.verdict
    payload = {
        "hint": report.hint.source_text,
        "severity": report.hint.severity.value,
        "verdict": verdict.kind.value if verdict else None,
        "witness": _witness_json(verdict.witness) if verdict else None,
        "witness_other_direction": _witness_json(verdict.greater_witness) if verdict else None,
        "tested": verdict.tested if verdict else 0,
        "indefinite": verdict.indefinite if verdict else 0,
        "consistency": report.consistency.value,
        "reason": report.reason,
        "instance_checked": report.instance_checked,
        "assumes_symmetric_eq": report.eq_assumed,
        "depth": report.config.depth,
        "fuel": report.fuel,
        "obs_depth": report.obs_depth,
        "duration_s": round(report.duration, 6),
    }
    return json.dumps(payload, sort_keys=True)


def run_certify(args) -> int:
    try:
        hints = _collect_hints(args)
        cfg = _enum_config(args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"hintcheck: {exc}", file=sys.stderr)
        return EXIT_PARSE_TYPE
    exit_code = EXIT_OK
    for hint in hints:
        report = certify_mod.check_hint(hint, cfg, args.fuel, args.obs_depth)
        if args.format == "json":
            print(_render_json(report))
        else:
            print(_render_text(report), end="")
        if report.verdict is None:
            exit_code = max(exit_code, EXIT_PARSE_TYPE)
        elif report.consistency is not certify_mod.Consistency.CONSISTENT:
            exit_code = max(exit_code, EXIT_ANNOTATION)
        elif report.verdict.kind is certify_mod.VerdictKind.INCONCLUSIVE:
            if exit_code == EXIT_OK:
                exit_code = EXIT_INCONCLUSIVE
    return exit_code


# ---------------------------------------------------------------------------
# lint


def run_lint(args) -> int:
    try:
        hints = _collect_hints(args)
    except (ParseError, OSError) as exc:
        print(f"hintcheck: {exc}", file=sys.stderr)
        return EXIT_PARSE_TYPE
    any_suggestions = False
    blocks: list[str] = []
    for path in args.files:
        try:
            text = Path(path).read_text(encoding="utf-8")
            suggestions = linter.scan(path, text, hints)
        except (ParseError, OSError) as exc:
            print(f"hintcheck: {path}: {exc}", file=sys.stderr)
            return EXIT_PARSE_TYPE
        for s in suggestions:
            blocks.append(linter.render_suggestion(s))
            any_suggestions = True
    print("\n".join(blocks), end="")
    return EXIT_ANNOTATION if any_suggestions else EXIT_OK


# ---------------------------------------------------------------------------
# emit-proofs


def run_emit_proofs(args) -> int:
    try:
        hints = _collect_hints(args)
    except (ParseError, OSError) as exc:
        print(f"hintcheck: {exc}", file=sys.stderr)
        return EXIT_PARSE_TYPE
    sig, _ = prelude()
    for hint in hints:
        try:
            infer(hint, sig)
        except TypingError as exc:
            print(f"hintcheck: {hint.source_text}: {exc}", file=sys.stderr)
            return EXIT_PARSE_TYPE
    text = proofs.emit_proofs(hints)
    if args.proof:
        try:
            with open(args.proof, "w", encoding="ascii", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"hintcheck: {exc}", file=sys.stderr)
            return EXIT_PARSE_TYPE
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "certify":
        return run_certify(args)
    if args.command == "lint":
        return run_lint(args)
    if args.command == "emit-proofs":
        return run_emit_proofs(args)
    if args.command == "dump-prelude":
        sys.stdout.write(dump_listing())
        return EXIT_OK
    raise AssertionError(f"unhandled command {args.command}")


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
