"""The certification pipeline.

Both sides of a hint are evaluated over every enumerated valuation of
its metavariables and compared under the definedness order.  Definite
disagreements aggregate into a verdict with the first (hence minimal)
failing valuation as witness; indefinite comparisons never produce
witnesses, they only count towards an Inconclusive outcome.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

from . import typecheck
from .domain import OrderResult, PValue, Relation, compare_values, render
from .enumeration import EnumConfig, UnsupportedType, enum_valuations
from .evaluator import DEFAULT_FUEL, DEFAULT_OBS_DEPTH, EvaluationLimitError, evaluate
from .prelude import prelude
from .syntax import Expr, Hint, Note, contains_lambda
from .typecheck import Type, TypingError


class VerdictKind(enum.Enum):
    EQUIVALENT = "Equivalent"
    INCREASES_LAZINESS = "IncreasesLaziness"
    LESS_DEFINED = "LessDefined"
    INCOMPARABLE = "Incomparable"
    MIXED = "Mixed"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Witness:
    env: dict[str, PValue]
    lhs: PValue
    rhs: PValue

    def __str__(self) -> str:
        bindings = ", ".join(f"{k} = {render(v)}" for k, v in sorted(self.env.items()))
        if not bindings:
            bindings = "(no metavariables)"
        return f"{bindings} (lhs = {render(self.lhs)}, rhs = {render(self.rhs)})"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    witness: Witness | None = None
    # Mixed only: the minimal valuation in the opposite (lhs above rhs)
    # direction; ``witness`` then holds the lhs-below-rhs one.
    greater_witness: Witness | None = None
    tested: int = 0
    indefinite: int = 0

    @property
    def holds_as_refinement(self) -> bool:
        """Does this outcome certify lhs below-or-equal rhs everywhere?"""
        return self.kind in (VerdictKind.EQUIVALENT, VerdictKind.INCREASES_LAZINESS)


class Consistency(enum.Enum):
    CONSISTENT = "consistent"
    MISSING_NOTE = "missing_note"
    UNNECESSARY_NOTE = "unnecessary_note"
    INVALID_HINT = "invalid_hint"


@dataclass
class CheckReport:
    hint: Hint
    verdict: Verdict | None
    consistency: Consistency
    reason: str | None = None           # set when the hint could not be checked
    metavar_types: dict[str, Type] | None = None
    instance_checked: bool = False
    eq_assumed: bool = False
    config: EnumConfig = field(default_factory=EnumConfig)
    fuel: int = DEFAULT_FUEL
    obs_depth: int = DEFAULT_OBS_DEPTH
    duration: float = 0.0

    @property
    def tested(self) -> int:
        return self.verdict.tested if self.verdict else 0

    @property
    def indefinite(self) -> int:
        return self.verdict.indefinite if self.verdict else 0


def _sweep(
    lhs: Expr,
    rhs: Expr,
    variables: dict[str, Type],
    cfg: EnumConfig,
    fuel: int,
    obs_depth: int,
) -> Verdict:
    tested = 0
    indefinite = 0
    first_less: Witness | None = None
    first_greater: Witness | None = None
    first_incomparable: Witness | None = None
    for env in enum_valuations(variables, cfg):
        tested += 1
        lv = evaluate(lhs, env, fuel, obs_depth)
        rv = evaluate(rhs, env, fuel, obs_depth)
        result: OrderResult = compare_values(lv, rv)
        if not result.definite:
            indefinite += 1
            continue
        if result.relation is Relation.EQUAL:
            continue
        witness = Witness(env, lv, rv)
        if result.relation is Relation.STRICTLY_LESS:
            if first_less is None:
                first_less = witness
        elif result.relation is Relation.STRICTLY_GREATER:
            if first_greater is None:
                first_greater = witness
        else:
            # A definite incomparability dominates every other signal and
            # later valuations cannot displace the minimal witness, so the
            # sweep may stop here.
            first_incomparable = witness
            break

    if first_incomparable is not None:
        kind, witness, other = VerdictKind.INCOMPARABLE, first_incomparable, None
    elif first_less is not None and first_greater is not None:
        kind, witness, other = VerdictKind.MIXED, first_less, first_greater
    elif first_less is not None:
        kind, witness, other = VerdictKind.INCREASES_LAZINESS, first_less, None
    elif first_greater is not None:
        kind, witness, other = VerdictKind.LESS_DEFINED, first_greater, None
    elif indefinite > 0:
        kind, witness, other = VerdictKind.INCONCLUSIVE, None, None
    else:
        kind, witness, other = VerdictKind.EQUIVALENT, None, None
    return Verdict(kind, witness, other, tested, indefinite)


def annotation_consistency(kind: VerdictKind, note: Note | None) -> Consistency:
    """The fixed verdict/annotation table.

    A definedness-decreasing or incomparable rewrite is invalid whatever
    its note says; only the laziness note exists, so it is required
    exactly for laziness-increasing rewrites.  Inconclusive outcomes
    cannot convict an annotation and map to consistent (the exit code
    still flags them).
    """
    if kind in (VerdictKind.LESS_DEFINED, VerdictKind.INCOMPARABLE, VerdictKind.MIXED):
        return Consistency.INVALID_HINT
    if kind is VerdictKind.EQUIVALENT:
        return Consistency.UNNECESSARY_NOTE if note is not None else Consistency.CONSISTENT
    if kind is VerdictKind.INCREASES_LAZINESS:
        if note is Note.INCREASES_LAZINESS:
            return Consistency.CONSISTENT
        return Consistency.MISSING_NOTE
    return Consistency.CONSISTENT


def check_hint(
    hint: Hint,
    cfg: EnumConfig | None = None,
    fuel: int = DEFAULT_FUEL,
    obs_depth: int = DEFAULT_OBS_DEPTH,
) -> CheckReport:
    """Certify one hint: type it, sweep all valuations, judge the note."""
    cfg = cfg or EnumConfig()
    start = time.perf_counter()

    def invalid(reason: str) -> CheckReport:
        return CheckReport(
            hint=hint,
            verdict=None,
            consistency=Consistency.INVALID_HINT,
            reason=reason,
            config=cfg,
            fuel=fuel,
            obs_depth=obs_depth,
            duration=time.perf_counter() - start,
        )

    if contains_lambda(hint.lhs) or contains_lambda(hint.rhs):
        return invalid("hint contains a lambda; only first-order hints are certifiable")
    sig, _ = prelude()
    try:
        inference = typecheck.infer(hint, sig)
    except TypingError as exc:
        return invalid(str(exc))
    try:
        verdict = _sweep(
            inference.lhs, inference.rhs, inference.metavar_types, cfg, fuel, obs_depth
        )
    except (UnsupportedType, EvaluationLimitError) as exc:
        return invalid(str(exc))
    # An explicit equality requirement on the hint counts like an inferred
    # one: testing happens at Integer, whose equality is strict and
    # symmetric, and the report says so.
    from .syntax import EqRequirement

    eq_assumed = inference.eq_assumed or hint.eq_requirement is not EqRequirement.NONE
    return CheckReport(
        hint=hint,
        verdict=verdict,
        consistency=annotation_consistency(verdict.kind, hint.note),
        metavar_types=inference.metavar_types,
        instance_checked=inference.instance_checked,
        eq_assumed=eq_assumed,
        config=cfg,
        fuel=fuel,
        obs_depth=obs_depth,
        duration=time.perf_counter() - start,
    )


def check_refinement(
    lhs: Expr,
    rhs: Expr,
    variables: dict[str, Type],
    cfg: EnumConfig | None = None,
    fuel: int = DEFAULT_FUEL,
    obs_depth: int = DEFAULT_OBS_DEPTH,
) -> Verdict:
    """Test the property "for all inputs, lhs is below or equal to rhs".

    The property holds when the verdict is Equivalent or
    IncreasesLaziness; Inconclusive is reported as such.
    """
    return _sweep(lhs, rhs, variables, cfg or EnumConfig(), fuel, obs_depth)


def witness(report: CheckReport) -> dict[str, PValue] | None:
    """The minimal failing valuation of a report, if any."""
    if report.verdict is None or report.verdict.witness is None:
        return None
    return dict(report.verdict.witness.env)


def witness_text(report: CheckReport) -> dict[str, str] | None:
    env = witness(report)
    if env is None:
        return None
    return {name: render(value) for name, value in sorted(env.items())}
