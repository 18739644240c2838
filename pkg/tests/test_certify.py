import pytest

from hintcheck.certify import (
    Consistency,
    VerdictKind,
    annotation_consistency,
    check_hint,
    check_refinement,
    witness,
    witness_text,
)
from hintcheck.domain import (
    BOTTOM,
    Con,
    IntVal,
    Relation,
    Tag,
    compare_values,
    cons,
)
from hintcheck.enumeration import EnumConfig, enum_valuations
from hintcheck.evaluator import evaluate
from hintcheck.prelude import prelude
from hintcheck.syntax import Note, parse_expr, parse_hint
from hintcheck.typecheck import INTEGER, TList, infer

REVREV = "warn = reverse (reverse x) ==> x where note = IncreasesLaziness"
TAKE_INIT = "warn = take (length x - 1) x ==> init x"
HEAD_INDEX = "warn = head (drop n x) ==> x !! n"
TAKE_EQ = "warn = take i s == t ==> (i == length t) && (t `isPrefixOf` s)"


class TestKnownHints:
    def test_reverse_reverse_increases_laziness(self):
        report = check_hint(parse_hint(REVREV))
        assert report.verdict.kind is VerdictKind.INCREASES_LAZINESS
        assert report.verdict.witness.env == {"x": cons(BOTTOM, BOTTOM)}
        assert report.verdict.witness.lhs == BOTTOM
        assert report.verdict.witness.rhs == cons(BOTTOM, BOTTOM)
        assert report.consistency is Consistency.CONSISTENT

    def test_reverse_reverse_without_note_is_missing_note(self):
        report = check_hint(parse_hint("warn = reverse (reverse x) ==> x"))
        assert report.verdict.kind is VerdictKind.INCREASES_LAZINESS
        assert report.consistency is Consistency.MISSING_NOTE

    def test_take_init_is_invalid_with_empty_list_crash(self):
        # The rewrite crashes on [] (left side [], right side bottom) and
        # is lazier on spine-partial lists, so both directions show up.
        report = check_hint(parse_hint(TAKE_INIT))
        assert report.consistency is Consistency.INVALID_HINT
        assert report.verdict.kind is VerdictKind.MIXED
        crash = report.verdict.greater_witness
        assert crash.env == {"x": Con(Tag.NIL)}
        assert crash.lhs == Con(Tag.NIL)
        assert crash.rhs == BOTTOM
        lazier = report.verdict.witness
        assert lazier.env == {"x": cons(BOTTOM, cons(BOTTOM, BOTTOM))}

    def test_take_init_mixed_witnesses_are_minimal_per_direction(self):
        # Independent re-scan: walk valuations directly and record the
        # first strictly-less and strictly-greater outcomes.
        hint = parse_hint(TAKE_INIT)
        inf = infer(hint, prelude()[0])
        firsts = {}
        for env in enum_valuations(inf.metavar_types, EnumConfig()):
            lv = evaluate(inf.lhs, env)
            rv = evaluate(inf.rhs, env)
            r = compare_values(lv, rv)
            if r.definite and r.relation not in firsts:
                firsts[r.relation] = env
        report = check_hint(hint)
        assert report.verdict.witness.env == firsts[Relation.STRICTLY_LESS]
        assert report.verdict.greater_witness.env == firsts[Relation.STRICTLY_GREATER]

    def test_head_index_less_defined_with_negative_index(self):
        report = check_hint(parse_hint(HEAD_INDEX))
        assert report.verdict.kind is VerdictKind.LESS_DEFINED
        env = report.verdict.witness.env
        assert env["n"] == IntVal(-1)
        assert env["x"] == cons(IntVal(0), BOTTOM)
        assert report.verdict.witness.lhs == IntVal(0)
        assert report.verdict.witness.rhs == BOTTOM
        assert report.consistency is Consistency.INVALID_HINT

    def test_head_index_equivalent_for_non_negative_pool(self):
        report = check_hint(parse_hint(HEAD_INDEX), EnumConfig(ints=(0, 1, 2)))
        assert report.verdict.kind is VerdictKind.EQUIVALENT
        assert report.consistency is Consistency.CONSISTENT

    def test_take_eq_prefix_is_incomparable(self):
        report = check_hint(parse_hint(TAKE_EQ))
        assert report.verdict.kind is VerdictKind.INCOMPARABLE
        w = report.verdict.witness
        assert w.lhs == Con(Tag.TRUE)
        assert w.rhs == Con(Tag.FALSE)
        # take (-1) s == t never looks at s, so the minimal witness is
        # already at a bottom list: i = -1, s = _|_, t = [].
        assert w.env == {"i": IntVal(-1), "s": BOTTOM, "t": Con(Tag.NIL)}
        assert report.consistency is Consistency.INVALID_HINT
        assert report.eq_assumed

    def test_identity_hint(self):
        report = check_hint(parse_hint("warn = x ==> x"))
        assert report.verdict.kind is VerdictKind.EQUIVALENT
        assert report.verdict.witness is None
        assert report.verdict.indefinite == 0
        assert report.consistency is Consistency.CONSISTENT

    def test_divergence_is_inconclusive(self):
        report = check_hint(parse_hint("warn = head [] ==> last (repeat 1)"))
        assert report.verdict.kind is VerdictKind.INCONCLUSIVE
        assert report.verdict.tested == 1
        assert report.verdict.indefinite == 1
        assert report.verdict.witness is None


class TestInvalidInputs:
    def test_lambda_hint_rejected(self):
        report = check_hint(parse_hint("warn = map (\\x -> x) y ==> y"))
        assert report.verdict is None
        assert report.consistency is Consistency.INVALID_HINT
        assert "lambda" in report.reason

    def test_unknown_identifier(self):
        report = check_hint(parse_hint("warn = frobnicate x ==> x"))
        assert report.verdict is None
        assert "frobnicate" in report.reason

    def test_ill_typed_hint(self):
        report = check_hint(parse_hint("warn = not 1 ==> True"))
        assert report.verdict is None
        assert report.consistency is Consistency.INVALID_HINT

    def test_function_typed_metavariable(self):
        report = check_hint(parse_hint("warn = map f x ==> map f x"))
        assert report.verdict is None
        assert "enumerate" in report.reason


class TestRobustness:
    @pytest.mark.parametrize("text", [TAKE_INIT, HEAD_INDEX, TAKE_EQ])
    def test_doubling_fuel_and_depth_keeps_definite_verdicts(self, text):
        base = check_hint(parse_hint(text))
        doubled = check_hint(parse_hint(text), fuel=20_000, obs_depth=10)
        assert doubled.verdict.kind is base.verdict.kind
        assert doubled.verdict.witness.env == base.verdict.witness.env

    @pytest.mark.parametrize("text", [REVREV, TAKE_INIT, HEAD_INDEX, TAKE_EQ])
    def test_witnesses_reproduce_standalone(self, text):
        report = check_hint(parse_hint(text))
        inf = infer(report.hint, prelude()[0])
        relation_for_kind = {
            VerdictKind.INCREASES_LAZINESS: Relation.STRICTLY_LESS,
            VerdictKind.LESS_DEFINED: Relation.STRICTLY_GREATER,
            VerdictKind.INCOMPARABLE: Relation.INCOMPARABLE,
            VerdictKind.MIXED: Relation.STRICTLY_LESS,
        }
        w = report.verdict.witness
        lv = evaluate(inf.lhs, w.env, report.fuel, report.obs_depth)
        rv = evaluate(inf.rhs, w.env, report.fuel, report.obs_depth)
        r = compare_values(lv, rv)
        assert r.definite
        assert r.relation is relation_for_kind[report.verdict.kind]
        assert lv == w.lhs and rv == w.rhs

    def test_reports_are_deterministic(self):
        a = check_hint(parse_hint(HEAD_INDEX))
        b = check_hint(parse_hint(HEAD_INDEX))
        assert a.verdict == b.verdict


class TestAnnotationTable:
    @pytest.mark.parametrize(
        "kind,note,expected",
        [
            (VerdictKind.EQUIVALENT, None, Consistency.CONSISTENT),
            (VerdictKind.EQUIVALENT, Note.INCREASES_LAZINESS, Consistency.UNNECESSARY_NOTE),
            (VerdictKind.INCREASES_LAZINESS, Note.INCREASES_LAZINESS, Consistency.CONSISTENT),
            (VerdictKind.INCREASES_LAZINESS, None, Consistency.MISSING_NOTE),
            (VerdictKind.LESS_DEFINED, None, Consistency.INVALID_HINT),
            (VerdictKind.LESS_DEFINED, Note.INCREASES_LAZINESS, Consistency.INVALID_HINT),
            (VerdictKind.INCOMPARABLE, None, Consistency.INVALID_HINT),
            (VerdictKind.MIXED, Note.INCREASES_LAZINESS, Consistency.INVALID_HINT),
            (VerdictKind.INCONCLUSIVE, None, Consistency.CONSISTENT),
        ],
    )
    def test_table(self, kind, note, expected):
        assert annotation_consistency(kind, note) is expected

    def test_unnecessary_note_detected(self):
        report = check_hint(parse_hint("warn = id x ==> x where note = IncreasesLaziness"))
        assert report.verdict.kind is VerdictKind.EQUIVALENT
        assert report.consistency is Consistency.UNNECESSARY_NOTE


class TestRefinement:
    def test_reverse_reverse_below_identity(self):
        verdict = check_refinement(
            parse_expr("reverse (reverse x)"), parse_expr("x"), {"x": TList(INTEGER)}
        )
        assert verdict.holds_as_refinement
        assert verdict.kind is VerdictKind.INCREASES_LAZINESS

    def test_reflexivity(self):
        verdict = check_refinement(parse_expr("x"), parse_expr("x"), {"x": INTEGER})
        assert verdict.kind is VerdictKind.EQUIVALENT

    def test_reverse_distributes_over_append_with_strict_witnesses(self):
        verdict = check_refinement(
            parse_expr("reverse (x ++ y)"),
            parse_expr("reverse y ++ reverse x"),
            {"x": TList(INTEGER), "y": TList(INTEGER)},
            EnumConfig(depth=2),
        )
        assert verdict.holds_as_refinement
        assert verdict.kind is VerdictKind.INCREASES_LAZINESS  # strictly below somewhere

    def test_opposite_direction_fails(self):
        verdict = check_refinement(
            parse_expr("x"), parse_expr("reverse (reverse x)"), {"x": TList(INTEGER)}
        )
        assert not verdict.holds_as_refinement
        assert verdict.kind is VerdictKind.LESS_DEFINED


class TestWitnessAccessors:
    def test_witness_and_text(self):
        report = check_hint(parse_hint(HEAD_INDEX))
        env = witness(report)
        assert env == {"n": IntVal(-1), "x": cons(IntVal(0), BOTTOM)}
        assert witness_text(report) == {"n": "-1", "x": "0 : _|_"}

    def test_no_witness_for_identity(self):
        report = check_hint(parse_hint("warn = x ==> x"))
        assert witness(report) is None
        assert witness_text(report) is None
