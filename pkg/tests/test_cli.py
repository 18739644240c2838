import json

import pytest

jsonschema = pytest.importorskip("jsonschema")

from hintcheck.cli import default_hints_path, main
from hintcheck.syntax import parse_hint_file

REVREV = "warn = reverse (reverse x) ==> x where note = IncreasesLaziness"
PAPER_HINTS = [
    REVREV,
    "warn = take (length x - 1) x ==> init x",
    "warn = head (drop n x) ==> x !! n",
    "warn = take i s == t ==> (i == length t) && (t `isPrefixOf` s)",
]

REPORT_SCHEMA = {
    "type": "object",
    "required": [
        "hint",
        "severity",
        "verdict",
        "witness",
        "tested",
        "indefinite",
        "consistency",
    ],
    "properties": {
        "hint": {"type": "string"},
        "severity": {"enum": ["warn", "error"]},
        "verdict": {
            "enum": [
                "Equivalent",
                "IncreasesLaziness",
                "LessDefined",
                "Incomparable",
                "Mixed",
                "Inconclusive",
                None,
            ]
        },
        "witness": {
            "type": ["object", "null"],
            "properties": {
                "env": {"type": "object"},
                "lhs": {"type": "string"},
                "rhs": {"type": "string"},
            },
        },
        "witness_other_direction": {"type": ["object", "null"]},
        "tested": {"type": "integer", "minimum": 0},
        "indefinite": {"type": "integer", "minimum": 0},
        "consistency": {
            "enum": ["consistent", "missing_note", "unnecessary_note", "invalid_hint"]
        },
        "reason": {"type": ["string", "null"]},
        "instance_checked": {"type": "boolean"},
        "assumes_symmetric_eq": {"type": "boolean"},
        "depth": {"type": "integer"},
        "fuel": {"type": "integer"},
        "obs_depth": {"type": "integer"},
        "duration_s": {"type": "number"},
    },
    "additionalProperties": False,
}


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCertifyCommand:
    def test_paper_database_one_consistent_three_invalid(self, tmp_path, capsys):
        db = tmp_path / "paper.hints"
        db.write_text("\n".join(PAPER_HINTS) + "\n")
        code, out, _ = run(["certify", "--hints", str(db)], capsys)
        assert code == 1
        assert out.count("annotations: consistent") == 1
        assert out.count("annotations: invalid_hint") == 3

    def test_empty_database_exits_zero(self, tmp_path, capsys):
        db = tmp_path / "empty.hints"
        db.write_text("-- nothing here\n")
        code, out, _ = run(["certify", "--hints", str(db)], capsys)
        assert code == 0
        assert out == ""

    def test_no_source_is_an_error(self, capsys):
        code, _, err = run(["certify"], capsys)
        assert code == 2
        assert "hint source" in err

    def test_identity_hint_exits_zero(self, capsys):
        code, out, _ = run(["certify", "--with", "warn = x ==> x"], capsys)
        assert code == 0
        assert "Equivalent" in out
        assert "bounded-exhaustive" in out

    def test_unparsable_hint_exits_two(self, capsys):
        code, _, err = run(["certify", "--with", "warn = x ==>"], capsys)
        assert code == 2

    def test_untypeable_hint_exits_two(self, capsys):
        code, out, _ = run(["certify", "--with", "warn = frobnicate x ==> x"], capsys)
        assert code == 2
        assert "invalid_hint" in out

    def test_inconclusive_exits_three(self, capsys):
        code, out, _ = run(
            ["certify", "--with", "warn = head [] ==> last (repeat 1)"], capsys
        )
        assert code == 3
        assert "Inconclusive" in out
        assert "divergence-as-bottom" in out

    def test_missing_note_exits_one(self, capsys):
        code, out, _ = run(["certify", "--with", "warn = reverse (reverse x) ==> x"], capsys)
        assert code == 1
        assert "missing_note" in out

    def test_with_and_file_agree(self, tmp_path, capsys):
        def strip_timing(text):
            import re

            return re.sub(r"\d+\.\d+s", "Xs", text)

        db = tmp_path / "one.hints"
        db.write_text(REVREV + "\n")
        _, from_file, _ = run(["certify", "--hints", str(db)], capsys)
        _, inline, _ = run(["certify", "--with", REVREV], capsys)
        assert strip_timing(from_file) == strip_timing(inline)

    def test_ints_flag_restricts_enumeration(self, capsys):
        code, out, _ = run(
            ["certify", "--with", "warn = head (drop n x) ==> x !! n", "--ints", "0..2"],
            capsys,
        )
        assert code == 0
        assert "Equivalent" in out

    def test_bad_ints_flag(self, capsys):
        code, _, err = run(["certify", "--with", "warn = x ==> x", "--ints", "donkey"], capsys)
        assert code == 2

    def test_json_reports_validate(self, tmp_path, capsys):
        db = tmp_path / "mix.hints"
        db.write_text(
            "\n".join(
                PAPER_HINTS
                + ["warn = id x ==> x", "warn = frobnicate x ==> x"]
            )
            + "\n"
        )
        code, out, _ = run(["certify", "--hints", str(db), "--format", "json"], capsys)
        assert code == 2
        lines = [line for line in out.splitlines() if line.strip()]
        assert len(lines) == 6
        for line in lines:
            jsonschema.validate(json.loads(line), REPORT_SCHEMA)


class TestLintCommand:
    PAPER_BLOCK = (
        "{name}:1:20: Warning: Use alternative\n"
        "Found:\n"
        "  reverse (reverse (sort xs))\n"
        "Why not:\n"
        "  sort xs\n"
        "Note: increases laziness\n"
    )

    def test_paper_example_byte_for_byte(self, tmp_path, capsys):
        src = tmp_path / "test.hs"
        src.write_text("output xs = print (reverse (reverse (sort xs)))\n")
        code, out, _ = run(["lint", "--with", REVREV, str(src)], capsys)
        assert code == 1
        assert out == self.PAPER_BLOCK.format(name=src)

    def test_clean_file_exits_zero(self, tmp_path, capsys):
        src = tmp_path / "clean.hs"
        src.write_text("f = sort xs\n")
        code, out, _ = run(["lint", "--with", REVREV, str(src)], capsys)
        assert code == 0
        assert out == ""

    def test_two_matches_sorted(self, tmp_path, capsys):
        src = tmp_path / "two.hs"
        src.write_text("a = reverse (reverse x)\nb = reverse (reverse y)\n")
        code, out, _ = run(["lint", "--with", REVREV, str(src)], capsys)
        assert code == 1
        blocks = out.split("\n\n")
        assert len(blocks) == 2
        assert ":1:5:" in blocks[0] and ":2:5:" in blocks[1]

    def test_parse_failure_exits_two(self, tmp_path, capsys):
        src = tmp_path / "bad.hs"
        src.write_text("broken = (\n")
        code, _, err = run(["lint", "--with", REVREV, str(src)], capsys)
        assert code == 2
        assert "bad.hs" in err


class TestEmitProofsCommand:
    def test_reverse_reverse_goal(self, tmp_path, capsys):
        out_path = tmp_path / "goals.txt"
        code, _, _ = run(
            ["emit-proofs", "--with", REVREV, "--proof", str(out_path)], capsys
        )
        assert code == 0
        data = out_path.read_bytes()
        assert data == b"reverse\\<cdot>(reverse\\<cdot>x) \\<sqsubseteq> x\n"

    def test_equality_for_noteless_hints(self, capsys):
        code, out, _ = run(["emit-proofs", "--with", "warn = x ==> x"], capsys)
        assert code == 0
        assert out == "x = x\n"

    def test_operator_name_mapping(self, capsys):
        code, out, _ = run(
            ["emit-proofs", "--with", "warn = head (drop n x) ==> x !! n"], capsys
        )
        assert code == 0
        assert out == "head\\<cdot>(drop\\<cdot>n\\<cdot>x) = nth\\<cdot>x\\<cdot>n\n"

    def test_untypeable_hint_rejected(self, capsys):
        code, _, err = run(["emit-proofs", "--with", "warn = not 1 ==> True"], capsys)
        assert code == 2


class TestDumpPrelude:
    def test_lists_equations_and_primitives(self, capsys):
        code, out, _ = run(["dump-prelude"], capsys)
        assert code == 0
        assert "reverse (x:xs) = reverse xs ++ [x]" in out
        assert "take n _ | n <= 0 = []" in out
        assert "xs !! n | n < 0 = error" in out
        assert "structural equality" in out  # primitive documentation
        assert "sort []" in out


class TestBundledDatabase:
    def test_ships_and_parses(self):
        path = default_hints_path()
        assert path.is_file()
        hints = parse_hint_file(path.read_text())
        assert len(hints) >= 24
        texts = [h.source_text for h in hints]
        assert REVREV in texts
