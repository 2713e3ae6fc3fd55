"""Corpus loading, replay verification, and the enlarged-canal system."""

from fractions import Fraction

import pytest

from sexakit.corpus import (
    Procedure,
    bundled_corpus_path,
    find_problem,
    load_corpus,
    replay,
    replay_smt24_p2,
)
from sexakit.errors import (
    BadLiteral,
    CorpusParseError,
    IrregularDivisor,
    NotAPerfectSquare,
    ProcedureError,
    UnknownProblem,
    UnknownProcedure,
)
from sexakit.sexa import Sexa, render
from sexakit.units import Dimension, Quantity


@pytest.fixture(scope="module")
def bundled():
    return load_corpus()


def write_corpus(tmp_path, text):
    path = tmp_path / "test.corpus"
    path.write_text(text)
    return path


class TestLoad:
    def test_bundled_problems(self, bundled):
        assert [p.id for p in bundled] == ["smt24.p1", "smt24.p2", "smt25.p1"]
        assert [p.procedure for p in bundled] == [
            Procedure.QUADRATIC, Procedure.RECT_CANAL_SYSTEM,
            Procedure.LABOR_DEPTH]

    def test_bundled_path_exists(self):
        assert bundled_corpus_path().is_file()

    def test_smt24_p1_fields(self, bundled):
        p = bundled[0]
        assert p.parameters["A"] == Sexa("14;3,45")
        assert p.parameters["B"] == Sexa("1,9;22,30")
        assert p.parameters["C"] == Sexa("4;41,15")
        assert p.givens["V"] == Quantity(1440, Dimension.VOLUME_SAR)
        first = p.expected_steps[0]
        assert (first.label, render(first.value), first.line) \
            == ("half_B", "34;41,15", "obv.26")
        assert p.expected_answers["x"] \
            == Quantity(45, Dimension.LENGTH_NINDAN)

    def test_uncertain_flags(self, bundled):
        p2 = bundled[1]
        flagged = {s.label for s in p2.expected_steps if s.uncertain}
        assert flagged == {"half_diff", "half_sum"}
        # the tag itself keeps no question mark
        assert all("?" not in s.line for s in p2.expected_steps)

    def test_empty_file(self, tmp_path):
        assert load_corpus(write_corpus(tmp_path, "")) == []
        assert load_corpus(write_corpus(tmp_path, "# only comments\n")) == []

    def test_env_var_override(self, tmp_path, monkeypatch):
        path = write_corpus(tmp_path, "")
        monkeypatch.setenv("SEXAKIT_CORPUS", str(path))
        assert load_corpus() == []

    def test_bad_literal_position(self, tmp_path):
        path = write_corpus(tmp_path, "\n".join([
            "[problem t.p1]",
            "procedure = quadratic",
            "param A = 61",
            "param B = 1",
            "param C = 1",
        ]))
        with pytest.raises(BadLiteral) as err:
            load_corpus(path)
        assert err.value.line == 3

    def test_unknown_procedure(self, tmp_path):
        path = write_corpus(tmp_path,
                            "[problem t.p1]\nprocedure = divination\n")
        with pytest.raises(UnknownProcedure):
            load_corpus(path)

    @pytest.mark.parametrize("text,fragment", [
        ("param A = 1\n", "outside"),
        ("[problem t.p1]\nprocedure = quadratic\nparam A = 1\nparam B = 1\n"
         "param C = 1\n[problem t.p1]\n", "duplicate"),
        ("[problem bad id]\n", "header"),
        ("[problem t.p1]\nwibble = 3\n", "unrecognized"),
        ("[problem t.p1]\nprocedure = quadratic\nparam A = 1\n", "missing"),
        ("[problem t.p1]\nparam A = 1\n", "procedure"),
        ("[problem t.p1]\nprocedure = quadratic\nparam A = 1\nparam B = 1\n"
         "param C = 1\nexpect step a = 1\n", "line-tag"),
        ("[problem t.p1]\nprocedure = quadratic\nparam A = 1\nparam B = 1\n"
         "param C = 1\nexpect step a = 1 @ x\nexpect step a = 2 @ y\n",
         "duplicate step"),
    ])
    def test_structural_errors(self, tmp_path, text, fragment):
        with pytest.raises(CorpusParseError) as err:
            load_corpus(write_corpus(tmp_path, text))
        assert fragment.split()[-1] in str(err.value)

    def test_seven_bit_only(self, tmp_path):
        path = write_corpus(tmp_path, "[problem t.p1]\n# kùš\n")
        with pytest.raises(CorpusParseError):
            load_corpus(path)

    def test_find_problem(self, bundled):
        assert find_problem(bundled, "smt25.p1").id == "smt25.p1"
        with pytest.raises(UnknownProblem):
            find_problem(bundled, "nosuch")


class TestReplay:
    def test_all_bundled_pass(self, bundled):
        for problem in bundled:
            report = replay(problem)
            assert report.passed, report.to_text()
            assert all(r.status == "MATCH" for r in report.rows)

    def test_deterministic(self, bundled):
        assert replay(bundled[1]) == replay(bundled[1])

    def test_report_text_format(self, bundled):
        lines = replay(bundled[2]).to_text().splitlines()
        assert lines[0] == "smt25.p1 recip_reach MATCH 0;12 0;12"
        assert "smt25.p1 answer:z MATCH 4;30 kus 4;30 kus" in lines
        assert lines[-1].startswith("smt25.p1 PASS")

    def test_report_dict_format(self, bundled):
        d = replay(bundled[0]).to_dict()
        assert d["problem"] == "smt24.p1" and d["pass"] is True
        by_label = {r["label"]: r for r in d["rows"]}
        assert by_label["root"]["expected"] == "35;37,30"
        assert by_label["root"]["line"] == "obv.29"

    def test_uncertain_carried_to_report(self, bundled):
        rows = replay(bundled[1]).rows
        assert {r.label for r in rows if r.uncertain} \
            == {"half_diff", "half_sum"}

    def test_mismatch_detected(self, tmp_path, bundled):
        path = write_corpus(tmp_path, "\n".join([
            "[problem t.p1]",
            "procedure = quadratic",
            "param A = 14;3,45",
            "param B = 1,9;22,30",
            "param C = 4;41,15",
            "expect step u = 6 @ obv.33",
            "expect answer u = 6 nindan",
        ]))
        report = replay(load_corpus(path)[0])
        assert not report.passed
        assert [r.status for r in report.rows] == ["MISMATCH", "MISMATCH"]
        row = report.rows[0]
        assert row.expected == "6" and row.got == "5"

    def test_missing_label_detected(self, tmp_path):
        path = write_corpus(tmp_path, "\n".join([
            "[problem t.p1]",
            "procedure = quadratic",
            "param A = 1",
            "param B = 0",
            "param C = 0",
            "expect step nonexistent = 1 @ x.1",
            "expect answer w = 1 nindan",
        ]))
        report = replay(load_corpus(path)[0])
        assert not report.passed
        assert {r.status for r in report.rows} == {"MISSING"}

    def test_wrong_answer_unit_is_mismatch(self, tmp_path):
        path = write_corpus(tmp_path, "\n".join([
            "[problem t.p1]",
            "procedure = quadratic",
            "param A = 1",
            "param B = 0",
            "param C = 0",
            "expect answer u = 0 kus",
        ]))
        report = replay(load_corpus(path)[0])
        assert [r.status for r in report.rows] == ["MISMATCH"]

    def test_procedure_error_carries_problem_id(self, tmp_path):
        # width 7 is irregular, so the depth division cannot be done
        path = write_corpus(tmp_path, "\n".join([
            "[problem t.bad]",
            "procedure = labor-depth",
            "given total_water = 1 volume-sar",
            "given workers = 1 workers",
            "given width = 7 nindan",
            "param reach_length = 1",
        ]))
        with pytest.raises(ProcedureError) as err:
            replay(load_corpus(path)[0])
        assert err.value.problem_id == "t.bad"
        assert isinstance(err.value.cause, IrregularDivisor)

    def test_quadratic_without_volume_skips_geometry(self, tmp_path):
        path = write_corpus(tmp_path, "\n".join([
            "[problem t.p1]",
            "procedure = quadratic",
            "param A = 1",
            "param B = 5",
            "param C = 6",
            "expect step u = 6 @ x.1",
            "expect answer u = 6 nindan",
        ]))
        report = replay(load_corpus(path)[0])
        assert report.passed


class TestEnlargedCanalSystem:
    def test_smt24_p2_values_in_tablet_order(self):
        x, y, trace = replay_smt24_p2(Sexa("0;10"), 12, 13, Sexa("1;15"))
        assert (x, y) == (Sexa("0;30"), Sexa("0;20"))
        assert [render(m) for m in trace.magnitudes()] == [
            "16;15",      # rev.7
            "0;1,40",     # rev.8
            "16;13,20",   # rev.9
            "6",          # rev.10
            "0;5",        # rev.10
            "0;30",       # rev.11
            "8;6,40",     # rev.12
            "0;1,40",     # rev.12
            "0;21,40",    # rev.13
            "7;45",       # rev.14
            "6;30",       # rev.15
            "1",          # rev.16
            "7;30",       # rev.17
            "39",         # rev.18
            "46;30",      # rev.18
            "0;10",       # rev.20
            "0;5",        # rev.21
            "0;0,25",     # rev.21
            "0;10,25",    # rev.22
            "0;25",       # rev.23
            "0;30",       # rev.23
            "0;20",       # rev.24
        ]

    def test_solution_satisfies_system(self):
        # independent of the solver: substitute into the three equations
        x, y, _ = replay_smt24_p2(Sexa("0;10"), 12, 13, Sexa("1;15"))
        xf, yf = Fraction(x), Fraction(y)
        diff = Fraction(1, 6)
        z = 12 * diff
        assert xf - yf == diff
        assert z == 2
        squares = xf**2 + yf**2
        assert z * squares + xf * yf * (z + 1) + squares / 13 \
            == Fraction(5, 4)

    def test_degenerate_equal_holes(self):
        # diff = 0: depth vanishes and xy comes straight from the total
        x, y, trace = replay_smt24_p2(0, 12, 13, Sexa(15, 52))
        assert x == y == Sexa("0;30")
        assert "recip_z" not in trace
        assert trace["xy"] == Fraction(1, 4)

    def test_irregular_difference_rejected(self):
        with pytest.raises(IrregularDivisor):
            replay_smt24_p2(Sexa(7), 12, 13, Sexa(10000))

    def test_non_square_radicand_rejected(self):
        # xy = 2 with diff = 0 makes the radicand 2
        with pytest.raises(NotAPerfectSquare):
            replay_smt24_p2(0, 12, 13, Sexa(30, 13))

    def test_smt24_p2_answers_are_bare_numbers(self, bundled):
        p2 = find_problem(bundled, "smt24.p2")
        one = Dimension.DIMENSIONLESS
        assert p2.expected_answers == {
            "x": Quantity(Sexa("0;30"), one),
            "y": Quantity(Sexa("0;20"), one),
            "z": Quantity(2, one),
        }
