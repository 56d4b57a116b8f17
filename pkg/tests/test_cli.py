import re
import shutil

import pytest

from abslog.cli import main

ERROR_LINE = re.compile(r"^ERROR [a-z-]+ \S+:\d+:\d+ .+$")


@pytest.fixture()
def data(data_dir, tmp_path):
    d = tmp_path / "data"
    d.mkdir()
    for name in (
        "le.th",
        "peano.th",
        "bool2.model",
        "le_degenerate.model",
        "peano_degenerate.model",
        "derived_e.proof",
        "imp_refl.proof",
    ):
        shutil.copy(data_dir / name, d / name)
    return d


class TestCheck:
    def test_accepts_shipped_script(self, data, capsys):
        assert main(["check", str(data / "le.th"), str(data / "imp_refl.proof")]) == 0
        out = capsys.readouterr().out
        assert "checked imp_refl: |- A => A" in out
        assert out.strip().endswith("proofs checked")

    def test_derived_suite(self, data, capsys):
        assert main(["check", str(data / "le.th"), str(data / "derived_e.proof")]) == 0
        out = capsys.readouterr().out
        assert "checked congruence2:" in out

    def test_failure_exit_and_error_line(self, data, tmp_path, capsys):
        bad = tmp_path / "bad.proof"
        bad.write_text("thm a := rule NoSuchRule\n")
        assert main(["check", str(data / "le.th"), str(bad)]) == 1
        err = capsys.readouterr().err.strip()
        assert ERROR_LINE.match(err), err
        assert "unknown-rule" in err

    def test_expect_mismatch_reported(self, data, tmp_path, capsys):
        bad = tmp_path / "bad.proof"
        bad.write_text("thm a := rule Truth1\nexpect: |- T == T\n")
        assert main(["check", str(data / "le.th"), str(bad)]) == 1
        err = capsys.readouterr().err.strip()
        assert "target-mismatch" in err
        assert "|- T == T" in err and "|- T" in err

    def test_missing_file(self, data, capsys):
        assert main(["check", str(data / "le.th"), str(data / "nope.proof")]) == 1
        err = capsys.readouterr().err.strip()
        assert ERROR_LINE.match(err), err
        assert err.startswith("ERROR io ")


class TestModelCheck:
    def test_bool2(self, data, capsys):
        assert main(["model-check", str(data / "le.th"), str(data / "bool2.model")]) == 0
        out = capsys.readouterr().out
        assert "10/10 rules valid" in out
        assert out.count("valid ") == 10

    def test_degenerate_models(self, data, capsys):
        assert (
            main(["model-check", str(data / "le.th"), str(data / "le_degenerate.model")])
            == 0
        )
        assert (
            main(
                [
                    "model-check",
                    str(data / "peano.th"),
                    str(data / "peano_degenerate.model"),
                ]
            )
            == 0
        )
        out = capsys.readouterr().out
        assert "21/21 rules valid" in out

    def test_invalid_model_reported_with_counterexample(self, data, tmp_path, capsys):
        broken = tmp_path / "broken.model"
        broken.write_text(
            "carrier T F\n"
            "truth T\n"
            "op T shape [] builtin const T\n"
            "op imp shape [{}, {}] table: T T -> F ; T F -> F ; F T -> F ; F F -> F\n"
            "op eq shape [{}, {}] table: T T -> T ; T F -> F ; F T -> F ; F F -> T\n"
            "op forall shape [{1}] builtin forall-like\n"
        )
        code = main(
            ["model-check", str(data / "le.th"), str(broken), "--verbose"]
        )
        assert code == 1
        out = capsys.readouterr().out
        assert "INVALID" in out
        assert re.search(r"\d+/10 rules valid", out)
        assert "=" in out  # counterexample table lines

    def test_cap_flag(self, data, capsys):
        code = main(
            ["model-check", str(data / "le.th"), str(data / "bool2.model"), "--cap", "2"]
        )
        assert code == 1
        err = capsys.readouterr().err
        assert "enumeration-too-large" in err


class TestEval:
    def test_forall_identity(self, data, capsys):
        assert main(["eval", str(data / "bool2.model"), "(forall x. x)"]) == 0
        assert capsys.readouterr().out.strip() == "F"

    def test_with_settings(self, data, capsys):
        assert (
            main(
                [
                    "eval",
                    str(data / "bool2.model"),
                    "A => B => A",
                    "--set",
                    "A=F",
                    "--set",
                    "B=T",
                ]
            )
            == 0
        )
        assert capsys.readouterr().out.strip() == "T"

    def test_truth_implication(self, data, capsys):
        assert main(["eval", str(data / "bool2.model"), "T => (forall x. x)"]) == 0
        assert capsys.readouterr().out.strip() == "F"

    def test_bad_set_flag(self, data, capsys):
        assert main(["eval", str(data / "bool2.model"), "x", "--set", "x"]) == 1
        assert ERROR_LINE.match(capsys.readouterr().err.strip())

    def test_unknown_element_in_set(self, data, capsys):
        assert main(["eval", str(data / "bool2.model"), "x", "--set", "x=G"]) == 1
        err = capsys.readouterr().err.strip()
        assert ERROR_LINE.match(err)


class TestAlpha:
    def test_equivalent(self, data, capsys):
        assert (
            main(
                [
                    "alpha",
                    "(forall x. x)",
                    "(forall y. y)",
                    "--theory",
                    str(data / "le.th"),
                ]
            )
            == 0
        )
        assert capsys.readouterr().out.strip() == "alpha-equivalent"

    def test_not_equivalent_default_theory(self, capsys):
        assert main(["alpha", "(forall x. x)", "(forall x. y)"]) == 1
        assert capsys.readouterr().out.strip() == "not alpha-equivalent"


class TestOracle:
    def test_counterexamples_reported(self, data, tmp_path, capsys):
        # a structure that is NOT a model of the logic: implication constantly F
        # makes even |- A => A fail, so the oracle must flag it and exit 1
        broken = tmp_path / "models"
        broken.mkdir()
        (broken / "broken.model").write_text(
            "carrier T F\n"
            "truth T\n"
            "op T shape [] builtin const T\n"
            "op imp shape [{}, {}] table: T T -> F ; T F -> F ; F T -> F ; F F -> F\n"
            "op eq shape [{}, {}] table: T T -> T ; T F -> F ; F T -> F ; F F -> T\n"
            "op forall shape [{1}] builtin forall-like\n"
        )
        code = main(
            [
                "oracle",
                str(data / "le.th"),
                str(data / "imp_refl.proof"),
                "--models",
                str(broken),
                "--verbose",
            ]
        )
        assert code == 1
        out = capsys.readouterr().out
        assert "COUNTEREXAMPLE imp_refl @ broken.model" in out
        assert "=" in out  # verbose counterexample table

    def test_empty_model_directory(self, data, tmp_path, capsys):
        empty = tmp_path / "models"
        empty.mkdir()
        code = main(
            [
                "oracle",
                str(data / "le.th"),
                str(data / "imp_refl.proof"),
                "--models",
                str(empty),
            ]
        )
        assert code == 1
        assert ERROR_LINE.match(capsys.readouterr().err.strip())

    def test_all_models(self, data, tmp_path, capsys):
        models = tmp_path / "models"
        models.mkdir()
        shutil.copy(data / "bool2.model", models / "bool2.model")
        shutil.copy(data / "le_degenerate.model", models / "le_degenerate.model")
        code = main(
            [
                "oracle",
                str(data / "le.th"),
                str(data / "derived_e.proof"),
                "--models",
                str(models),
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "all " in out and "checks passed" in out
        assert "COUNTEREXAMPLE" not in out
