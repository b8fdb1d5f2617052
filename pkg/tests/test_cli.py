import sys

import orjson
import pytest

import operadic_cli
from operadic.cli import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_VIOLATED,
    QuickSessionConfig,
    SCHEMA_VERSION,
    SessionConfig,
    parse_input,
    parse_window,
    run,
)
from operadic.exactalg import Rationals
from operadic.exceptions import InputError


@pytest.mark.parametrize(
    "name", ["sl2", "sl2_standard", "swapped", "abelian1", "abelian2", "nonabelian2", "gl2", "dual_numbers", "broken_jacobi"]
)
def test_samples_parse(samples, name):
    bundle = parse_input(samples / f"{name}.toml", Rationals)
    assert bundle.algebra.dim >= 1


def test_sample_contents(samples):
    bundle = parse_input(samples / "sl2_standard.toml", Rationals)
    assert bundle.module.dim == 2
    assert bundle.module.violations() == []
    assert bundle.morphism.source.names == ["f", "h"]
    swapped = parse_input(samples / "swapped.toml", Rationals)
    assert swapped.structure.subalgebra.names == ["e"]


def test_unknown_basis_vector_is_located(tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text('[operad]\ntag = "lie"\n\n[algebra]\nbasis = ["x", "y"]\n\n[algebra.brackets]\n"x,z" = { y = 1 }\n')
    with pytest.raises(InputError) as error:
        parse_input(path, Rationals)
    assert (error.value.line, error.value.column) == (8, 2)
    assert "line 8" in str(error.value)


def test_syntax_error_is_located(tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text('[operad]\ntag = \n')
    with pytest.raises(InputError) as error:
        parse_input(path, Rationals)
    assert error.value.line == 2


def test_unknown_operad_tag(tmp_path):
    path = tmp_path / "tag.toml"
    path.write_text('[operad]\ntag = "pre-lie"\n')
    with pytest.raises(InputError):
        parse_input(path, Rationals)


def test_parse_window():
    assert parse_window("-2:2") == (-2, 2)
    with pytest.raises(InputError):
        parse_window("2")


def test_config_validation():
    assert SessionConfig().validate().max_arity == 4
    with pytest.raises(InputError):
        SessionConfig(window=(1, -1)).validate()
    with pytest.raises(InputError):
        SessionConfig(max_level=0).validate()


def test_operad_dims():
    report = run("operad-dims", SessionConfig(), "lie")
    assert report.exit_code == EXIT_OK
    assert report.results["dims"] == {"1": 1, "2": 1, "3": 2, "4": 6}


def test_koszul_check():
    report = run("koszul-check", SessionConfig(), "com")
    assert report.exit_code == EXIT_OK
    assert report.results["verdict"] == "acyclic up to arity 4"
    assert report.results["convolution"]["antisymmetric"]


def test_check_algebra(samples):
    assert run("check-algebra", SessionConfig(), str(samples / "sl2.toml")).exit_code == EXIT_OK
    report = run("check-algebra", SessionConfig(), str(samples / "broken_jacobi.toml"))
    assert report.exit_code == EXIT_VIOLATED
    assert not report.results["valid"]


def test_input_errors_exit_with_two(samples, tmp_path):
    assert run("check-algebra", SessionConfig(), str(tmp_path / "missing.toml")).exit_code == EXIT_INPUT
    assert run("homology", SessionConfig(), "lie").exit_code == EXIT_INPUT
    assert run("no-such-command", SessionConfig(), "lie").exit_code == EXIT_INPUT
    report = run("operad-dims", SessionConfig(field="F3"), "lie")
    assert report.exit_code == EXIT_INPUT
    assert "error" in report.results


def test_homology_with_cross_check(samples):
    report = run("homology", SessionConfig(max_level=3), str(samples / "sl2.toml"))
    assert report.exit_code == EXIT_OK
    assert report.results["homology"]["2"] == 1
    assert report.results["unverified"] == [3]
    assert report.results["classical"]["agrees"]


def test_relative_and_koszul_comparison(samples):
    config = SessionConfig(max_level=3, max_weight=3)
    relative = run("relative-homology", config, str(samples / "abelian1.toml"))
    assert relative.exit_code == EXIT_OK
    assert relative.results["relative"]["truncation"] == "weight"
    comparison = run("compare-koszul", config, str(samples / "abelian1.toml"))
    assert comparison.exit_code == EXIT_OK
    assert comparison.results["comparison"]["agrees"]


def test_seminf_check(samples):
    config = SessionConfig(max_weight=3)
    report = run("seminf-check", config, str(samples / "abelian2.toml"))
    assert report.exit_code == EXIT_OK
    assert report.results["certificate"]["passed"]
    assert report.results["resolution"]["passed"]
    assert run("seminf-check", config, str(samples / "swapped.toml")).exit_code == EXIT_VIOLATED


def test_violations_exit_with_one(samples):
    report = run("homology", SessionConfig(), str(samples / "broken_jacobi.toml"))
    assert report.exit_code == EXIT_VIOLATED
    assert report.results["violation"] == "AlgebraError"
    report = run("seminf-homology", SessionConfig(max_weight=3), str(samples / "swapped.toml"))
    assert report.exit_code == EXIT_VIOLATED
    assert report.results["violation"] == "SemiInfiniteError"
    report = run("relative-homology", SessionConfig(), str(samples / "swapped.toml"))
    assert report.exit_code == EXIT_INPUT
    assert "violation" not in report.results


def test_json_and_text_rendering():
    report = run("operad-dims", QuickSessionConfig, "asc")
    payload = orjson.loads(report.render("json"))
    assert payload["schema"] == SCHEMA_VERSION
    assert payload["results"]["dims"]["3"] == 6
    assert payload["config"]["field"] == "Q"
    text = report.render("text").decode("utf-8")
    assert text.startswith("operad-dims asc")
    assert "dimensions by arity" in text


def test_main(monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["operadic_cli.py", "operad-dims", "com", "--format", "json", "--no-progress"])
    assert operadic_cli.main() == EXIT_OK
    payload = orjson.loads(capsys.readouterr().out)
    assert payload["results"]["dims"]["4"] == 1
