import json

import pytest

from cli import build_parser, command_name, main, options_from
from utils.fixtures import fixture
from utils.formats import dump_trigraph


@pytest.fixture
def c6_file(tmp_trigraph_file):
    return str(tmp_trigraph_file(dump_trigraph(fixture("C6"))))


@pytest.fixture
def p4_file(tmp_trigraph_file):
    return str(tmp_trigraph_file(dump_trigraph(fixture("P4")), "p4.tri"))


def last_error(err: str) -> dict:
    return json.loads(err.strip().splitlines()[-1])


def test_subcommand_names():
    parser = build_parser()
    assert command_name(parser.parse_args(["cssep", "verify", "a.tri", "a.sep"])) == "cssep-verify"
    assert command_name(parser.parse_args(["kjoin", "compose", "kjoin(p1, leaf(C4), leaf(P3))"])) == "kjoin-compose"
    assert command_name(parser.parse_args(["gen", "leaf(C6)"])) == "gen"


def test_options_skip_unset_flags():
    args = build_parser().parse_args(["kjoin", "biclique", "r", "--c", "1/10"])
    assert options_from(args) == {"c": "1/10", "k": 2, "verify_steps": True}


def test_decomposition_flags():
    args = build_parser().parse_args(["decompose", "a.tri", "--mode", "single", "--no-precheck", "--no-hints"])
    options = options_from(args)
    assert (options["mode"], options["precheck"], options["hinted"]) == ("single", False, False)
    assert "base_threshold" not in options


def test_bad_arguments_exit_through_argparse():
    with pytest.raises(SystemExit) as info:
        main(["decompose", "a.tri", "--mode", "sideways"])
    assert info.value.code == 2


def test_check(c6_file, capsys):
    assert main(["check", c6_file]) == 0
    out = capsys.readouterr().out
    assert "CLASS CHECK" in out
    assert "Exit code: 0" in out


def test_check_as_json(c6_file, capsys):
    assert main(["check", c6_file, "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["command"] == "check"
    assert report["check"]["basic"] == "bipartite"


def test_failure_prints_an_error_line(p4_file, tmp_path, capsys):
    output = tmp_path / "p4.dec"
    assert main(["decompose", p4_file, "-o", str(output)]) == 2
    error = last_error(capsys.readouterr().err)
    assert (error["error"], error["exit_code"]) == ("class_violation", 2)
    assert not output.exists()


def test_output_file(c6_file, tmp_path, capsys):
    output = tmp_path / "c6.sep"
    assert main(["cssep", "build", c6_file, "-o", str(output)]) == 0
    assert output.read_text(encoding="utf-8").startswith("separator v1\nn 6\n")
    assert "CS-SEPARATOR" in capsys.readouterr().out


def test_output_goes_to_stdout_and_report_to_stderr(c6_file, capsys):
    assert main(["decompose", c6_file]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("leaf n=6")
    assert "DECOMPOSITION" in captured.err


def test_verify_a_built_separator(c6_file, tmp_path, capsys):
    separator = tmp_path / "c6.sep"
    assert main(["cssep", "build", c6_file, "-o", str(separator)]) == 0
    assert main(["cssep", "verify", c6_file, str(separator)]) == 0
    assert "verified: true" in capsys.readouterr().out


def test_verify_a_separator_for_another_trigraph(c6_file, tmp_path, capsys):
    separator = tmp_path / "small.sep"
    separator.write_text("separator v1\nn 2\ncut 0 | 1\n", encoding="utf-8")
    assert main(["cssep", "verify", c6_file, str(separator)]) == 2
    assert last_error(capsys.readouterr().err)["exit_code"] == 2


def test_gen_then_check(tmp_path, capsys):
    instance = tmp_path / "gen.tri"
    assert main(["gen", "join2(even, leaf(C8), leaf(C8))", "--seed", "3", "-o", str(instance)]) == 0
    assert "# truth {" in instance.read_text(encoding="utf-8")
    assert "GENERATED INSTANCE" in capsys.readouterr().out
    assert main(["check", str(instance), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["check"]["n"] == 10


def test_kjoin_biclique(capsys):
    assert main(["kjoin", "biclique", "kjoin(p10_01, leaf(C4), leaf(P3))", "--seed", "5", "--c", "1/20"]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("biclique ")
    assert "BICLIQUE" in captured.err


@pytest.mark.parametrize("c", ["1/4", "1/3"])
def test_kjoin_ratio_is_checked(capsys, c):
    assert main(["kjoin", "biclique", "kjoin(p10_01, leaf(C4), leaf(P3))", "--c", c, "--k", "2"]) == 2
    assert last_error(capsys.readouterr().err)["error"] == "precondition"
