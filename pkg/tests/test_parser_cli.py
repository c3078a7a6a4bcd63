from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings

from sosmultitype.algebra import GaussianRational
from sosmultitype.cli import main
from sosmultitype.corpus import CORPUS_SOURCES
from sosmultitype.errors import ParseError
from sosmultitype.parser import DomainSpec, format_spec, parse
from sosmultitype.weights import Weight

from support import generator_lists

DIAG = "n=3\ngenerators: z2^2, z3^3\n"


def test_parse_examples():
    spec = parse("n=3\ngenerators: z2^2, z2*z3")
    assert spec.n == 3 and len(spec.generators) == 2
    spec = parse("n=2\ngenerators: (1/2 + 1/3 i) z2^4")
    assert spec.generators[0].coeff((0, 4)) == GaussianRational(Fraction(1, 2), Fraction(1, 3))
    with pytest.raises(ParseError, match="n missing"):
        parse("generators: z2")


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse("n=2\ngenerators: z2 + z3")
    assert (exc.value.line, exc.value.col) == (2, 18)
    with pytest.raises(ParseError) as exc:
        parse("n=2\ngenerators: z2 $ 1")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse("n=3\ngenerators: z1 + z2")
    with pytest.raises(ParseError):
        parse("n=3\ngenerators: 1/0 z2")


def test_parse_options_and_comments():
    text = "# header\nn = 3   # dimension\ngenerators: z2^2,\n   z3^3\nweight: 1,4,6\nnormal: Re z1\n"
    spec = parse(text)
    assert spec.weight == Weight.parse("1,4,6") and spec.z1_factor == 1
    assert len(spec.generators) == 2
    assert parse(DIAG).z1_factor == 2


@pytest.mark.parametrize("name, src", CORPUS_SOURCES, ids=[c[0] for c in CORPUS_SOURCES])
def test_corpus_roundtrip(name, src):
    spec = parse(src)
    assert parse(format_spec(spec)) == spec


@settings(max_examples=80)
@given(generator_lists(max_exp=4))
def test_print_parse_roundtrip(gs):
    spec = DomainSpec(3, gs)
    assert parse(format_spec(spec)) == spec


def run_cli(args, stdin=None, capsys=None):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def diag_file(tmp_path):
    p = tmp_path / "diag.txt"
    p.write_text(DIAG)
    return str(p)


def test_cli_compute_json(diag_file, capsys):
    code, out, _ = run_cli(["compute", diag_file, "--json"], capsys=capsys)
    assert code == 0
    report = json.loads(out)
    assert report["commutator_multitype"] == ["1", "4", "6"]
    for key in ("levi_rank", "boundary_system", "boundary_system_ideal", "coordinate_changes",
                "verified_distinguished", "oracle"):
        assert key in report
    assert set(report["boundary_system"]) == {"c", "r_choice", "h", "field", "witness_list"}
    assert report["oracle"] == {"multitype": ["1", "4", "6"], "agrees": True}


def test_cli_no_oracle(diag_file, capsys):
    code, out, _ = run_cli(["compute", diag_file, "--json", "--no-oracle"], capsys=capsys)
    assert code == 0 and json.loads(out)["oracle"] is None


def test_cli_verify_weight(diag_file, capsys):
    code, out, _ = run_cli(["verify-weight", diag_file, "--weight", "1,4,6", "--json"], capsys=capsys)
    assert code == 0 and json.loads(out)["distinguished"] is True
    code, out, _ = run_cli(["verify-weight", diag_file, "--weight", "1,4,8", "--json"], capsys=capsys)
    report = json.loads(out)
    assert report["distinguished"] is False and report["offender"]


def test_cli_other_commands(diag_file, capsys):
    for cmd in ("oracle", "normalize", "torsion-check", "crossterm-check"):
        code, out, _ = run_cli([cmd, diag_file, "--json"], capsys=capsys)
        assert code == 0, cmd
        json.loads(out)
    code, out, _ = run_cli(["torsion-check", diag_file, "--json"], capsys=capsys)
    assert json.loads(out)["torsion"] == "none"


def test_cli_deterministic(diag_file, capsys):
    outs = {run_cli(["compute", diag_file, "--json"], capsys=capsys)[1] for _ in range(2)}
    assert len(outs) == 1


def test_cli_text_output(diag_file, capsys):
    code, out, _ = run_cli(["compute", diag_file], capsys=capsys)
    assert code == 0 and "commutator_multitype: 1, 4, 6" in out


def test_cli_exit_codes(tmp_path, diag_file, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("generators: z2\n")
    assert run_cli(["compute", str(bad)], capsys=capsys)[0] == 1
    assert run_cli(["compute", str(tmp_path / "missing.txt")], capsys=capsys)[0] == 1
    assert run_cli(["frobnicate", diag_file], capsys=capsys)[0] == 1
    assert run_cli(["verify-weight", diag_file], capsys=capsys)[0] == 1
    assert run_cli(["normalize", diag_file, "--weight", "1,2,4"], capsys=capsys)[0] == 2
    assert run_cli(["compute", diag_file, "--sabotage-skip", "1"], capsys=capsys)[0] == 3


def test_cli_stdin_and_module_entry():
    proc = subprocess.run([sys.executable, "-m", "sosmultitype", "compute", "-", "--json", "--no-oracle"],
                          input=DIAG, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["commutator_multitype"] == ["1", "4", "6"]


def test_sabotage_flag_hidden(capsys):
    with pytest.raises(SystemExit):
        from sosmultitype.cli import build_parser
        build_parser().parse_args(["--help"])
    assert "sabotage" not in capsys.readouterr().out
