"""Command-line interface: subcommands, expression grammar, exit codes."""

from __future__ import annotations

import pytest

from braidfrac.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err.strip()


def test_sign_single_crossing(capsys):
    code, out, _ = run(
        capsys,
        "sign",
        "--drs",
        "thompson:2",
        "--flavor",
        "braided",
        "frac T=[1] B=[1] S=[1]",
    )
    assert code == 0 and out == "positive"


def test_sign_pure_and_plain(capsys):
    code, out, _ = run(
        capsys,
        "sign",
        "--drs",
        "thompson:2",
        "--flavor",
        "pure",
        "frac T=[1] B=[1 1] S=[1]",
    )
    assert code == 0 and out == "positive"
    code, out, _ = run(
        capsys,
        "sign",
        "--drs",
        "thompson:2",
        "--flavor",
        "plain",
        "frac T=[1 1] B=[] S=[1 2]",
    )
    assert code == 0 and out == "negative"


def test_compare_plain_generator_with_identity(capsys):
    code, out, _ = run(
        capsys,
        "compare",
        "--drs",
        "thompson:2",
        "--flavor",
        "plain",
        "frac T=[1 1] B=[] S=[1 2]",
        "frac T=[] B=[] S=[]",
    )
    assert code == 0 and out == "less"


def test_mul_inv_normalize(capsys):
    g = "frac T=[1] B=[1] S=[1]"
    code, out, _ = run(capsys, "mul", "--drs", "thompson:2", g, g)
    assert code == 0 and out == "frac T=[1] B=[1 1] S=[1]"
    code, out, _ = run(capsys, "inv", "--drs", "thompson:2", g)
    assert code == 0 and out == "frac T=[1] B=[-1] S=[1]"
    code, out, _ = run(
        capsys,
        "normalize",
        "--drs",
        "thompson:2",
        f"{g} * inv({g})",
    )
    assert code == 0 and out == "frac T=[] B=[] S=[]"


def test_expression_grammar(capsys):
    g = "frac T=[1] B=[1] S=[1]"
    code, out, _ = run(
        capsys, "sign", "--drs", "thompson:2", f"inv({g} * {g}) * {g} * {g}"
    )
    assert code == 0 and out == "zero"
    code, _, err = run(capsys, "sign", "--drs", "thompson:2", "frac T=[1]")
    assert code == 2 and "column" in err
    code, _, err = run(capsys, "sign", "--drs", "thompson:2", f"{g} trailing")
    assert code == 2


def test_bh_generators(capsys):
    # expand ray 1, then pass its x over ray letter y2
    code, out, _ = run(
        capsys,
        "sign",
        "--drs",
        "houghton:3",
        "bh1(2; [1])",
    )
    assert code == 0 and out in ("positive", "negative")
    code, out, _ = run(
        capsys,
        "sign",
        "--drs",
        "houghton:3",
        "bh1(2; [1]) * inv(bh1(2; [1]))",
    )
    assert code == 0 and out == "zero"
    code, out, _ = run(
        capsys,
        "sign",
        "--drs",
        "houghton:3",
        "bh2(2; 1; [1 1])",
    )
    assert code == 0 and out == "positive"
    # over/under flip inverts the crossing, so the signs are opposite
    _, over, _ = run(capsys, "sign", "--drs", "houghton:3", "bh1(2; [1]; over)")
    _, under, _ = run(capsys, "sign", "--drs", "houghton:3", "bh1(2; [1]; under)")
    assert {over, under} == {"positive", "negative"}


def test_bh1_unreachable_target(capsys):
    # an x can never end up left of its own ray letter
    code, _, err = run(capsys, "sign", "--drs", "houghton:3", "bh1(1; [1])")
    assert code == 2 and "not an expansion" in err


def test_realize(capsys):
    code, out, _ = run(
        capsys,
        "realize",
        "--drs",
        "thompson:2",
        "--flavor",
        "plain",
        "frac T=[1 1] B=[] S=[1 2]",
    )
    assert code == 0 and out == "(0,0) (1/2,1/4) (3/4,1/2) (1,1)"
    code, _, err = run(
        capsys, "realize", "--drs", "thompson:2", "frac T=[] B=[] S=[]"
    )
    assert code == 2 and "plain" in err


def test_axioms(capsys):
    code, out, _ = run(
        capsys,
        "axioms",
        "--drs",
        "thompson:2",
        "--suite",
        "cone",
        "--trials",
        "4",
        "--seed",
        "5",
    )
    assert code == 0
    assert out.startswith("suite=cone trials=4 failures=0 seed=5 time_ms=")


def test_axioms_pure_suite(capsys):
    code, out, _ = run(
        capsys,
        "axioms",
        "--drs",
        "houghton:3",
        "--flavor",
        "pure",
        "--suite",
        "semidirect",
        "--trials",
        "3",
    )
    assert code == 0 and "failures=0" in out


def test_drs_file_and_base_flag(tmp_path, capsys):
    path = tmp_path / "rays.drs"
    path.write_text(
        "alphabet: x y1 y2\nrule: y1 -> y1 x\nrule: y2 -> y2 x\nbase: y1 y2\n"
    )
    code, out, _ = run(
        capsys, "sign", "--drs", str(path), "frac T=[1] B=[1 -1] S=[1]"
    )
    assert code == 0 and out == "zero"
    code, out, _ = run(
        capsys,
        "sign",
        "--drs",
        str(path),
        "--base",
        "y2",
        "frac T=[1] B=[] S=[1]",
    )
    assert code == 0 and out == "zero"


def test_edge_shift_file(tmp_path, capsys):
    path = tmp_path / "graph.es"
    path.write_text("a: a b\nb: b a\nbase: a\n")
    code, out, _ = run(
        capsys, "sign", "--drs", f"edgeshift:{path}", "frac T=[1 1] B=[2] S=[1 1]"
    )
    assert code == 0 and out == "positive"


def test_missing_base_errors(tmp_path, capsys):
    path = tmp_path / "nobase.drs"
    path.write_text("alphabet: x\nrule: x -> x x\n")
    code, _, err = run(capsys, "sign", "--drs", str(path), "frac T=[] B=[] S=[]")
    assert code == 2 and "base" in err


def test_missing_file_errors(capsys):
    code, _, err = run(capsys, "sign", "--drs", "/nonexistent.drs", "frac T=[] B=[] S=[]")
    assert code == 2
