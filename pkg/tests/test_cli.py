"""Front-end behavior: serialization, snapshots, exit codes."""

import json
from fractions import Fraction

import pytest

from conetorsion.cli import (
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERDICT,
    RunConfig,
    main,
    render_report,
    run,
)
from conetorsion.enclosure import DomainError

FAST = RunConfig(digits=20)


def walk_numeric_leaves(node, found):
    if isinstance(node, dict):
        if "center" in node:
            assert {"center", "radius", "digits"} <= set(node)
            float(node["center"])
            float(node["radius"])
            assert isinstance(node["digits"], int)
            found.append(node)
        for v in node.values():
            walk_numeric_leaves(v, found)
    elif isinstance(node, list):
        for v in node:
            walk_numeric_leaves(v, found)


def test_config_validation():
    with pytest.raises(DomainError):
        RunConfig(digits=19)
    with pytest.raises(DomainError):
        RunConfig(digits=501)
    with pytest.raises(DomainError):
        RunConfig(format="yaml")
    with pytest.raises(DomainError):
        RunConfig(j_cutoff=0)


def test_unknown_command_rejected():
    with pytest.raises(DomainError):
        run("klein-bottle", FAST)


def test_json_is_deterministic():
    a, code_a = run("constants", FAST)
    b, code_b = run("constants", FAST)
    assert (a, code_a) == (b, code_b)
    assert code_a == EXIT_OK
    assert a.endswith("\n")


def test_every_numeric_leaf_is_an_audit_object():
    text, code = run("sphere", FAST, p=2)
    assert code == EXIT_OK
    tree = json.loads(text)
    found = []
    walk_numeric_leaves(tree, found)
    assert len(found) >= 4
    assert tree["verdicts"]["cancellation"] is True
    assert tree["digits"] == 20


def test_constants_carry_paper_refs():
    tree = json.loads(run("constants", FAST)[0])
    consts = tree["constants"]
    assert set(consts) == {"c1", "c2", "c3", "c4", "c5", "gamma"}
    for entry in consts.values():
        assert entry["paper_ref"]
        assert float(entry["center"]) != 0.0


def test_zeta_families_and_method_recording():
    # at 20 digits the direct route reaches the target by s = 3, while
    # s = 3/4 sits left of the abscissa and must go through continuation
    nh = json.loads(run("zeta", FAST, family="nh", s=Fraction(3))[0])
    assert nh["method"] == "direct"
    assert nh["terms"] >= 1
    cont = json.loads(run("zeta", FAST, family="nh", s=Fraction(3, 4))[0])
    assert cont["method"] == "binomial_in_zetaR"
    double = json.loads(run("zeta", FAST, family="double",
                            s=Fraction(3, 4))[0])
    assert double["method"] == "zeta_beta"
    assert double["s"] == "3/4"


def test_zeta_derivative_consistency():
    tree = json.loads(run("zeta", FAST, family="nh", s=Fraction(0),
                          deriv=True)[0])
    assert tree["consistent"] is True
    assert tree["closed_form"]["paper_ref"].startswith("-2 log 2")
    with pytest.raises(DomainError):
        run("zeta", FAST, family="double", s=Fraction(0), deriv=True)


def test_zeta_requires_point():
    with pytest.raises(DomainError):
        run("zeta", FAST)


def test_text_format_renders_twelve_digit_lines():
    text, code = run("constants", RunConfig(digits=20, format="text"))
    assert code == EXIT_OK
    lines = text.splitlines()
    assert any(line.startswith("constants.c5 = ") and "±" in line
               for line in lines)


def test_oracle_flags_reach_the_report():
    cfg = RunConfig(digits=20, n_cutoff=400)
    tree = json.loads(run("sphere", cfg, p=1, oracle_s=Fraction(4))[0])
    diag = tree["diagnostics"]
    assert diag["oracle_matches_corrected"] is True
    assert diag["oracle_matches_stated"] is False


def test_snapshot_write_match_mismatch(tmp_path, capsys):
    path = tmp_path / "constants.json"
    cfg = RunConfig(digits=20, snapshot=str(path))
    text, code = run("constants", cfg)
    assert code == EXIT_OK
    assert path.read_bytes() == text.encode()
    assert "snapshot written" in capsys.readouterr().err
    _, again = run("constants", cfg)
    assert again == EXIT_OK
    assert "snapshot match" in capsys.readouterr().err
    path.write_bytes(b"tampered\n")
    _, broken = run("constants", cfg)
    assert broken == EXIT_VERDICT
    assert "snapshot mismatch" in capsys.readouterr().err


def test_main_happy_path(capsys):
    rc = main(["--digits", "20", "constants"])
    assert rc == EXIT_OK
    tree = json.loads(capsys.readouterr().out)
    assert tree["command"] == "constants"


def test_main_flags_after_command(capsys):
    rc = main(["constants", "--digits", "20", "--format", "text"])
    assert rc == EXIT_OK
    assert "constants.gamma" in capsys.readouterr().out


def test_main_env_digits(monkeypatch, capsys):
    monkeypatch.setenv("CONETORSION_DIGITS", "22")
    rc = main(["constants"])
    assert rc == EXIT_OK
    assert json.loads(capsys.readouterr().out)["digits"] == 22
    monkeypatch.setenv("CONETORSION_DIGITS", "many")
    with pytest.raises(SystemExit) as err:
        main(["constants"])
    assert err.value.code == EXIT_USAGE


def test_main_usage_errors(capsys):
    cases = [
        ["--digits", "4", "constants"],
        ["zeta", "nh"],
        ["zeta", "nh", "--s", "1/2"],
        ["zeta", "nh", "--s", "x/y"],
        ["zeta", "nh", "--s", "1", "--deriv"],
        ["wedge-product"],
    ]
    for argv in cases:
        with pytest.raises(SystemExit) as err:
            main(argv)
        assert err.value.code == EXIT_USAGE, argv
        capsys.readouterr()


def test_render_report_rejects_foreign_objects():
    with pytest.raises(TypeError):
        render_report({"x": object()})
