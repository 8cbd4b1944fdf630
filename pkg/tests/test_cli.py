import io
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antialg.cli import ParseError, emit_algebra_file, emit_rep_file, main, parse_algebra_file, parse_rep_file
from antialg.superalg import OUT_OF_WINDOW, BUILTINS, builtin, k3

FIX = Path(__file__).parent / "fixtures"
K3_TEXT = (FIX / "k3.alg").read_text()


def run(*argv):
    buf = io.StringIO()
    code = main([str(a) for a in argv], stream=buf)
    return code, buf.getvalue()


def report_block(text):
    body = text.split("--- begin report ---\n", 1)[1].split("--- end report ---", 1)[0]
    return dict(line.split("=", 1) for line in body.splitlines())


def test_k3_file_is_builtin():
    assert parse_algebra_file(K3_TEXT) == k3()


def test_emit_k3_canonical():
    text = emit_algebra_file(k3())
    assert parse_algebra_file(text) == k3()
    assert "eps * a = 1/2 a" in text


@pytest.mark.parametrize("name,window", [("k3", None), ("osp12", None), ("ak1", 2), ("ak1", 3),
                                         ("k1", 2), ("witt", 3)])
def test_round_trip_builtins(name, window):
    alg = builtin(name, window)
    text = emit_algebra_file(alg)
    again = parse_algebra_file(text)
    assert again.table == alg.table
    assert emit_algebra_file(again) == text


def test_out_of_window_marker():
    alg = builtin("ak1", 1)
    text = emit_algebra_file(alg)
    assert "= ?" in text
    assert any(v is OUT_OF_WINDOW for v in parse_algebra_file(text).table.values())


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 4)), min_size=4, max_size=4))
def test_round_trip_random_coefficients(coeffs):
    (a, b), (c, d), (e, f), (g, h) = coeffs
    text = (f"profile antialgebra\neven eps\nodd a b\neps * eps = {a}/{b} eps\n"
            f"eps * a = {c}/{d} a + {e}/{f} b\na * b = {g}/{h} eps\n")
    alg = parse_algebra_file(text)
    assert parse_algebra_file(emit_algebra_file(alg)) == alg


@pytest.mark.parametrize("body,line", [
    ("even eps\nodd a\na * c = eps\n", 3),
    ("even eps\neps * eps = 1/0 eps\n", 2),
    ("even eps\neps * eps = eps\neps * eps = eps\n", 3),
    ("even eps\nodd a\neps * a = eps\n", 3),
    ("even eps\neps * eps = 0.5 eps\n", 2),
])
def test_parse_errors_carry_line(body, line):
    with pytest.raises(ParseError) as info:
        parse_algebra_file(body, source="t.alg")
    assert info.value.line == line
    assert f"t.alg:{line}:" in str(info.value)


def test_mirror_conflict_is_error():
    with pytest.raises(ParseError):
        parse_algebra_file("profile antialgebra\neven eps\nodd a\neps * a = 1/2 a\na * eps = a\n")


def test_lie_super_mirror_is_skew():
    alg = parse_algebra_file("profile lie-super\neven h\nodd x\nh * x = x\n")
    h, x = alg.basis
    assert alg.table[(x, h)] == -alg.table[(h, x)]


def test_rep_file_round_trip():
    alg = parse_algebra_file((FIX / "eps_a.alg").read_text())
    rep = parse_rep_file((FIX / "eps_a.rep").read_text(), alg)
    assert parse_rep_file(emit_rep_file(rep), alg).assignment == rep.assignment
    with pytest.raises(ParseError):
        parse_rep_file("dims 1 1\nmatrix eps\n0 1\n0 0\n", alg)  # odd block under an even symbol
    with pytest.raises(ParseError):
        parse_rep_file("matrix eps\n1\n", alg)


# -- exit-code contract ------------------------------------------------------------

def test_check_k3_passes():
    code, text = run("check", FIX / "k3.alg", "--profile", "antialgebra")
    assert code == 0
    assert "FAIL" not in text and "SKIP" not in text
    kv = report_block(text)
    assert kv["status"] == "ok" and kv["skipped"] == "0"


def test_check_corrupted_fails_with_witness():
    code, text = run("check", FIX / "corrupted.alg", "--profile", "antialgebra")
    assert code == 1
    fails = [line for line in text.splitlines() if line.startswith("FAIL")]
    assert fails and all(len(line.split()) > 2 for line in fails)


@pytest.mark.parametrize("argv", [("check", "missing.alg"), ("frobnicate",), ("check",),
                                  ("builtin", "ak1"), ("realize", "--space", "cubic")])
def test_input_errors_exit_2(argv, capsys):
    code, text = run(*argv)
    assert code == 2
    assert "PASS" not in text


def test_bad_file_exit_2(tmp_path):
    p = tmp_path / "bad.alg"
    p.write_text("even eps\neps * eps = 1/0 eps\n")
    assert run("check", p)[0] == 2


def test_adjoint_and_derivations(tmp_path):
    out = tmp_path / "osp.alg"
    code, text = run("adjoint", FIX / "k3.alg", "-o", out)
    assert code == 0
    assert parse_algebra_file(out.read_text()).dims == (3, 2)
    code, text = run("derivations", FIX / "k3.alg")
    assert code == 0 and report_block(text)["derivation_dims"] == "3|2"
    code, text = run("embed-check", FIX / "k3.alg")
    assert code == 0 and "PASS iota-bijective" in text


def test_rep_check_and_induce(tmp_path):
    code, text = run("rep-check", FIX / "eps_a.alg", FIX / "eps_a.rep")
    assert code == 0
    out = tmp_path / "ind.rep"
    code, text = run("induce", FIX / "eps_a.alg", FIX / "eps_a.rep", "-o", out)
    assert code == 0 and out.read_text().startswith("dims 1 2")
    code, text = run("rep-check", FIX / "k3.alg", FIX / "k3_zero.rep")
    kv = report_block(text)
    assert code == 0 and kv["phase1"] == "pass" and kv["phase2"] == "pass"


def test_bivectors_command():
    code, text = run("bivectors", "--max-deg", "1")
    kv = report_block(text)
    assert code == 0 and kv["dimension"] == "2"
    assert kv["contains_P"] == "True" and kv["contains_Lambda"] == "True"


def test_extract_and_densities():
    code, text = run("extract", "--space", "linear")
    assert code == 0 and parse_algebra_file(text.split("summary:")[0]) == k3()
    code, text = run("densities", "--samples", "50")
    assert code == 0 and report_block(text)["failures"] == "0"


@pytest.mark.parametrize("bound", range(0, 11))
def test_realize_diff_empty(bound):
    code, text = run("realize", "--space", "antialgebra", "--window", bound)
    assert code == 0
    assert "DIFF" not in text and report_block(text)["diff_entries"] == "0"


def test_figures_written(tmp_path):
    code, text = run("builtin", "ak1", "--window", "2", "--figures", tmp_path)
    assert code == 0 and (tmp_path / "builtin-ak1.png").stat().st_size > 0
    code, text = run("check", FIX / "k3.alg", "--figures", tmp_path)
    assert code == 0 and (tmp_path / "check-k3.png").exists()
    assert report_block(text)["figure"].endswith("check-k3.png")


def test_all_builtins_listed():
    assert set(BUILTINS) == {"k3", "ak1", "osp12", "k1", "witt"}
