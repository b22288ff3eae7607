import io
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings

from arcdom.cli import run
from arcdom.errors import KindMismatch, ParseError
from arcdom.graph_core import Solution
from arcdom.io import (
    emit_model,
    emit_solution,
    emit_weights,
    parse_instance,
    parse_model,
    parse_solution_members,
    parse_weights,
)
from arcdom.weights import EDGE, INF, VERTEX, WeightMap

from conftest import C4, C6, K3, weighted

C4_TEXT = "c format 1\np ca 4\na 1 0 3\na 2 2 5\na 3 4 7\na 4 6 1\n"


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def _files(tmp_path, model, weights=None):
    mp = tmp_path / "model.txt"
    mp.write_text(emit_model(model))
    args = ["--model", str(mp)]
    if weights is not None:
        wp = tmp_path / "weights.txt"
        wp.write_text(emit_weights(weights))
        args += ["--weights", str(wp)]
    return args


# -- model format -------------------------------------------------------------------


def test_parse_c4():
    assert parse_model(C4_TEXT) == C4
    assert emit_model(C4) == C4_TEXT


def test_comments_and_blank_lines_are_ignored():
    assert parse_model("c hi\n\np ca 1\nc mid\na 1 0 1\n").n == 1


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("p ca 1\na 1 0 0\n", 2, "starts and ends"),
        ("p ca 2\na 1 0 1\na 2 1 2\n", 3, "already used on line 2"),
        ("p ca 1\na 2 0 1\n", 2, "outside 1..1"),
        ("a 1 0 1\n", 1, "before the"),
        ("p ca 1\np ca 1\n", 2, "second header"),
        ("p ca 1\na 1 0 x\n", 2, "integer"),
        ("p ca 1\na 1 0 5\n", 2, "outside 0..1"),
        ("p ca 1\nz\n", 2, "unknown line type"),
        ("p ca 1\na 1 0 1\na 1 0 1\n", 3, "given twice"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_model(text)
    assert info.value.line == line and fragment in str(info.value)


def test_parse_error_without_location():
    with pytest.raises(ParseError, match="arc 2 missing"):
        parse_model("p ca 2\na 1 0 1\n")
    with pytest.raises(ParseError, match="header"):
        parse_model("c nothing\n")


def test_weights_default_to_one():
    model, w = parse_instance(C4_TEXT, "vw 2 3/6\n", VERTEX)
    assert w[1] == Fraction(1, 2) and w[0] == 1 and w[3] == 1
    _, we = parse_instance(C4_TEXT, "ew 2 1 inf\n", EDGE)
    assert we[(0, 1)] == INF and we[(2, 3)] == 1


def test_weight_errors():
    with pytest.raises(ParseError, match="not an edge"):
        parse_weights("ew 1 3 1/1\n", EDGE, C4)
    with pytest.raises(KindMismatch):
        parse_weights("ew 1 2 1/1\n", VERTEX, C4)
    with pytest.raises(KindMismatch):
        parse_weights("vw 1 1/1\n", EDGE, C4)
    with pytest.raises(ParseError, match="bad weight"):
        parse_weights("vw 1 1/0\n", VERTEX, C4)
    with pytest.raises(ParseError, match="given twice"):
        parse_weights("vw 1 1\nvw 1 2\n", VERTEX, C4)


@given(weighted(EDGE, signed=True, max_n=8))
@settings(max_examples=50, deadline=None)
def test_round_trip_edge_instances(inst):
    model, g, w = inst
    back_model, back_w = parse_instance(emit_model(model), emit_weights(w, g.edges), EDGE)
    assert back_model == model
    assert all(back_w[e] == w[e] for e in g.edges)


@given(weighted(VERTEX, signed=True, max_n=8))
@settings(max_examples=50, deadline=None)
def test_round_trip_vertex_instances(inst):
    model, g, w = inst
    back_model, back_w = parse_instance(emit_model(model), emit_weights(w, range(g.n)), VERTEX)
    assert back_model == model and [back_w[v] for v in range(g.n)] == [w[v] for v in range(g.n)]


def test_solution_format():
    assert emit_solution(Solution.of(VERTEX, [2, 0], Fraction(3, 2))) == "s OPTIMAL 3/2\nv 1\nv 3\n"
    assert emit_solution(Solution.infeasible(EDGE)) == "s INFEASIBLE\n"
    text = emit_solution(Solution.of(EDGE, [(0, 1)], 1))
    assert text == "s OPTIMAL 1/1\ne 1 2\n"
    assert parse_solution_members(text, EDGE) == [(0, 1)]
    with pytest.raises(KindMismatch):
        parse_solution_members(text, VERTEX)


# -- command line -------------------------------------------------------------------


def test_solve_cycle(tmp_path):
    code, out, _ = _cli("solve", "--problem", "mweed", *_files(tmp_path, C6))
    assert code == 0
    assert out.splitlines()[0] == "s OPTIMAL 2/1"
    assert out.splitlines()[-1].startswith("c trace: mweed/cycle")


def test_solve_infeasible_exit_code(tmp_path):
    code, out, _ = _cli("solve", "--problem", "mwevd", "--check", *_files(tmp_path, C4))
    assert code == 1 and out.startswith("s INFEASIBLE\n")


def test_solve_with_weights(tmp_path):
    w = WeightMap.vertex([5, 1, 1, 1])
    code, out, _ = _cli("solve", "--problem", "mwpvd", *_files(tmp_path, C4, w))
    assert code == 0 and out.splitlines()[0] == "s OPTIMAL 2/1"


def test_solve_output_is_byte_identical(tmp_path):
    args = ("solve", "--problem", "mwped", *_files(tmp_path, C6))
    assert _cli(*args) == _cli(*args)


def test_verify_round_trip(tmp_path):
    args = _files(tmp_path, K3, WeightMap.edge({(0, 1): Fraction(1, 2)}, default=1))
    code, out, _ = _cli("solve", "--problem", "mwped", *args)
    sol = tmp_path / "sol.txt"
    sol.write_text(out)
    code, out, _ = _cli("verify", "--problem", "mwped", *args, "--solution", str(sol))
    assert code == 0 and out == "FEASIBLE 1/2\n"
    sol.write_text("e 1 2\ne 2 3\n")
    code, out, _ = _cli("verify", "--problem", "mweed", *args, "--solution", str(sol))
    assert code == 0 and out.startswith("INFEASIBLE ")


def test_gen_then_solve(tmp_path):
    mp, wp = tmp_path / "m.txt", tmp_path / "w.txt"
    code, _, _ = _cli("gen", "--family", "ring", "--n", "8", "--seed", "3", "--weights", "signed",
                      "--kind", "edge", "--out-model", str(mp), "--out-weights", str(wp))
    assert code == 0 and mp.read_text().startswith("c gen family=ring n=8 seed=3 weights=signed\n")
    code, out, _ = _cli("solve", "--problem", "mwped", "--check", "--model", str(mp), "--weights", str(wp))
    assert code in (0, 1) and out.startswith("s ")


def test_gen_stdout_is_deterministic():
    a = _cli("gen", "--family", "random", "--n", "9", "--seed", "11", "--weights", "nonneg")
    assert a == _cli("gen", "--family", "random", "--n", "9", "--seed", "11", "--weights", "nonneg")
    assert parse_model(a[1].split("vw")[0].split("c format 1", 2)[1]).n == 9


def test_info_output(tmp_path):
    code, out, _ = _cli("info", *_files(tmp_path, C6))
    lines = out.splitlines()
    assert code == 0
    assert lines[:2] == ["n 6", "m 6"]
    assert lines[2].startswith("coverage min 1 at segment ")
    assert lines[3].startswith("coverage max 2 at segment ")
    assert lines[4:8] == ["universal none", "cover2 none", "cover3 none", "hca-by-cover yes"]
    assert lines[8] == "cycle 1 2 3 4 5 6"
    code, out, _ = _cli("info", *_files(tmp_path, K3))
    assert "cover3 1 2 3" in out and "hca-by-cover no" in out


def test_fuzz_clean_run():
    code, out, _ = _cli("fuzz", "--problem", "mwpvd", "--trials", "30", "--n-max", "7", "--seed", "1")
    assert code == 0 and out == "c mwpvd trials=30 mismatches=0\n"
    assert _cli("fuzz", "--problem", "mwpvd", "--trials", "30", "--n-max", "7", "--seed", "1")[1] == out


def test_usage_errors_exit_2():
    assert _cli()[0] == 2
    assert _cli("solve", "--problem", "nope", "--model", "x")[0] == 2
    assert _cli("gen", "--family", "ring", "--n", "x", "--seed", "1")[0] == 2


def test_input_errors_exit_3(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("p ca 1\na 1 0 0\n")
    code, _, err = _cli("info", "--model", str(bad))
    assert code == 3 and "line 2, column" in err
    code, _, err = _cli("info", "--model", str(tmp_path / "missing.txt"))
    assert code == 3 and "cannot read" in err
    code, _, _ = _cli("gen", "--family", "octahedron", "--n", "5", "--seed", "1")
    assert code == 3


def test_stdin_model(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(C4_TEXT))
    code, out, _ = _cli("solve", "--problem", "mwped", "--model", "-")
    assert code == 0 and out.startswith("s OPTIMAL 2/1")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "arcdom", "info", "--model", "-"],
        input=C4_TEXT, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("n 4\nm 4\n")
