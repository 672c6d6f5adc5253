"""Problem file grammar, CLI subcommands, exit codes, report formats."""

import json

import pytest

from conftest import CORPUS_DIR

from toriclc.cli import run
from toriclc.errors import ProblemFormatError
from toriclc.problems import parse_degree_list, parse_problem


GOOD = """
# a comment
matrix:
1 1 1
0 1 2

ideal:
1 1
bound: 77
box: 5
"""


def test_parse_problem():
    prob = parse_problem(GOOD)
    assert prob.matrix_rows == ((1, 1, 1), (0, 1, 2))
    assert prob.ideal == ((1, 1),)
    assert prob.options == {"bound": 77, "box": 5}


def test_parse_maximal_inline():
    prob = parse_problem("matrix:\n2 3\nideal: maximal\n")
    assert prob.ideal == "maximal"


def test_parse_no_ideal():
    prob = parse_problem("matrix:\n2 3\n")
    assert prob.ideal is None


@pytest.mark.parametrize("text,hint", [
    ("ideal:\n1 1\n", "no matrix"),
    ("matrix:\n1 2\n1\n", "ragged"),
    ("matrix:\n1 x\n", "integers"),
    ("matrix:\n2 3\nideal:\n1 1\n", "entries"),
    ("matrix:\n2 3\nfoo: 1\n", "unknown key"),
    ("matrix:\n2 3\nideal:\n", "empty ideal"),
    ("matrix:\n2 3\nmatrix:\n2 3\n", "duplicate"),
    ("matrix: 1 2\n", "following lines"),
    ("stray\n", "unexpected"),
])
def test_parse_errors(text, hint):
    with pytest.raises(ProblemFormatError) as err:
        parse_problem(text)
    assert hint.split()[0] in str(err.value)


def test_parse_degree_list():
    assert parse_degree_list("1,1;0,2", 2) == ((1, 1), (0, 2))
    assert parse_degree_list("1 1", 2) == ((1, 1),)
    with pytest.raises(ProblemFormatError):
        parse_degree_list("1,1,1", 2)
    with pytest.raises(ProblemFormatError):
        parse_degree_list("", 2)


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_cli_analyze_human(capsys):
    code, out = _run(capsys, "analyze", str(CORPUS_DIR / "dim1_cusp.toric"))
    assert code == 0
    assert "scored: True" in out and "normal: False" in out


def test_cli_analyze_machine(capsys):
    code, out = _run(capsys, "analyze", str(CORPUS_DIR / "dim1_cusp.toric"),
                     "--format", "machine")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == "toriclc-report/1"
    assert report["presentation"]["flags"]["scored"] is True
    assert report["presentation"]["facets"][0]["value_semigroup"]["gaps"] == [1]


def test_cli_sectors(capsys):
    code, out = _run(capsys, "sectors", str(CORPUS_DIR / "dim2_normal.toric"),
                     "--format", "machine")
    assert code == 0
    report = json.loads(out)
    analysis = report["sector_analysis"]
    assert len(analysis["classes"]) == 4
    empty = [s for s in analysis["sectors"] if not s["nonempty"]]
    assert len(empty) == 1


def test_cli_lc_with_socle(capsys):
    code, out = _run(capsys, "lc", str(CORPUS_DIR / "dim2_polynomial.toric"),
                     "--maximal", "--socle", "3", "--format", "machine")
    assert code == 0
    report = json.loads(out)
    assert report["local_cohomology"]["total_length"] == 1
    (probe,) = report["socle"]
    assert probe["counts"] == [[3, 1]]


def test_cli_lc_ideal_flag_overrides(capsys):
    code, out = _run(capsys, "lc", str(CORPUS_DIR / "dim2_normal.toric"),
                     "--ideal", "1,0", "--format", "machine")
    assert code == 0
    report = json.loads(out)
    assert report["local_cohomology"]["ideal"]["generator_degrees"] == [[1, 0]]


def test_cli_lc_needs_ideal(tmp_path, capsys):
    path = tmp_path / "noideal.toric"
    path.write_text("matrix:\n2 3\n")
    code, _ = _run(capsys, "lc", str(path))
    assert code == 4


def test_cli_grd(capsys):
    code, out = _run(capsys, "grd", str(CORPUS_DIR / "dim1_cusp.toric"),
                     "--format", "machine")
    assert code == 0
    report = json.loads(out)
    assert report["exponent_identities"]["failures"] == []
    assert report["dim1"]["notcm"]["gap_pairs"] == [[0, 1], [1, 0]]
    kinds = {c["kind"]: c for c in report["certificates"]}
    assert kinds["origin_fiber"]["verified"] is True
    assert kinds["char_variety_max"]["verified"] is True


def test_cli_grd_nonsimplicial_reports_rejection(capsys):
    code, out = _run(capsys, "grd", str(CORPUS_DIR / "dim3_hartshorne.toric"),
                     "--format", "machine")
    assert code == 0
    report = json.loads(out)
    kinds = {c["kind"]: c for c in report["certificates"]}
    assert "error" in kinds["origin_fiber"]
    assert kinds["origin_fiber"]["error"].startswith("HypothesisFailed")
    assert kinds["char_variety_max"]["verified"] is True


def test_cli_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.toric"
    bad.write_text("matrix:\n1 x\n")
    code, _ = _run(capsys, "analyze", str(bad))
    assert code == 4


def test_cli_output_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out = _run(capsys, "analyze", str(CORPUS_DIR / "dim1_weyl.toric"),
                     "--format", "machine", "--output", str(out_path))
    assert code == 0
    assert out == ""
    assert json.loads(out_path.read_text())["command"] == "analyze"


def test_cli_bound_flag_echoed(capsys):
    code, out = _run(capsys, "analyze", str(CORPUS_DIR / "dim1_weyl.toric"),
                     "--bound", "44", "--format", "machine")
    assert code == 0
    report = json.loads(out)
    assert report["input"]["options"]["bound"] == 44
    assert report["presentation"]["options"]["search_bound"] == 44


def test_cli_usage_error(capsys):
    assert run(["analyze"]) == 4


def test_cli_lc_maximal_includes_sector_view(capsys):
    code, out = _run(capsys, "lc", str(CORPUS_DIR / "dim2_scored_nonnormal.toric"),
                     "--format", "machine")
    assert code == 0
    report = json.loads(out)
    view = report["sector_cohomology"]
    assert view["length"] >= 1
    top = max(f["id"] for f in report["presentation"]["faces"])
    assert any(
        p["cohomological_degree"] == 2 and p["sector"] == [top]
        for p in view["pieces"]
    )


def test_cli_analyze_unpointed_succeeds(tmp_path, capsys):
    path = tmp_path / "line.toric"
    path.write_text("matrix:\n1 -1\n")
    code, out = _run(capsys, "analyze", str(path), "--format", "machine")
    assert code == 0
    assert json.loads(out)["presentation"]["pointed"] is False


def test_cli_sectors_unpointed_exit_code(tmp_path, capsys):
    path = tmp_path / "line.toric"
    path.write_text("matrix:\n1 -1\n")
    code, _ = _run(capsys, "sectors", str(path))
    assert code == 2


def test_cli_sublattice_exit_code(tmp_path, capsys):
    path = tmp_path / "even.toric"
    path.write_text("matrix:\n2\n")
    code, _ = _run(capsys, "analyze", str(path))
    assert code == 4
