import json

import pytest

from matchcover.cli import main
from matchcover.generators import named_graph
from matchcover.multigraph import canonical_form, format_graph, parse_graph


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_named_graph(capsys):
    code, out, _ = run(capsys, "analyze", "C6")
    assert code == 0
    assert "epsilon: 3" in out
    assert "b: 0  c4: 2" in out
    assert "matching covered: True" in out


def test_analyze_json_report(capsys):
    code, out, _ = run(capsys, "analyze", "C6bar", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["epsilon"] == 2
    assert report["classification"] == "brick"
    assert report["solidBrick"] is False
    assert report["b"] == 1 and report["c4"] == 0
    assert sorted(map(sorted, report["equivalenceClasses"])) == [
        [1, 4], [2, 5], [3, 6], [7], [8], [9],
    ]


def test_analyze_file(tmp_path, capsys):
    path = tmp_path / "pet.g"
    path.write_text(format_graph(named_graph("petersen")))
    code, out, _ = run(capsys, "analyze", str(path), "--json")
    assert code == 0
    report = json.loads(out)
    assert report["input"]["n"] == 10
    assert report["epsilon"] == 1
    assert report["classification"] == "brick"


def test_analyze_decompose_and_oracle(capsys):
    code, out, _ = run(capsys, "analyze", "C8", "--json", "--decompose", "--oracle-check")
    assert code == 0
    report = json.loads(out)
    assert report["decomposition"]["b"] == 0
    assert report["decomposition"]["c4"] == 3
    assert len(report["decomposition"]["leaves"]) == 3
    assert report["oracleChecks"]["partitionAgrees"] is True
    assert report["oracleChecks"]["perfectMatchings"] == 2


def test_analyze_not_matching_covered(tmp_path, capsys):
    path = tmp_path / "p4.g"
    path.write_text("p 4 3\ne 1 2\ne 2 3\ne 3 4\n")
    code, out, _ = run(capsys, "analyze", str(path), "--json")
    assert code == 2
    report = json.loads(out)
    assert report["flags"]["matchingCovered"] is False
    assert report["witness"]["reason"] == "inadmissible edge"
    assert report["witness"]["edge"] == 2


def test_analyze_odd_order_witness(tmp_path, capsys):
    path = tmp_path / "p3.g"
    path.write_text("p 3 2\ne 1 2\ne 2 3\n")
    code, out, _ = run(capsys, "analyze", str(path), "--json")
    assert code == 2
    assert json.loads(out)["witness"]["reason"] == "odd order"


def test_analyze_missing_file(capsys):
    code, _, err = run(capsys, "analyze", "no-such-thing")
    assert code == 1
    assert "error" in err


def test_analyze_parse_error_line_number(tmp_path, capsys):
    path = tmp_path / "bad.g"
    path.write_text("p 2 1\ne 1 5\n")
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 1
    assert "line 2" in err


def test_analyze_deterministic_bytes(capsys):
    _, out1, _ = run(capsys, "analyze", "fig2b", "--json", "--decompose")
    _, out2, _ = run(capsys, "analyze", "fig2b", "--json", "--decompose")
    assert out1 == out2


def test_splice_command(tmp_path, capsys):
    code, out, _ = run(
        capsys, "splice", "K4", "v1", "K4", "v1", "--out", str(tmp_path)
    )
    assert code == 0
    written = tmp_path / "K4-K4-splice.g"
    assert written.exists()
    g = parse_graph(written.read_text())
    assert canonical_form(g) == canonical_form(named_graph("C6bar"))
    assert "splicing cut: 3 edges" in out


def test_splice_written_file_round_trips(tmp_path, capsys):
    run(capsys, "splice", "W5", "hub", "W5", "hub", "--out", str(tmp_path))
    written = tmp_path / "W5-W5-splice.g"
    text = written.read_text()
    assert format_graph(parse_graph(text)) == text


def test_splice_all_variants(tmp_path, capsys):
    code, out, _ = run(
        capsys, "splice", "W5", "1", "W5", "1", "--all-variants", "--out", str(tmp_path)
    )
    assert code == 0
    files = sorted(tmp_path.glob("*.g"))
    assert len(files) >= 2
    forms = {canonical_form(parse_graph(p.read_text())) for p in files}
    assert canonical_form(named_graph("petersen")) in forms
    assert f"{len(files)} distinct canonical forms" in out


def test_splice_degree_mismatch_exit_code(capsys):
    code, _, err = run(capsys, "splice", "K4", "1", "C6", "1")
    assert code == 1
    assert "error" in err


def test_splice_custom_pi(tmp_path, capsys):
    code, _, _ = run(
        capsys, "splice", "K4", "1", "K4", "1", "--pi", "1:2,2:1,3:3", "--out", str(tmp_path)
    )
    assert code == 0


def test_construct_and_verify(tmp_path, capsys):
    out_dir = tmp_path / "c"
    code, out, _ = run(
        capsys, "construct", "--p", "2", "--q", "2", "--verify", "--out", str(out_dir)
    )
    assert code == 0
    assert "FAIL" not in out
    assert out.count("PASS") >= 10
    for name in ("base.g", "g0.g", "block1.g", "stage1.g", "trace.json"):
        assert (out_dir / name).exists()
    trace = json.loads((out_dir / "trace.json").read_text())
    assert trace["p"] == 2 and trace["q"] == 2
    assert all(row["ok"] for row in trace["verification"].values())
    # written stage re-parses to the constructed graph
    stage = parse_graph((out_dir / "stage1.g").read_text())
    assert stage.n == trace["finalOrder"]


def test_construct_rejects_p_below_two(capsys):
    code, _, err = run(capsys, "construct", "--p", "1", "--q", "2")
    assert code == 1
    assert "error" in err


def test_construct_requires_p_and_q(capsys):
    code, _, _ = run(capsys, "construct", "--p", "2")
    assert code == 1


def test_corpus_bounds(tmp_path, capsys):
    for name in ("C6", "K4", "C6bar"):
        (tmp_path / f"{name}.g").write_text(format_graph(named_graph(name)))
    code, out, _ = run(capsys, "corpus", "--dir", str(tmp_path), "--check", "bounds")
    assert code == 0
    assert "3 files, 0 failures" in out
    assert out.count("PASS") == 3


def test_corpus_skips_non_mc(tmp_path, capsys):
    (tmp_path / "p4.g").write_text("p 4 3\ne 1 2\ne 2 3\ne 3 4\n")
    (tmp_path / "c6.g").write_text(format_graph(named_graph("C6")))
    code, out, _ = run(capsys, "corpus", "--dir", str(tmp_path), "--check", "uniqueness")
    assert code == 0
    assert "SKIP" in out and "PASS" in out


def test_corpus_empty_dir(tmp_path, capsys):
    code, out, _ = run(capsys, "corpus", "--dir", str(tmp_path), "--check", "bounds")
    assert code == 0
    assert "0 files, 0 failures" in out


def test_corpus_unknown_suite(tmp_path, capsys):
    code, _, err = run(capsys, "corpus", "--dir", str(tmp_path), "--check", "nonsense")
    assert code == 1
    assert "unknown suite" in err


def test_corpus_missing_dir(capsys):
    code, _, err = run(capsys, "corpus", "--dir", "/no/such/dir", "--check", "bounds")
    assert code == 1


def test_corpus_merging_seeded(tmp_path, capsys):
    from matchcover.splicing import SpliceSpec, splice

    res = splice(SpliceSpec(named_graph("K3,3"), 1, named_graph("K3,3"), 1))
    (tmp_path / "bip.g").write_text(format_graph(res.graph))
    code, out, _ = run(
        capsys, "corpus", "--dir", str(tmp_path), "--check", "merging", "--seed", "0"
    )
    assert code == 0
    assert "pairs" in out


def test_unknown_command_exits_one(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 1


def test_no_arguments_exits_one(capsys):
    code, _, _ = run(capsys)
    assert code == 1


def test_console_script_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "matchcover.cli", "analyze", "C6"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "epsilon: 3" in proc.stdout
