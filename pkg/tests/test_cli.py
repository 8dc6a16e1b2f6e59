"""
Tests for the khovanov command line.
"""
import json

import pandas as pd
import pytest

from app.cli import build_parser, commands, main
from app.services.diagrams import dump_tangle


def test_parser_lists_commands():
    """Test that every subcommand is registered."""
    parser = build_parser()
    args = parser.parse_args(["homology", "unknot", "--jobs", "2", "--format", "json"])
    assert (args.command, args.tangle, args.jobs, args.fmt) == ("homology", "unknot", 2, "json")
    with pytest.raises(SystemExit):
        parser.parse_args(["bogus"])


def test_matchings(capsys):
    """Test listing the five matchings of six points."""
    assert main(["matchings", "3"]) == 0
    out = capsys.readouterr().out
    assert "crossingless matchings of 6 points (5)" in out
    assert "{(1,6),(2,5),(3,4)}" in out or "{(1,2),(3,4),(5,6)}" in out


def test_matchings_bad_argument(capsys):
    """Test that a non-integer argument is an input error."""
    assert main(["matchings", "three"]) == 2
    assert "expects an integer" in capsys.readouterr().err


def test_arc_algebra_verify(capsys):
    """Test printing and verifying H^1."""
    assert main(["arc-algebra", "1", "--verify"]) == 0
    out = capsys.readouterr().out
    assert "H^1 basis (rank 2)" in out
    assert "verification:" in out


def test_homology_text(capsys):
    """Test the unknot table in text form."""
    assert main(["homology", "unknot", "--verify"]) == 0
    out = capsys.readouterr().out
    assert "== Kh(unknot) ==" in out
    assert "Euler characteristic" in out


def test_homology_json(capsys):
    """Test the JSON report."""
    assert main(["homology", "unknot", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    rows = payload["tables"]["Kh(unknot)"]
    assert sorted((r["h"], r["q"], r["rank"]) for r in rows) == [(0, -1, 1), (0, 1, 1)]


def test_homology_csv_output(tmp_path, capsys):
    """Test writing a CSV report to a file."""
    target = tmp_path / "reports" / "trefoil.csv"
    assert main(["homology", "trefoil_right", "--format", "csv", "--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    frame = pd.read_csv(target, dtype={"torsion": str})
    assert {"h", "q", "rank", "torsion", "section"} <= set(frame.columns)
    assert "2" in frame["torsion"].dropna().astype(str).tolist()


def test_homology_from_fixture_file(fixtures_dir, capsys):
    """Test reading a tangle file by path and by fixture name."""
    assert main(["homology", str(fixtures_dir / "hopf.tgl")]) == 0
    by_path = capsys.readouterr().out
    assert main(["homology", "ladybug", "--fixtures", str(fixtures_dir)]) == 0
    assert "Kh(" in by_path
    assert "{(1,2),(3,4)}" in capsys.readouterr().out


def test_missing_input(capsys):
    """Test that an unknown diagram is an input error."""
    assert main(["homology", "no_such_tangle.tgl"]) == 2
    assert "error:" in capsys.readouterr().err


def test_bad_format(capsys, mocker):
    """Test that an unknown output format is refused before the command runs."""
    mocker.patch.dict(commands.COMMANDS, {"homology": mocker.Mock()})
    assert main(["homology", "unknot", "--format", "xml"]) == 2
    err = capsys.readouterr().err
    assert "Unknown output format: xml" in err
    assert "text, csv, json" in err
    assert not commands.COMMANDS["homology"].called


def test_bad_ladybug_rule():
    """Test that an unknown ladybug rule is refused."""
    assert main(["coherence", "ladybug", "--ladybug-rule", "bogus"]) == 2


def test_bad_jobs():
    """Test that zero workers is refused."""
    assert main(["homology", "unknot", "--jobs", "0"]) == 2


def test_complex_summary(capsys):
    """Test the generator summary with verification."""
    assert main(["complex", "twist", "--verify"]) == 0
    out = capsys.readouterr().out
    assert "C_Kh(twist): 6 generators, N+=1, N-=0" in out


def test_glue(capsys):
    """Test that gluing a cup and a cap is verified."""
    assert main(["glue", "cup", "cap"]) == 0
    out = capsys.readouterr().out
    assert "isomorphism verified" in out


def test_glue_boundary_mismatch():
    """Test that incompatible tangles are an input error."""
    assert main(["glue", "ladybug", "twist"]) == 2


def test_glue_passes_jobs(mocker):
    """Test that --jobs reaches the gluing map."""
    spy = mocker.spy(commands, "gluing_map")
    assert main(["glue", "cup", "cap", "--jobs", "2", "--quiet"]) == 0
    assert spy.call_args.kwargs["jobs"] == 2


def test_coherence(capsys):
    """Test the right ladybug rule on the ladybug tangle."""
    assert main(["coherence", "ladybug"]) == 0
    assert "cube statistics of ladybug" in capsys.readouterr().out


def test_coherence_negative_control(tmp_path, kinked_unlink, capsys):
    """Test that the alternating rule fails a hexagon and exits 1."""
    path = tmp_path / "kinked_unlink.tgl"
    path.write_text(dump_tangle(kinked_unlink))
    assert main(["coherence", str(path), "--ladybug-rule", "alternating"]) == 1
    assert main(["coherence", str(path), "--ladybug-rule", "right"]) == 0


def test_hochschild(capsys):
    """Test HH of the identity tangle."""
    assert main(["hochschild", "identity", "--degree", "1"]) == 0
    out = capsys.readouterr().out
    assert "== HH_0(id2) ==" in out
    assert "== HH_1(id2) ==" in out


def test_reidemeister(capsys):
    """Test the built-in move pairs and an explicit pair."""
    assert main(["reidemeister", "--quiet"]) == 0
    assert main(["reidemeister", "unknot", "hopf"]) == 1
    assert main(["reidemeister", "unknot"]) == 2
