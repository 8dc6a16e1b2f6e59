"""
Schema tests for tangle files, homology rows and run configuration.
"""
import pytest
from pydantic import ValidationError

from app.models.schemas import HomologyEntry, RunConfig, TangleFileSchema, VerificationReport


def test_tangle_file_schema(fixtures_dir):
    """Test validating a fixture file."""
    schema = TangleFileSchema.model_validate_json((fixtures_dir / "twist.tgl").read_text())
    assert (schema.left, schema.right) == (2, 2)
    assert schema.crossings == [[1, 3, 4, 2]]
    assert schema.orientations == [[1, 4], [2, 3]]


@pytest.mark.parametrize("data", [
    {"left": 1, "right": 0, "edges": [1], "left_boundary": [1]},
    {"left": 0, "right": 0, "edges": [1, 2], "crossings": [[1, 2, 1]]},
    {"left": 2, "right": 0, "edges": [1], "left_boundary": [1]},
    {"left": -2, "right": 0, "edges": []},
    {"right": 0, "edges": []},
])
def test_tangle_file_validation(data):
    """Test rejected tangle files."""
    with pytest.raises(ValidationError):
        TangleFileSchema(**data)


def test_homology_entry():
    """Test homology rows."""
    entry = HomologyEntry(h=3, q=7, rank=0, torsion=[2])
    assert entry.model_dump() == {"h": 3, "q": 7, "rank": 0, "torsion": [2]}
    with pytest.raises(ValidationError):
        HomologyEntry(h=0, q=0, rank=-1)


def test_verification_report():
    """Test recording checks and capping counterexamples."""
    report = VerificationReport(subject="cube")
    assert report.passed
    for k in range(30):
        report.record("hexagons", k % 2 == 0, f"hexagon {k}")
    report.record("faces", True)
    assert not report.passed
    assert report.checks == {"hexagons": False, "faces": True}
    assert len(report.counterexamples) == 20
    assert report.counterexamples[0] == "hexagons: hexagon 1"


def test_run_config():
    """Test CLI run configuration."""
    config = RunConfig(command="homology", inputs=["unknot"], fmt="json", jobs=2)
    assert config.degree == 2
    assert config.output is None
    with pytest.raises(ValidationError):
        RunConfig(command="homology", fmt="xml")
    with pytest.raises(ValidationError):
        RunConfig(command="homology", jobs=0)
    with pytest.raises(ValidationError):
        RunConfig(command="hochschild", degree=-1)
