"""
Export tests for the report service.
"""
import json

import pandas as pd
import pytest

from app.core.exceptions import ExportError
from app.models.schemas import VerificationReport
from app.services.export import ReportService, homology_frame, report_frame
from app.services.homology import BigradedHomology

TREFOIL = BigradedHomology({(0, 1): (1, ()), (0, 3): (1, ()), (2, 5): (1, ()), (3, 7): (0, (2,)), (3, 9): (1, ())})


@pytest.fixture
def export_service():
    service = ReportService()
    service.add_homology("Kh(trefoil)", TREFOIL)
    report = VerificationReport(subject="trefoil")
    report.record("d_squared", True)
    report.record("oracle", False, "pair (0, 0) differs")
    service.add_report(report)
    return service


def test_homology_frame():
    """Test one row per nonzero bigrading."""
    frame = homology_frame(TREFOIL, "closed")
    assert list(frame.columns) == ["block", "h", "q", "rank", "torsion"]
    assert len(frame) == 5
    assert frame.loc[frame["q"] == 7, "torsion"].item() == "2"
    assert homology_frame(BigradedHomology()).empty


def test_report_frame():
    """Test the verification table."""
    report = VerificationReport(subject="s")
    report.record("a", True)
    report.record("b", False)
    frame = report_frame(report)
    assert frame["passed"].tolist() == [True, False]


def test_add_homology_appends_blocks():
    """Test that blocks of one complex share a table."""
    service = ReportService()
    service.add_homology("Kh(T)", TREFOIL, "a|b")
    service.add_homology("Kh(T)", BigradedHomology({(0, 0): (1, ())}), "a|c")
    assert service.sections["Kh(T)"]["block"].tolist() == ["a|b"] * 5 + ["a|c"]


def test_export_to_text(export_service, tmp_path):
    """Test exporting to plain text."""
    path = tmp_path / "report.txt"
    text = export_service.export(path, "text")
    assert path.read_text() == text
    assert "== Kh(trefoil) ==" in text
    assert "== verification: trefoil ==" in text
    assert "oracle: pair (0, 0) differs" in text


def test_export_to_csv(export_service, tmp_path):
    """Test exporting to CSV."""
    path = tmp_path / "report.csv"
    export_service.export(path, "csv")
    frame = pd.read_csv(path)
    assert set(frame["section"]) == {"Kh(trefoil)", "verification: trefoil"}
    assert len(frame) == 7


def test_export_to_json(export_service, tmp_path):
    """Test exporting to JSON."""
    path = tmp_path / "nested" / "report.json"
    export_service.export(path, "json")
    payload = json.loads(path.read_text())
    assert len(payload["tables"]["Kh(trefoil)"]) == 5
    assert payload["notes"]["verification: trefoil"] == "oracle: pair (0, 0) differs"


def test_notes_without_tables():
    """Test a report holding only a note."""
    service = ReportService()
    service.add_note("gluing cup ∘ cap", "isomorphism verified")
    assert service.render() == "== gluing cup ∘ cap ==\nisomorphism verified\n"
    assert service.combined().empty


def test_error_handling(export_service, tmp_path):
    """Test export errors."""
    with pytest.raises(ExportError):
        export_service.render("xlsx")

    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(ExportError) as exc_info:
        export_service.export(blocker / "report.txt")
    assert "Error exporting report" in str(exc_info.value)


def test_export_without_path(export_service):
    """Test that no path only renders."""
    assert export_service.export(None, "csv").startswith("h,q,rank,torsion")


def test_export_format_options():
    """Test the listed export formats."""
    formats = ReportService.get_export_formats()
    assert set(formats) == {"text", "csv", "json"}
    assert formats["csv"]["extension"] == ".csv"
