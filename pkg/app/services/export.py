"""
Report service: turns homology tables and verification reports into
pandas DataFrames and writes them as text, CSV or JSON.
"""
import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

import pandas as pd

from app import logger
from app.core.exceptions import ExportError
from app.models.schemas import VerificationReport
from app.services.homology import BigradedHomology

FORMATS = ("text", "csv", "json")


def homology_frame(H: BigradedHomology, label: Optional[str] = None) -> pd.DataFrame:
    """One row per nonzero bigrading, torsion written as ``2,2`` style strings."""
    rows = [
        {"h": e.h, "q": e.q, "rank": e.rank, "torsion": ",".join(str(d) for d in e.torsion)}
        for e in H.entries()
    ]
    frame = pd.DataFrame(rows, columns=["h", "q", "rank", "torsion"])
    if label is not None:
        frame.insert(0, "block", label)
    return frame


def report_frame(report: VerificationReport) -> pd.DataFrame:
    frame = pd.DataFrame(
        [{"subject": report.subject, "check": name, "passed": ok} for name, ok in report.checks.items()],
        columns=["subject", "check", "passed"],
    )
    return frame


class ReportService:
    """Collects report sections and renders or writes them."""

    def __init__(self):
        self.sections: Dict[str, pd.DataFrame] = {}
        self.notes: Dict[str, str] = {}

    def add_table(self, title: str, frame: pd.DataFrame) -> None:
        self.sections[title] = frame

    def add_homology(self, title: str, H: BigradedHomology, label: Optional[str] = None) -> None:
        frame = homology_frame(H, label)
        if title in self.sections:
            frame = pd.concat([self.sections[title], frame], ignore_index=True)
        self.sections[title] = frame

    def add_report(self, report: VerificationReport) -> None:
        title = f"verification: {report.subject}"
        self.sections[title] = report_frame(report)
        if report.counterexamples:
            self.notes[title] = "\n".join(report.counterexamples)

    def add_note(self, title: str, text: str) -> None:
        self.notes[title] = text

    def combined(self) -> pd.DataFrame:
        """All tables stacked with a ``section`` column, for CSV output."""
        frames = [frame.assign(section=title) for title, frame in self.sections.items()]
        if not frames:
            return pd.DataFrame(columns=["section"])
        return pd.concat(frames, ignore_index=True)

    def render(self, fmt: str = "text") -> str:
        if fmt not in FORMATS:
            raise ExportError(f"Unsupported format: {fmt}")
        if fmt == "csv":
            return self.combined().to_csv(index=False)
        if fmt == "json":
            payload: Dict[str, Any] = {
                "tables": {title: json.loads(frame.to_json(orient="records")) for title, frame in self.sections.items()},
                "notes": dict(self.notes),
            }
            return json.dumps(payload, indent=2) + "\n"
        blocks = []
        for title in list(self.sections) + [t for t in self.notes if t not in self.sections]:
            lines = [f"== {title} =="]
            frame = self.sections.get(title)
            if frame is not None:
                lines.append(frame.to_string(index=False) if len(frame) else "(empty)")
            if title in self.notes:
                lines.append(self.notes[title])
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"

    def export(self, file_path: Optional[Union[str, Path]], fmt: str = "text") -> str:
        """
        Render the report and write it to ``file_path``.

        Args:
            file_path: Target file, or None to only return the text
            fmt: One of text, csv, json

        Returns:
            The rendered report
        """
        text = self.render(fmt)
        if file_path is None:
            return text
        try:
            path = Path(file_path)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
        except OSError as e:
            logger.error(f"Error exporting report to {file_path}: {e}")
            raise ExportError(f"Error exporting report to {file_path}: {str(e)}")
        logger.info(f"Report written to {file_path} ({fmt})")
        return text

    @staticmethod
    def get_export_formats() -> Dict[str, Dict[str, str]]:
        return {
            "text": {"description": "Aligned plain-text tables", "extension": ".txt"},
            "csv": {"description": "Comma-separated values, one section column", "extension": ".csv"},
            "json": {"description": "JavaScript Object Notation, one record list per table", "extension": ".json"},
        }
