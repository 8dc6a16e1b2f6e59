"""
Pydantic schemas for data validation and serialization.
"""
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator


class TangleFileSchema(BaseModel):
    """
    Schema of a tangle file.

    ``left`` and ``right`` count boundary points (2m and 2n). Crossings list
    four edge ids counterclockwise from the incoming under-strand.
    """
    name: Optional[str] = None
    left: int = Field(..., ge=0)
    right: int = Field(..., ge=0)
    edges: List[int]
    crossings: List[List[int]] = Field(default_factory=list)
    left_boundary: List[int] = Field(default_factory=list)
    right_boundary: List[int] = Field(default_factory=list)
    orientations: List[List[int]] = Field(default_factory=list)

    @field_validator("left", "right")
    def validate_even(cls, v):
        if v % 2:
            raise ValueError(f"boundary point counts must be even, got {v}")
        return v

    @field_validator("crossings")
    def validate_crossings(cls, v):
        for crossing in v:
            if len(crossing) != 4:
                raise ValueError(f"each crossing lists four edges, got {crossing}")
        return v

    @model_validator(mode="after")
    def validate_boundaries(self):
        if len(self.left_boundary) != self.left:
            raise ValueError(f"left_boundary lists {len(self.left_boundary)} edges, expected {self.left}")
        if len(self.right_boundary) != self.right:
            raise ValueError(f"right_boundary lists {len(self.right_boundary)} edges, expected {self.right}")
        return self


class HomologyEntry(BaseModel):
    """One bigrading of a homology table."""
    h: int
    q: int
    rank: int = Field(..., ge=0)
    torsion: List[int] = Field(default_factory=list)


class VerificationReport(BaseModel):
    """Outcome of a verify_* routine: named checks and counterexamples."""
    subject: str
    checks: Dict[str, bool] = Field(default_factory=dict)
    counterexamples: List[str] = Field(default_factory=list)
    stats: Dict[str, int] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, check: str, ok: bool, detail: Optional[str] = None, limit: int = 20) -> None:
        self.checks[check] = self.checks.get(check, True) and ok
        if not ok and detail and len(self.counterexamples) < limit:
            self.counterexamples.append(f"{check}: {detail}")


class RunConfig(BaseModel):
    """Validated flags of one CLI run."""
    command: str
    inputs: List[str] = Field(default_factory=list)
    verify: bool = False
    jobs: int = Field(default=1, ge=1)
    degree: int = Field(default=2, ge=0)
    output: Optional[Path] = None
    fmt: str = "text"
    fixtures: Path = Path("fixtures")
    ladybug_rule: str = "right"

    @field_validator("fmt")
    def validate_format(cls, v):
        if v not in ("text", "json", "csv"):
            raise ValueError(f"format should be text, json or csv. Got: {v}")
        return v
