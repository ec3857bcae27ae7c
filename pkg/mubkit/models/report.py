from typing import List, Optional

from pydantic import BaseModel, Field, model_validator


class CheckRecord(BaseModel):
    """One named check with its worst deviation and where it occurred."""

    name: str = Field(..., description="Check name")
    worst_deviation: float = Field(..., ge=0, description="Max-norm deviation")
    location: List[int] = Field(
        default_factory=list, description="Indices of the worst entry"
    )
    passed: bool
    structural: bool = Field(
        default=False, description="Tolerance-independent check (counts, shapes)"
    )
    count: Optional[int] = Field(default=None, description="Number of objects checked")
    detail: Optional[str] = None


class VerifyReport(BaseModel):
    """Result of a verification run."""

    passed: bool
    checks: List[CheckRecord] = Field(default_factory=list)
    tolerance: float = Field(..., gt=0)
    coverage: float = Field(
        default=1.0, ge=0, le=1, description="Fraction of basis pairs examined"
    )

    @model_validator(mode="after")
    def validate_passed(cls, model: "VerifyReport") -> "VerifyReport":
        for check in model.checks:
            if not check.structural and check.passed != (
                check.worst_deviation <= model.tolerance
            ):
                raise ValueError(f"check {check.name} disagrees with the tolerance")
        if model.passed != all(check.passed for check in model.checks):
            raise ValueError("passed must equal the conjunction of all checks")
        return model

    def check(self, name: str) -> CheckRecord:
        """Return the first record with the given name."""
        return next(c for c in self.checks if c.name == name)

    model_config = {
        "json_schema_extra": {
            "example": {
                "passed": True,
                "checks": [
                    {
                        "name": "unbiased",
                        "worst_deviation": 3.3e-16,
                        "location": [0, 1, 0, 0],
                        "passed": True,
                        "structural": False,
                        "count": 3,
                        "detail": None,
                    }
                ],
                "tolerance": 1e-8,
                "coverage": 1.0,
            }
        }
    }
