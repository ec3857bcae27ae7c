from typing import List

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from mubkit.enums import Method


class SymmetricFamily(BaseModel):
    """Matrices over F_p; each member A generates the class (1 | A).

    The determinant condition is checked by validate_family rather than
    here, so failing families can be built and reported on.
    """

    p: int = Field(..., ge=2, description="Characteristic")
    m: int = Field(..., ge=1, description="Matrix order")
    matrices: List[np.ndarray] = Field(..., description="m x m matrices over F_p")
    method: Method = Field(..., description="How the family was produced")

    @field_validator("matrices", mode="before")
    def validate_matrices(cls, matrices: List[np.ndarray]) -> List[np.ndarray]:
        """Coerce nested lists to int64 arrays."""
        return [np.asarray(a, dtype=np.int64) for a in matrices]

    @model_validator(mode="after")
    def validate_shapes(cls, model: "SymmetricFamily") -> "SymmetricFamily":
        for a in model.matrices:
            if a.shape != (model.m, model.m):
                raise ValueError(f"matrix shape {a.shape} does not match m = {model.m}")
            if np.any(a < 0) or np.any(a >= model.p):
                raise ValueError(f"entries must be residues modulo {model.p}")
        return model

    model_config = {
        "arbitrary_types_allowed": True,
    }


class PairDeterminant(BaseModel):
    j: int
    k: int
    det: int = Field(..., description="det(A_j - A_k) in F_p")


class FamilyReport(BaseModel):
    """Outcome of validate_family."""

    passed: bool
    symmetric: List[bool] = Field(..., description="Per-matrix symmetry flags")
    determinants: List[PairDeterminant] = Field(
        ..., description="det(A_j - A_k) for every pair j < k"
    )

    @property
    def failures(self) -> List[PairDeterminant]:
        """Pairs whose difference is singular."""
        return [pair for pair in self.determinants if pair.det == 0]
