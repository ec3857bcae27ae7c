from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from mubkit.enums import Method


class MubMeta(BaseModel):
    """Construction metadata carried alongside the bases."""

    p: int = Field(..., ge=2, description="Characteristic")
    m: int = Field(..., ge=1, description="Extension degree")
    modulus_poly: Optional[List[int]] = Field(
        default=None, description="Modulus polynomial, coefficients lowest-first"
    )
    seed: Optional[int] = Field(default=None, description="Spectral rng seed")
    tol: float = Field(..., gt=0, description="Tolerance the set was built for")


class MubSet(BaseModel):
    """An ordered list of bases of C^dim; the columns of each matrix are the vectors.

    Orthonormality, unbiasedness and the d+1 ceiling are certified by
    mubkit.services.verify.check_mub_set rather than here, so broken sets can
    still be represented and rejected.
    """

    dim: int = Field(..., ge=1, description="Hilbert-space dimension d")
    bases: List[np.ndarray] = Field(
        ..., min_length=1, description="d x d matrices whose columns are basis vectors"
    )
    method: Method = Field(..., description="Construction method")
    meta: MubMeta

    @field_validator("bases", mode="before")
    def validate_bases(cls, bases: List[np.ndarray]) -> List[np.ndarray]:
        """Coerce each basis to a finite complex square matrix."""
        out = []
        for basis in bases:
            arr = np.asarray(basis, dtype=np.complex128)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise ValueError(f"basis must be a square matrix, got shape {arr.shape}")
            if not np.all(np.isfinite(arr)):
                raise ValueError("basis entries must be finite")
            out.append(arr)
        return out

    @model_validator(mode="after")
    def validate_dimensions(cls, model: "MubSet") -> "MubSet":
        """Bases must be dim x dim with dim = p^m."""
        if model.meta.p**model.meta.m != model.dim:
            raise ValueError(
                f"dim {model.dim} does not equal p^m = {model.meta.p}^{model.meta.m}"
            )
        for basis in model.bases:
            if basis.shape != (model.dim, model.dim):
                raise ValueError(
                    f"basis shape {basis.shape} does not match dim {model.dim}"
                )
        return model

    model_config = {
        "arbitrary_types_allowed": True,
    }
