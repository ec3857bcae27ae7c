from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from mubkit.enums import Method
from mubkit.models.mub_set import MubMeta, MubSet
from mubkit.services.utils import decode_matrix, encode_matrix

SCHEMA_VERSION = "mub/1"


class MubFileV1(BaseModel):
    """On-disk form of a MubSet (schema "mub/1")."""

    schema_version: Literal["mub/1"] = Field(..., description="Schema tag")
    dim: int = Field(..., ge=1, description="Dimension d = p^m")
    p: int = Field(..., ge=2, description="Characteristic")
    m: int = Field(..., ge=1, description="Extension degree")
    method: Method = Field(..., description="Construction method")
    modulus_poly: Optional[List[int]] = Field(
        default=None, description="Modulus polynomial, coefficients lowest-first"
    )
    seed: Optional[int] = Field(default=None, description="Spectral rng seed")
    tol: float = Field(..., gt=0, description="Generation tolerance")
    bases: List[List[Tuple[float, float]]] = Field(
        ..., min_length=1, description="Column-major [re, im] entries, dim^2 per basis"
    )

    @model_validator(mode="after")
    def validate_layout(cls, model: "MubFileV1") -> "MubFileV1":
        if model.p**model.m != model.dim:
            raise ValueError(f"dim {model.dim} != p^m = {model.p}^{model.m}")
        for index, entries in enumerate(model.bases):
            if len(entries) != model.dim**2:
                raise ValueError(
                    f"basis {index} has {len(entries)} entries, expected {model.dim ** 2}"
                )
        return model

    @classmethod
    def from_mub_set(cls, mub_set: MubSet) -> "MubFileV1":
        """Encode a MubSet as a mub/1 document."""
        return cls(
            schema_version=SCHEMA_VERSION,
            dim=mub_set.dim,
            p=mub_set.meta.p,
            m=mub_set.meta.m,
            method=mub_set.method,
            modulus_poly=mub_set.meta.modulus_poly,
            seed=mub_set.meta.seed,
            tol=mub_set.meta.tol,
            bases=[encode_matrix(b) for b in mub_set.bases],
        )

    def to_mub_set(self) -> MubSet:
        """Decode the entries back into a validated MubSet."""
        return MubSet(
            dim=self.dim,
            bases=[decode_matrix(entries, self.dim) for entries in self.bases],
            method=self.method,
            meta=MubMeta(
                p=self.p,
                m=self.m,
                modulus_poly=self.modulus_poly,
                seed=self.seed,
                tol=self.tol,
            ),
        )

    model_config = {
        "json_schema_extra": {
            "example": {
                "schema_version": "mub/1",
                "dim": 2,
                "p": 2,
                "m": 1,
                "method": "PRIME_FORMULA",
                "modulus_poly": None,
                "seed": None,
                "tol": 1e-8,
                "bases": [
                    [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
                    [[0.7071067811865475, 0.0], [0.7071067811865475, 0.0],
                     [0.7071067811865475, 0.0], [-0.7071067811865475, 0.0]],
                    [[-0.7071067811865475, 0.0], [0.0, -0.7071067811865475],
                     [-0.7071067811865475, 0.0], [0.0, 0.7071067811865475]],
                ],
            }
        }
    }
