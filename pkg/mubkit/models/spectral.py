from pydantic import BaseModel, Field


class SpectralConfig(BaseModel):
    """Parameters of the joint-eigenbasis computation."""

    tol: float = Field(default=1e-10, gt=0, description="Off-diagonal tolerance")
    max_retries: int = Field(
        default=8, ge=1, description="Random combinations tried before giving up"
    )
    rng_seed: int = Field(
        default=0, ge=0, lt=2**64, description="Seed of the coefficient generator"
    )

    model_config = {"frozen": True}
