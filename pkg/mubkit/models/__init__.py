"""Pydantic models shared by the services and the command line."""

from mubkit.models.family import FamilyReport, PairDeterminant, SymmetricFamily
from mubkit.models.mub_file import SCHEMA_VERSION, MubFileV1
from mubkit.models.mub_set import MubMeta, MubSet
from mubkit.models.report import CheckRecord, VerifyReport
from mubkit.models.spectral import SpectralConfig

__all__ = [
    "CheckRecord",
    "FamilyReport",
    "MubFileV1",
    "MubMeta",
    "MubSet",
    "PairDeterminant",
    "SCHEMA_VERSION",
    "SpectralConfig",
    "SymmetricFamily",
    "VerifyReport",
]
