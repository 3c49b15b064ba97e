"""Request and response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

Coordinate = Union[int, float, str]


class PatchData(BaseModel):
    """A triangle fan: center plus ring vertices, counterclockwise.

    Coordinates may be numbers or strings; "p/q" strings carry exact
    rationals.
    """

    z: list[Coordinate] = Field(min_length=2, max_length=2)
    ring: list[list[Coordinate]] = Field(min_length=3)


class VerifyTheorem2Request(BaseModel):
    n_lo: int = 1
    n_hi: int = 4
    mode: Literal["exact", "float", "both"] = "exact"
    grid: int = Field(default=200, ge=6, le=5000)
    seed: int = 0
    workers: Optional[int] = Field(default=None, ge=1)


class PatchCheckRequest(BaseModel):
    patch: PatchData
    n_lo: int = 1
    n_hi: int = 3
    mode: Literal["exact", "float"] = "exact"
    seed: int = 0


class ConstantsRequest(BaseModel):
    n_lo: int = Field(default=0, ge=0)
    n_hi: int = 4
    q: int = Field(default=4, ge=3)
    delta: float = Field(default=0.5, gt=0)
    rho: float = Field(default=1.0, gt=0)
    samples: int = Field(default=10, ge=0)
    seed: int = 0
    workers: Optional[int] = Field(default=None, ge=1)


class ReportResponse(BaseModel):
    exit_code: int
    report: dict
