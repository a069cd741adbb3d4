"""Request and response models for the layout service."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field


class LayoutRequest(BaseModel):
    """One layout computation: an instance document plus a mode.

    The instance travels as a raw document and is validated by the exact
    parser, so coordinate strings keep full precision and errors carry
    path-addressed messages. Mode "check" requires the instance to carry a
    full side assignment.
    """

    instance: dict[str, Any]
    mode: Literal["heuristic", "exact", "check"] = "heuristic"
    seed: int = 0


class LayoutResponse(BaseModel):
    feasible: bool
    drawing: dict[str, Any]
    elapsedMs: float = Field(ge=0)
    warnings: list[str]


class HealthResponse(BaseModel):
    status: Literal["ok"]
    version: str
