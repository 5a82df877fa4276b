"""Pydantic request / response models for the playground protocol.

Complex amplitudes travel as [re, im] pairs. Reals are serialized with
Python's shortest round-trip decimal form, which preserves the full double
(no precision is lost on the wire).
"""

from __future__ import annotations

import math
from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

from ..errors import InvalidGeometry
from ..gkp import make_gkp
from ..ladder import Boundary, LogicalAmplitudes, make_code
from ..planar import PlanarCode

# Amplitude pairs within this distance of unit norm are silently rescaled;
# anything further off is rejected as a client mistake.
NORMALIZATION_SLACK = 1e-6


class LadderConfig(BaseModel):
    kind: Literal["ladder"] = "ladder"
    num_levels: int
    spacing: int
    boundary: Literal["cyclic", "hard"] = "hard"
    alpha: tuple[float, float] = (1.0, 0.0)
    beta: tuple[float, float] = (0.0, 0.0)


class PlanarConfig(BaseModel):
    kind: Literal["planar"] = "planar"
    v_levels: int
    v_spacing: int
    h_levels: int
    h_spacing: int
    boundary: Literal["cyclic", "hard"] = "cyclic"
    alpha: tuple[float, float] = (1.0, 0.0)
    beta: tuple[float, float] = (0.0, 0.0)


class GkpConfig(BaseModel):
    kind: Literal["gkp"] = "gkp"
    lambda_v: float
    alpha: tuple[float, float] = (1.0, 0.0)
    beta: tuple[float, float] = (0.0, 0.0)


CodeConfig = Union[LadderConfig, PlanarConfig, GkpConfig]


class CreateSessionRequest(BaseModel):
    config: CodeConfig = Field(discriminator="kind")
    seed: int = 0
    teacher_mode: bool = False


class StepRequest(BaseModel):
    session_id: str
    action: str
    payload: dict = Field(default_factory=dict)


class ErrorInfo(BaseModel):
    code: str
    message: str


class SessionEnvelope(BaseModel):
    """Exactly one of ``payload`` / ``error`` is set in any response."""

    protocol_version: str
    session_id: Optional[str] = None
    action: str
    payload: Optional[dict] = None
    narration: Optional[str] = None
    diagram: Optional[dict] = None
    teacher_view: Optional[dict] = None
    error: Optional[ErrorInfo] = None


def resolve_amplitudes(alpha: tuple[float, float], beta: tuple[float, float]) -> LogicalAmplitudes:
    """Accept near-normalized pairs (rescaling within the slack), reject the rest."""
    a = complex(alpha[0], alpha[1])
    b = complex(beta[0], beta[1])
    norm_sq = abs(a) ** 2 + abs(b) ** 2
    if norm_sq == 0.0:
        raise InvalidGeometry("amplitudes must not both be zero")
    if abs(norm_sq - 1.0) > NORMALIZATION_SLACK:
        raise InvalidGeometry(
            f"amplitudes too far from normalized: |a|^2+|b|^2 = {norm_sq!r}"
        )
    scale = math.sqrt(norm_sq)
    return LogicalAmplitudes(a / scale, b / scale)


def build_code(config: CodeConfig):
    """Turn a protocol config into a domain code object."""
    if isinstance(config, LadderConfig):
        return make_code(config.num_levels, config.spacing, Boundary(config.boundary))
    if isinstance(config, PlanarConfig):
        boundary = Boundary(config.boundary)
        return PlanarCode(
            vertical=make_code(config.v_levels, config.v_spacing, boundary),
            horizontal=make_code(config.h_levels, config.h_spacing, boundary),
        )
    return make_gkp(config.lambda_v)
