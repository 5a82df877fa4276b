"""Continuous ideal lattice code: the infinite-level limit of the ladder.

Codewords are rigid lattices of peaks with spacing lambda_v on the vertical
axis (lambda_h horizontal); errors are real displacements. A state is kept
in lattice-frame form (logical amplitudes plus accumulated displacement):
ideal codewords are non-normalizable, but every observable discussed here
is a function of that frame. Decoding bins each displacement to the nearest
lattice point; odd leftover multiples act as logical X / Z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveParameter, NonPositiveSpacing
from .ladder import LogicalAmplitudes
from .planar import LogicalAction, action_from_flips

# Two-sided Gaussian mass allowed outside the truncated bin sum.
TAIL_TOL = 1e-12
CONSTRAINT_TOL = 1e-9

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class GkpCode:
    """Peak spacings of the continuous code.

    With ``strict_constraint`` the spacings must satisfy
    lambda_v * lambda_h = pi (the anti-commutation constraint); disabling it
    allows exploratory rectangular spacings, which the binning math never
    depends on.
    """

    lambda_v: float
    lambda_h: float
    strict_constraint: bool = True

    def __post_init__(self) -> None:
        if self.lambda_v <= 0 or self.lambda_h <= 0:
            raise NonPositiveSpacing(
                f"spacings must be positive, got ({self.lambda_v}, {self.lambda_h})"
            )
        if self.strict_constraint:
            product = self.lambda_v * self.lambda_h
            if abs(product - math.pi) > CONSTRAINT_TOL:
                raise NonPositiveSpacing(
                    f"strict spacings must multiply to pi, got {product!r}"
                )


@dataclass(frozen=True)
class GkpState:
    """Encoded qubit in the lattice frame: logical content plus drift."""

    logical: LogicalAmplitudes
    code: GkpCode
    delta_v: float = 0.0
    delta_h: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.delta_v) and math.isfinite(self.delta_h)):
            raise ValueError("displacements must be finite")


@dataclass(frozen=True)
class GkpDecodeOutcome:
    """Per-axis decomposition delta = multiple*lambda + residual, plus the verdict."""

    residual_v: float
    residual_h: float
    lattice_multiple_v: int
    lattice_multiple_h: int
    logical_action: LogicalAction


def make_gkp(lambda_v: float) -> GkpCode:
    """Square-constraint code: lambda_h is fixed to pi / lambda_v."""
    if lambda_v <= 0:
        raise NonPositiveSpacing(f"spacing must be positive, got {lambda_v}")
    return GkpCode(lambda_v=lambda_v, lambda_h=math.pi / lambda_v, strict_constraint=True)


def encode_gkp(code: GkpCode, amps: LogicalAmplitudes) -> GkpState:
    """Fresh encoded qubit sitting exactly on the lattice."""
    return GkpState(logical=amps, code=code, delta_v=0.0, delta_h=0.0)


def apply_displacement_cv(state: GkpState, dv: float, dh: float) -> GkpState:
    """Accumulate real displacements along both axes."""
    return GkpState(
        logical=state.logical,
        code=state.code,
        delta_v=state.delta_v + dv,
        delta_h=state.delta_h + dh,
    )


def lattice_decompose(x: float, spacing: float) -> tuple[int, float]:
    """Split x into (multiple, residual) with residual in [-spacing/2, spacing/2).

    x = multiple * spacing + residual; the multiple stays exact (no
    catastrophic cancellation) for |x| up to ~1e6 spacings.
    """
    if spacing <= 0:
        raise NonPositiveSpacing(f"spacing must be positive, got {spacing}")
    multiple = math.floor(x / spacing + 0.5)
    residual = x - multiple * spacing
    # Guard the half-open convention against rounding at the bin edges.
    if residual >= spacing / 2:
        multiple += 1
        residual -= spacing
    elif residual < -spacing / 2:
        multiple -= 1
        residual += spacing
    return multiple, residual


def centered_mod(x: float, spacing: float) -> float:
    """Residual of x modulo the lattice, in [-spacing/2, spacing/2)."""
    return lattice_decompose(x, spacing)[1]


def correctable(delta: float, spacing: float) -> bool:
    """True when the displacement is strictly inside the half-spacing window."""
    if spacing <= 0:
        raise NonPositiveSpacing(f"spacing must be positive, got {spacing}")
    return abs(delta) < spacing / 2


def decode_gkp(state: GkpState) -> tuple[GkpState, GkpDecodeOutcome]:
    """Bin both displacements to the lattice and report the leftover action.

    The correction removes the full displacement (residual and lattice
    part); an odd vertical multiple swaps (alpha, beta), an odd horizontal
    multiple negates beta (horizontal applied first, as in the planar code).
    """
    m_v, r_v = lattice_decompose(state.delta_v, state.code.lambda_v)
    m_h, r_h = lattice_decompose(state.delta_h, state.code.lambda_h)
    flip_x, flip_z = m_v % 2 == 1, m_h % 2 == 1
    alpha, beta = state.logical.alpha, state.logical.beta
    if flip_z:
        beta = -beta
    if flip_x:
        alpha, beta = beta, alpha
    corrected = GkpState(
        logical=LogicalAmplitudes(alpha, beta), code=state.code, delta_v=0.0, delta_h=0.0
    )
    outcome = GkpDecodeOutcome(
        residual_v=r_v,
        residual_h=r_h,
        lattice_multiple_v=m_v,
        lattice_multiple_h=m_h,
        logical_action=action_from_flips(flip_x, flip_z),
    )
    return corrected, outcome


def logical_error_prob_analytic(sigma: float, spacing: float) -> float:
    """Probability that Gaussian noise N(0, sigma^2) bins to an odd multiple.

    Sums the Gaussian mass of the intervals [m*spacing - spacing/2,
    m*spacing + spacing/2) over odd m, through the normal CDF, truncating
    once the neglected two-sided tail drops below 1e-12. Nondecreasing in
    sigma, tending to 1/2 as sigma grows.
    """
    if sigma <= 0:
        raise NonPositiveParameter(f"sigma must be positive, got {sigma}")
    if spacing <= 0:
        raise NonPositiveParameter(f"spacing must be positive, got {spacing}")
    scale = 1.0 / (sigma * math.sqrt(2.0))
    total = 0.0
    m = 1
    while True:
        lower = (m - 0.5) * spacing
        upper = (m + 0.5) * spacing
        # Two-sided mass of the +/-m bins, via complementary error functions
        # so the far tail keeps full relative precision.
        total += math.erfc(lower * scale) - math.erfc(upper * scale)
        if math.erfc(upper * scale) < TAIL_TOL:
            return total
        m += 2


def sample_displacement_error(
    sigma_v: float, sigma_h: float, rng: np.random.Generator
) -> tuple[float, float]:
    """Independent Gaussian displacement draws for the two axes."""
    if sigma_v < 0 or sigma_h < 0:
        raise ValueError("standard deviations must be nonnegative")
    return float(rng.normal(0.0, sigma_v)), float(rng.normal(0.0, sigma_h))
