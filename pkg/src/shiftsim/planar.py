"""Two-axis shift codes and the clock/shift operator oracle.

Bit-flip style errors displace the encoded qubit vertically, phase errors
horizontally; each axis carries its own peak spacing and is decoded
independently with the same binning rule as the 1D ladder. A dense
matrix oracle over the dimension-d clock and shift operators backs the
anti-commutation constraint the two spacings must satisfy.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLarge, InvalidGeometry
from .ladder import LadderCode, LogicalAmplitudes, RoundingRule, binning_decode

WEYL_MAX_DIM = 64
WEYL_TOL = 1e-10


class LogicalAction(enum.Enum):
    """Residual operation left on the encoded qubit after decoding."""

    IDENTITY = "I"
    X = "X"
    Z = "Z"
    XZ = "XZ"


def action_from_flips(flip_x: bool, flip_z: bool) -> LogicalAction:
    if flip_x and flip_z:
        return LogicalAction.XZ
    if flip_x:
        return LogicalAction.X
    if flip_z:
        return LogicalAction.Z
    return LogicalAction.IDENTITY


@dataclass(frozen=True)
class PlanarCode:
    """Product of two ladders: vertical (X axis) and horizontal (Z axis)."""

    vertical: LadderCode
    horizontal: LadderCode


@dataclass(frozen=True)
class PlanarState:
    """Encoded qubit in the displacement frame.

    Rather than a full 2D amplitude grid, the state is the logical content
    plus the integer shifts accumulated on each axis; every observable the
    decoder can reach is a function of this frame.
    """

    logical: LogicalAmplitudes
    code: PlanarCode
    v_shift: int = 0
    h_shift: int = 0


@dataclass(frozen=True)
class WeylPair:
    """Powers (a, b) of the dimension-d shift and phase operators."""

    dimension: int
    shift_power: int
    phase_power: int

    def __post_init__(self) -> None:
        if self.dimension < 2:
            raise ValueError(f"dimension must be >= 2, got {self.dimension}")
        if not 1 <= self.shift_power < self.dimension:
            raise ValueError("shift power must lie in [1, dimension)")
        if not 1 <= self.phase_power < self.dimension:
            raise ValueError("phase power must lie in [1, dimension)")


def encode_planar(code: PlanarCode, amps: LogicalAmplitudes) -> PlanarState:
    """Fresh encoded qubit, centered on the code space of both axes."""
    return PlanarState(logical=amps, code=code, v_shift=0, h_shift=0)


def apply_displacement(state: PlanarState, dv: int, dh: int) -> PlanarState:
    """Accumulate a vertical (X-type) and horizontal (Z-type) shift."""
    return PlanarState(
        logical=state.logical,
        code=state.code,
        v_shift=state.v_shift + dv,
        h_shift=state.h_shift + dh,
    )


def lattice_multiple(shift: int, spacing: int, rule: RoundingRule) -> int:
    """Lattice steps left after binning: shift + correction, over the spacing."""
    correction = binning_decode(shift % spacing, spacing, rule)
    return (shift + correction) // spacing


def decode_planar(
    state: PlanarState, rule: RoundingRule = RoundingRule.NEAREST
) -> tuple[PlanarState, LogicalAction]:
    """Bin each axis independently and report the residual logical action.

    The net shift on an axis after correction is an exact lattice multiple;
    an odd vertical multiple swaps (alpha, beta) and an odd horizontal
    multiple negates beta. When both act, the horizontal (Z) action is
    applied first; the alternative order differs only by a global phase.
    """
    m_v = lattice_multiple(state.v_shift, state.code.vertical.spacing, rule)
    m_h = lattice_multiple(state.h_shift, state.code.horizontal.spacing, rule)
    flip_x, flip_z = m_v % 2 == 1, m_h % 2 == 1
    alpha, beta = state.logical.alpha, state.logical.beta
    if flip_z:
        beta = -beta
    if flip_x:
        alpha, beta = beta, alpha
    corrected = PlanarState(
        logical=LogicalAmplitudes(alpha, beta), code=state.code, v_shift=0, h_shift=0
    )
    return corrected, action_from_flips(flip_x, flip_z)


def build_weyl_matrices(dimension: int) -> tuple[np.ndarray, np.ndarray]:
    """Dense clock/shift pair: X|j> = |j+1 mod d>, Z|j> = w^j |j>, w = e^(2*pi*i/d)."""
    if dimension < 2:
        raise ValueError(f"dimension must be >= 2, got {dimension}")
    if dimension > WEYL_MAX_DIM:
        raise DimensionTooLarge(
            f"dense operator oracle capped at {WEYL_MAX_DIM}, got {dimension}"
        )
    shift = np.zeros((dimension, dimension), dtype=complex)
    for j in range(dimension):
        shift[(j + 1) % dimension, j] = 1.0
    omega = np.exp(2j * np.pi / dimension)
    phase = np.diag(omega ** np.arange(dimension))
    return shift, phase


def anticommutes(pair: WeylPair) -> bool:
    """Matrix check that X^a Z^b + Z^b X^a vanishes.

    Equivalent (and tested against) the arithmetic criterion
    a*b = d/2 (mod d) with d even.
    """
    shift, phase = build_weyl_matrices(pair.dimension)
    xa = np.linalg.matrix_power(shift, pair.shift_power)
    zb = np.linalg.matrix_power(phase, pair.phase_power)
    residual = xa @ zb + zb @ xa
    return float(np.max(np.abs(residual))) <= WEYL_TOL


def verify_logical_z_action(dimension: int, k_v: int, k_h: int) -> bool:
    """Check Z^k_h fixes |0_L> and negates |1_L> on the multi-peak codewords.

    The codewords live in dimension d = 2*k_v*k_h: |0_L> is the uniform
    superposition of even multiples of k_v and |1_L> of odd multiples.

    Raises:
        InvalidGeometry: if the dimension does not equal 2*k_v*k_h.
    """
    if dimension != 2 * k_v * k_h:
        raise InvalidGeometry(
            f"dimension {dimension} != 2*{k_v}*{k_h}; the codeword lattices do not tile"
        )
    _, phase = build_weyl_matrices(dimension)
    z_kh = np.linalg.matrix_power(phase, k_h)
    zero = np.zeros(dimension, dtype=complex)
    one = np.zeros(dimension, dtype=complex)
    zero[np.arange(0, dimension, 2 * k_v)] = 1.0
    one[np.arange(k_v, dimension, 2 * k_v)] = 1.0
    zero /= np.linalg.norm(zero)
    one /= np.linalg.norm(one)
    fixes_zero = float(np.max(np.abs(z_kh @ zero - zero))) <= WEYL_TOL
    negates_one = float(np.max(np.abs(z_kh @ one + one))) <= WEYL_TOL
    return fixes_zero and negates_one
