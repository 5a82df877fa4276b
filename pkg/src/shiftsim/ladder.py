"""Finite N-level shift codes.

A qubit is stored in a ladder of N levels by placing the two codewords on
interleaved lattices: |0_L> lives on even multiples of the spacing k and
|1_L> on odd multiples. Shift errors move amplitude up or down the ladder;
the syndrome (level mod k) reveals the displacement class without revealing
which codeword carries the amplitude, and the binning decoder maps the
syndrome back to the most likely shift.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional

import numpy as np

from .errors import InvalidGeometry, NotInCodeSpace, OutOfRangeShift

# Absolute tolerance for norm / amplitude comparisons (double precision
# leaves ample headroom for ladders up to ~48 levels).
AMP_TOL = 1e-12
# Entries below this magnitude are dropped from the sparse amplitude map.
PRUNE_TOL = 1e-15


class Boundary(enum.Enum):
    """Edge behaviour of the ladder.

    CYCLIC wraps shifts modulo N (requires 2k | N so that a k-shift maps each
    codeword exactly onto the other); HARD raises when amplitude would be
    pushed past either end.
    """

    CYCLIC = "cyclic"
    HARD = "hard"


class RoundingRule(enum.Enum):
    """How the binning decoder resolves a nonzero syndrome.

    PAPER_LITERAL follows the published pseudocode line by line, which for
    odd k rounds the midpoint residue a = ceil(k/2) downward even though the
    upper lattice point is strictly nearer. NEAREST always picks the closest
    multiple of k, breaking exact ties (a = k/2, even k) downward.
    """

    PAPER_LITERAL = "paper"
    NEAREST = "nearest"


@dataclass(frozen=True)
class LogicalAmplitudes:
    """Normalized qubit amplitudes (alpha, beta)."""

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        norm_sq = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm_sq - 1.0) > AMP_TOL:
            raise ValueError(f"amplitudes not normalized: |a|^2+|b|^2 = {norm_sq!r}")

    @classmethod
    def normalized(cls, alpha: complex, beta: complex) -> "LogicalAmplitudes":
        """Rescale an arbitrary nonzero pair onto the unit sphere."""
        norm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(alpha / norm, beta / norm)


@dataclass(frozen=True)
class LadderCode:
    """An N-level ladder storing one qubit with peak spacing k.

    Attributes:
        num_levels: total number of levels N. Needs N > k so both codewords
            own at least one peak (the minimal teaching codes put |0_L> and
            |1_L> at the two extremities with all padding between them).
        spacing: lattice step k between adjacent codeword peaks.
        boundary: CYCLIC (mod-N shifts, needs 2k | N) or HARD (finite ends).
    """

    num_levels: int
    spacing: int
    boundary: Boundary = Boundary.HARD

    def __post_init__(self) -> None:
        n, k = self.num_levels, self.spacing
        if k < 1:
            raise InvalidGeometry(f"spacing must be >= 1, got {k}")
        if n < k + 1:
            raise InvalidGeometry(
                f"{n} levels leave no peak for the second codeword at spacing {k}"
            )
        if self.boundary is Boundary.CYCLIC and n % (2 * k) != 0:
            raise InvalidGeometry(
                f"cyclic ladder needs num_levels divisible by 2*spacing, got {n} mod {2 * k} != 0"
            )

    @property
    def support_zero(self) -> tuple[int, ...]:
        """Levels carrying |0_L>: even multiples of the spacing."""
        return tuple(range(0, self.num_levels, 2 * self.spacing))

    @property
    def support_one(self) -> tuple[int, ...]:
        """Levels carrying |1_L>: odd multiples of the spacing."""
        return tuple(range(self.spacing, self.num_levels, 2 * self.spacing))


@dataclass(frozen=True)
class LadderState:
    """Sparse normalized amplitude map over ladder levels.

    Zero entries are pruned on construction so equal states share one
    canonical form; the squared amplitudes must sum to 1 within AMP_TOL.
    """

    amplitudes: Mapping[int, complex]
    code: LadderCode

    def __post_init__(self) -> None:
        cleaned: dict[int, complex] = {}
        for level, amp in sorted(self.amplitudes.items()):
            amp = complex(amp)
            if not 0 <= level < self.code.num_levels:
                raise ValueError(f"level {level} outside [0, {self.code.num_levels})")
            if abs(amp) >= PRUNE_TOL:
                cleaned[int(level)] = amp
        norm_sq = sum(abs(a) ** 2 for a in cleaned.values())
        if abs(norm_sq - 1.0) > AMP_TOL:
            raise ValueError(f"state not normalized: sum |amp|^2 = {norm_sq!r}")
        object.__setattr__(self, "amplitudes", MappingProxyType(cleaned))

    def amplitude(self, level: int) -> complex:
        return self.amplitudes.get(level, 0j)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.amplitudes.keys())


@dataclass(frozen=True)
class Syndrome:
    """Measured displacement class: occupied level mod spacing."""

    value: int


@dataclass(frozen=True)
class Classification:
    """Verdict of the omniscient code-space check.

    ``codeword`` holds the recovered logical amplitudes when the state is
    exactly alpha|0_L> + beta|1_L> (global phase fixed so the first nonzero
    branch amplitude is real nonnegative); None marks a non-codeword.
    """

    codeword: Optional[LogicalAmplitudes]

    @property
    def is_codeword(self) -> bool:
        return self.codeword is not None


NON_CODEWORD = Classification(None)


@dataclass(frozen=True)
class DecodeResult:
    """Outcome of one syndrome-measure-and-correct round."""

    corrected_state: LadderState
    measured_syndrome: Syndrome
    applied_correction: int
    classification: Classification


def make_code(
    num_levels: int, spacing: int, boundary: Boundary = Boundary.HARD
) -> LadderCode:
    """Build a ladder code, rejecting geometries that cannot hold both codewords."""
    return LadderCode(num_levels=num_levels, spacing=spacing, boundary=boundary)


def encode(code: LadderCode, amps: LogicalAmplitudes) -> LadderState:
    """Spread (alpha, beta) uniformly over the even / odd peak lattices."""
    amplitudes: dict[int, complex] = {}
    zero, one = code.support_zero, code.support_one
    for level in zero:
        amplitudes[level] = amps.alpha / math.sqrt(len(zero))
    for level in one:
        amplitudes[level] = amps.beta / math.sqrt(len(one))
    return LadderState(amplitudes=amplitudes, code=code)


def apply_shift(state: LadderState, amount: int) -> LadderState:
    """Shift every occupied level by ``amount``.

    Cyclic ladders wrap modulo N; hard ladders raise OutOfRangeShift if any
    amplitude would leave [0, N). Norm is preserved exactly.
    """
    if amount == 0:
        return state
    n = state.code.num_levels
    moved: dict[int, complex] = {}
    for level, amp in state.amplitudes.items():
        target = level + amount
        if state.code.boundary is Boundary.CYCLIC:
            target %= n
        elif not 0 <= target < n:
            raise OutOfRangeShift(
                f"shift {amount:+d} pushes level {level} outside the {n}-level ladder"
            )
        moved[target] = amp
    return LadderState(amplitudes=moved, code=state.code)


def measure_syndrome(
    state: LadderState, rng: Optional[np.random.Generator] = None
) -> tuple[Syndrome, LadderState]:
    """Born-rule measurement of (occupied level mod k).

    Returns the sampled syndrome and the renormalized projection onto that
    residue class. When every occupied level shares one residue the outcome
    is deterministic, no randomness is consumed, and the state is returned
    untouched.
    """
    k = state.code.spacing
    weights: dict[int, float] = {}
    for level, amp in state.amplitudes.items():
        weights[level % k] = weights.get(level % k, 0.0) + abs(amp) ** 2
    residues = sorted(weights)
    if len(residues) == 1:
        return Syndrome(residues[0]), state
    if rng is None:
        raise ValueError("state mixes residue classes; a random stream is required")
    draw = rng.random()
    cumulative = 0.0
    chosen = residues[-1]
    for residue in residues:
        cumulative += weights[residue]
        if draw < cumulative:
            chosen = residue
            break
    kept = {l: a for l, a in state.amplitudes.items() if l % k == chosen}
    norm = math.sqrt(sum(abs(a) ** 2 for a in kept.values()))
    post = LadderState(
        amplitudes={l: a / norm for l, a in kept.items()}, code=state.code
    )
    return Syndrome(chosen), post


def measure_logical(
    state: LadderState, rng: Optional[np.random.Generator] = None
) -> tuple[int, LadderState]:
    """Ask "is the state |0_L> or |1_L>?" and collapse accordingly.

    Returns bit 0 with probability |alpha|^2 and 1 with |beta|^2; the post
    state is the renormalized projection onto the measured codeword, so
    repeating the measurement returns the same bit with certainty.

    Raises:
        NotInCodeSpace: if the state is not exactly in the code space.
    """
    verdict = classify(state)
    if not verdict.is_codeword:
        raise NotInCodeSpace("logical readout requires a code-space state")
    zero_set = set(state.code.support_zero)
    p_zero = sum(
        abs(a) ** 2 for l, a in state.amplitudes.items() if l in zero_set
    )
    if p_zero >= 1.0 - AMP_TOL:
        bit = 0
    elif p_zero <= AMP_TOL:
        bit = 1
    else:
        if rng is None:
            raise ValueError("state is a superposition; a random stream is required")
        bit = 0 if rng.random() < p_zero else 1
    branch = zero_set if bit == 0 else set(state.code.support_one)
    kept = {l: a for l, a in state.amplitudes.items() if l in branch}
    norm = math.sqrt(sum(abs(a) ** 2 for a in kept.values()))
    post = LadderState(
        amplitudes={l: a / norm for l, a in kept.items()}, code=state.code
    )
    return bit, post


def binning_decode(
    level_or_syndrome: int, spacing: int, rule: RoundingRule = RoundingRule.NEAREST
) -> int:
    """Signed shift that moves the input onto a multiple of ``spacing``.

    Args:
        level_or_syndrome: nonnegative level index or syndrome value; only
            its residue mod ``spacing`` matters.
        spacing: lattice step k >= 1.
        rule: PAPER_LITERAL executes the published pseudocode exactly;
            NEAREST returns the signed distance to the closest multiple,
            rounding exact ties (even k) downward.

    Returns:
        The correction to add to the level. Always satisfies
        correction == -input (mod spacing).
    """
    if spacing < 1:
        raise ValueError(f"spacing must be >= 1, got {spacing}")
    if level_or_syndrome < 0:
        raise ValueError("level must be nonnegative")
    a = level_or_syndrome % spacing
    if a == 0:
        return 0
    if rule is RoundingRule.PAPER_LITERAL:
        # Pseudocode: l -= a; then l += k only when a > ceil(k/2).
        return -a + (spacing if a > math.ceil(spacing / 2) else 0)
    return -a if a <= spacing // 2 else spacing - a


def decode(
    state: LadderState,
    rule: RoundingRule = RoundingRule.NEAREST,
    rng: Optional[np.random.Generator] = None,
) -> DecodeResult:
    """Measure the syndrome, bin it to a correction, apply, classify.

    The decoder sees only the syndrome: logical content is never read. Under
    a hard boundary the correction itself may fall off the ladder, in which
    case OutOfRangeShift propagates.
    """
    syndrome, post = measure_syndrome(state, rng)
    correction = binning_decode(syndrome.value, state.code.spacing, rule)
    corrected = apply_shift(post, correction)
    return DecodeResult(
        corrected_state=corrected,
        measured_syndrome=syndrome,
        applied_correction=correction,
        classification=classify(corrected),
    )


def classify(state: LadderState) -> Classification:
    """Omniscient check: is the state exactly alpha|0_L> + beta|1_L>?

    Requires the support to sit inside the codeword lattices with each
    branch internally uniform (within AMP_TOL). Recovered amplitudes are
    reported with the global phase fixed so the first nonzero branch
    amplitude is real nonnegative.
    """
    code = state.code
    zero, one = code.support_zero, code.support_one
    allowed = set(zero) | set(one)
    if any(level not in allowed for level in state.amplitudes):
        return NON_CODEWORD

    def branch_amplitude(support: tuple[int, ...]) -> Optional[complex]:
        values = [state.amplitude(level) for level in support]
        mean = sum(values) / len(values)
        if any(abs(v - mean) > AMP_TOL for v in values):
            return None
        return mean

    mean_zero = branch_amplitude(zero)
    if mean_zero is None:
        return NON_CODEWORD
    mean_one = branch_amplitude(one)
    if mean_one is None:
        return NON_CODEWORD
    alpha = mean_zero * math.sqrt(len(zero))
    beta = mean_one * math.sqrt(len(one))
    norm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
    alpha, beta = alpha / norm, beta / norm
    reference = alpha if abs(alpha) > AMP_TOL else beta
    phase = reference / abs(reference)
    return Classification(
        LogicalAmplitudes(alpha * phase.conjugate(), beta * phase.conjugate())
    )


def correctable_radius(code: LadderCode) -> int:
    """Largest r such that every shift |a| <= r decodes back to the original."""
    return (code.spacing - 1) // 2


def candidate_errors(syndrome: Syndrome, code: LadderCode) -> list[int]:
    """All non-codeword levels consistent with the syndrome, ascending.

    Several distinct error positions map to one syndrome value; this is the
    ambiguity the decoder resolves by picking the most likely shift.
    """
    if not 0 <= syndrome.value < code.spacing:
        raise ValueError(f"syndrome {syndrome.value} outside [0, {code.spacing})")
    codewords = set(code.support_zero) | set(code.support_one)
    return [
        level
        for level in range(code.num_levels)
        if level % code.spacing == syndrome.value and level not in codewords
    ]


def amplitude_distance(first: LadderState, second: LadderState) -> float:
    """Max absolute amplitude difference over the union of supports."""
    levels = set(first.amplitudes) | set(second.amplitudes)
    if not levels:
        return 0.0
    return max(abs(first.amplitude(l) - second.amplitude(l)) for l in levels)
