"""Reproducible Monte Carlo estimation of logical error rates.

Each trial encodes a fixed reference state, draws noise, decodes, and counts
a logical error when the decoder's residual action is nontrivial (for a
ladder: when the recovered codeword is branch-swapped, or the trial fell off
a hard boundary). Per-trial randomness is counter-based: trial i consumes a
fixed-width window of the Philox stream keyed by the master seed, so the
outcome of every trial is a pure function of (master_seed, trial_index) and
results are identical under any execution order, chunking, or thread count.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from numpy.random import Generator, Philox

from .errors import OutOfRangeShift, ShiftSimError
from .gkp import GkpCode, logical_error_prob_analytic
from .ladder import LadderCode, LogicalAmplitudes, RoundingRule, apply_shift, decode, encode
from .planar import LogicalAction, PlanarCode, apply_displacement, decode_planar, encode_planar

# Every trial decodes this encoded state; (1, 0) makes a branch swap visible.
REFERENCE_AMPS = LogicalAmplitudes(1, 0)

_CHUNK_TRIALS = 1 << 16


@dataclass(frozen=True)
class DiscreteUniform:
    """Integer shift drawn uniformly from [-max_shift, max_shift]."""

    max_shift: int

    def __post_init__(self) -> None:
        if self.max_shift < 0:
            raise ValueError("max_shift must be nonnegative")


@dataclass(frozen=True)
class DiscreteStepWalk:
    """Sum of `steps` rounds; each round moves -1 or +1 with probability
    step_prob (split evenly), otherwise stays."""

    step_prob: float
    steps: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.step_prob <= 1.0:
            raise ValueError("step_prob must lie in [0, 1]")
        if self.steps < 0:
            raise ValueError("steps must be nonnegative")


@dataclass(frozen=True)
class GaussianDisplacement:
    """Independent Gaussian displacements on the two continuous axes."""

    sigma_v: float
    sigma_h: float

    def __post_init__(self) -> None:
        if self.sigma_v < 0 or self.sigma_h < 0:
            raise ValueError("sigmas must be nonnegative")


NoiseSpec = Union[DiscreteUniform, DiscreteStepWalk, GaussianDisplacement]
CodeSpec = Union[LadderCode, PlanarCode, GkpCode]


@dataclass(frozen=True)
class TrialPlan:
    """One batch of identically distributed trials."""

    code: CodeSpec
    noise: NoiseSpec
    trials: int
    master_seed: int
    rounding: RoundingRule = RoundingRule.NEAREST

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class SummaryStats:
    """Binomial summary of a trial batch."""

    trials: int
    logical_error_count: int
    rate: float
    std_error: float
    ci95: tuple[float, float]

    @classmethod
    def from_counts(cls, trials: int, errors: int) -> "SummaryStats":
        rate = errors / trials
        std_error = math.sqrt(rate * (1.0 - rate) / trials)
        low = max(0.0, rate - 1.96 * std_error)
        high = min(1.0, rate + 1.96 * std_error)
        return cls(trials, errors, rate, std_error, (low, high))


@dataclass(frozen=True)
class SweepRow:
    """One sweep entry: the plan plus its outcome (stats or an error note)."""

    plan: TrialPlan
    stats: Optional[SummaryStats]
    analytic_rate: Optional[float] = None
    error_message: Optional[str] = None


def code_kind(code: CodeSpec) -> str:
    if isinstance(code, LadderCode):
        return "ladder"
    if isinstance(code, PlanarCode):
        return "planar"
    return "gkp"


def _uniforms_per_trial(plan: TrialPlan) -> int:
    kind = code_kind(plan.code)
    noise = plan.noise
    axes = 2 if kind in ("planar", "gkp") else 1
    if isinstance(noise, GaussianDisplacement):
        if kind != "gkp":
            raise ValueError("Gaussian displacement noise applies to the continuous code")
        return 2
    if kind == "gkp":
        raise ValueError("the continuous code takes Gaussian displacement noise")
    if isinstance(noise, DiscreteUniform):
        return axes
    return axes * noise.steps


def _uniform_block(master_seed: int, start_trial: int, n_trials: int, width: int) -> np.ndarray:
    """Doubles [start*width, (start+n)*width) of the Philox stream, as (n, width)."""
    offset = start_trial * width
    if offset % 4 != 0:
        raise ValueError("chunk starts must align to 4-trial boundaries")
    bit_generator = Philox(key=master_seed)
    if offset:
        bit_generator.advance(offset // 4)  # advance unit = 4 doubles
    if width == 0:
        return np.zeros((n_trials, 0))
    return Generator(bit_generator).random((n_trials, width))


def _discrete_shifts(noise: NoiseSpec, uniforms: np.ndarray, axes: int) -> np.ndarray:
    """Map raw uniforms to integer shifts, one column per axis."""
    n = uniforms.shape[0]
    if isinstance(noise, DiscreteUniform):
        span = 2 * noise.max_shift + 1
        return np.floor(uniforms[:, :axes] * span).astype(np.int64) - noise.max_shift
    shifts = np.zeros((n, axes), dtype=np.int64)
    if noise.steps == 0:
        return shifts
    for axis in range(axes):
        block = uniforms[:, axis * noise.steps : (axis + 1) * noise.steps]
        steps = np.where(block < noise.step_prob / 2, -1, np.where(block < noise.step_prob, 1, 0))
        shifts[:, axis] = steps.sum(axis=1)
    return shifts


def _ladder_shift_error_table(plan: TrialPlan, max_abs_shift: int) -> np.ndarray:
    """Outcome of the real decode path for every reachable shift.

    Indexed by shift + max_abs_shift. Shifts that fall off a hard boundary
    (either the error itself or the correction) count as logical errors.
    """
    table = np.zeros(2 * max_abs_shift + 1, dtype=bool)
    base = encode(plan.code, REFERENCE_AMPS)
    for shift in range(-max_abs_shift, max_abs_shift + 1):
        try:
            result = decode(apply_shift(base, shift), plan.rounding)
        except OutOfRangeShift:
            table[shift + max_abs_shift] = True
            continue
        verdict = result.classification
        recovered = verdict.is_codeword and abs(verdict.codeword.alpha - 1) < 1e-9
        table[shift + max_abs_shift] = not recovered
    return table


def _planar_axis_error_tables(plan: TrialPlan, max_abs_shift: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-axis flip tables from the real planar decoder (axes act independently)."""
    vertical = np.zeros(2 * max_abs_shift + 1, dtype=bool)
    horizontal = np.zeros(2 * max_abs_shift + 1, dtype=bool)
    base = encode_planar(plan.code, REFERENCE_AMPS)
    for shift in range(-max_abs_shift, max_abs_shift + 1):
        _, action_v = decode_planar(apply_displacement(base, shift, 0), plan.rounding)
        _, action_h = decode_planar(apply_displacement(base, 0, shift), plan.rounding)
        vertical[shift + max_abs_shift] = action_v is not LogicalAction.IDENTITY
        horizontal[shift + max_abs_shift] = action_h is not LogicalAction.IDENTITY
    return vertical, horizontal


def _gaussian_displacements(noise: GaussianDisplacement, uniforms: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Box-Muller pairs scaled per axis; exact zeros when a sigma is zero."""
    u0 = np.maximum(uniforms[:, 0], np.finfo(np.float64).tiny)
    u1 = uniforms[:, 1]
    radius = np.sqrt(-2.0 * np.log(u0))
    dv = noise.sigma_v * radius * np.cos(2.0 * np.pi * u1)
    dh = noise.sigma_h * radius * np.sin(2.0 * np.pi * u1)
    return dv, dh


def _lattice_multiples(displacements: np.ndarray, spacing: float) -> np.ndarray:
    """Vectorized twin of gkp.lattice_decompose (multiples only)."""
    multiples = np.floor(displacements / spacing + 0.5).astype(np.int64)
    residuals = displacements - multiples * spacing
    multiples += residuals >= spacing / 2
    multiples -= residuals < -spacing / 2
    return multiples


def _chunk_error_count(plan: TrialPlan, start: int, n: int, width: int, tables) -> int:
    uniforms = _uniform_block(plan.master_seed, start, n, width)
    kind = code_kind(plan.code)
    if kind == "gkp":
        dv, dh = _gaussian_displacements(plan.noise, uniforms)
        flips_v = _lattice_multiples(dv, plan.code.lambda_v) % 2 == 1
        flips_h = _lattice_multiples(dh, plan.code.lambda_h) % 2 == 1
        return int(np.count_nonzero(flips_v | flips_h))
    max_abs = tables[0].shape[0] // 2
    if kind == "ladder":
        shifts = _discrete_shifts(plan.noise, uniforms, axes=1)
        return int(np.count_nonzero(tables[0][shifts[:, 0] + max_abs]))
    shifts = _discrete_shifts(plan.noise, uniforms, axes=2)
    flips = tables[0][shifts[:, 0] + max_abs] | tables[1][shifts[:, 1] + max_abs]
    return int(np.count_nonzero(flips))


def run_trials(plan: TrialPlan, chunk_trials: int = _CHUNK_TRIALS) -> SummaryStats:
    """Estimate the logical error rate for one plan.

    ``chunk_trials`` only bounds working memory: any chunking (rounded to
    4-trial alignment) produces bit-identical counts.
    """
    width = _uniforms_per_trial(plan)
    chunk = max(4, (chunk_trials // 4) * 4)
    kind = code_kind(plan.code)
    tables = ()
    if kind != "gkp":
        noise = plan.noise
        max_abs = noise.max_shift if isinstance(noise, DiscreteUniform) else noise.steps
        if kind == "ladder":
            tables = (_ladder_shift_error_table(plan, max_abs),)
        else:
            tables = _planar_axis_error_tables(plan, max_abs)
    errors = 0
    start = 0
    while start < plan.trials:
        n = min(chunk, plan.trials - start)
        errors += _chunk_error_count(plan, start, n, width, tables)
        start += n
    return SummaryStats.from_counts(plan.trials, errors)


def analytic_rate_for(plan: TrialPlan) -> Optional[float]:
    """Closed-form rate for Gaussian-noise continuous plans, None otherwise."""
    if code_kind(plan.code) != "gkp" or not isinstance(plan.noise, GaussianDisplacement):
        return None
    p_v = (
        logical_error_prob_analytic(plan.noise.sigma_v, plan.code.lambda_v)
        if plan.noise.sigma_v > 0
        else 0.0
    )
    p_h = (
        logical_error_prob_analytic(plan.noise.sigma_h, plan.code.lambda_h)
        if plan.noise.sigma_h > 0
        else 0.0
    )
    return 1.0 - (1.0 - p_v) * (1.0 - p_h)


def sweep(plans: list[TrialPlan]) -> list[SweepRow]:
    """Run plans in order; failures are reported in-row and do not stop the sweep."""
    if not plans:
        raise ValueError("sweep requires at least one plan")
    rows: list[SweepRow] = []
    for plan in plans:
        try:
            stats = run_trials(plan)
            rows.append(SweepRow(plan, stats, analytic_rate_for(plan)))
        except (ShiftSimError, ValueError) as exc:
            rows.append(SweepRow(plan, None, None, str(exc)))
    return rows


CSV_COLUMNS = [
    "code_kind",
    "levels_v",
    "spacing_v",
    "levels_h",
    "spacing_h",
    "boundary",
    "lambda_v",
    "lambda_h",
    "rounding",
    "noise_kind",
    "max_shift",
    "step_prob",
    "steps",
    "sigma_v",
    "sigma_h",
    "trials",
    "errors",
    "rate",
    "std_error",
    "ci_low",
    "ci_high",
    "analytic_rate",
    "seed",
    "error_message",
]


def _row_record(row: SweepRow) -> dict:
    plan, code, noise = row.plan, row.plan.code, row.plan.noise
    record: dict = {name: None for name in CSV_COLUMNS}
    record["code_kind"] = code_kind(code)
    if isinstance(code, LadderCode):
        record["levels_v"] = code.num_levels
        record["spacing_v"] = code.spacing
        record["boundary"] = code.boundary.value
    elif isinstance(code, PlanarCode):
        record["levels_v"] = code.vertical.num_levels
        record["spacing_v"] = code.vertical.spacing
        record["levels_h"] = code.horizontal.num_levels
        record["spacing_h"] = code.horizontal.spacing
        record["boundary"] = code.vertical.boundary.value
    else:
        record["lambda_v"] = code.lambda_v
        record["lambda_h"] = code.lambda_h
    record["rounding"] = plan.rounding.value
    record["noise_kind"] = type(noise).__name__
    if isinstance(noise, DiscreteUniform):
        record["max_shift"] = noise.max_shift
    elif isinstance(noise, DiscreteStepWalk):
        record["step_prob"] = noise.step_prob
        record["steps"] = noise.steps
    else:
        record["sigma_v"] = noise.sigma_v
        record["sigma_h"] = noise.sigma_h
    record["trials"] = plan.trials
    record["seed"] = plan.master_seed
    if row.stats is not None:
        record["errors"] = row.stats.logical_error_count
        record["rate"] = row.stats.rate
        record["std_error"] = row.stats.std_error
        record["ci_low"] = row.stats.ci95[0]
        record["ci_high"] = row.stats.ci95[1]
    record["analytic_rate"] = row.analytic_rate
    record["error_message"] = row.error_message
    return record


def sweep_to_csv(rows: list[SweepRow]) -> str:
    """RFC-4180-style CSV: LF line endings, '.' decimals, header always present."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        record = _row_record(row)
        writer.writerow(
            ["" if record[c] is None else repr(record[c]) if isinstance(record[c], float) else record[c] for c in CSV_COLUMNS]
        )
    return buffer.getvalue()


def sweep_to_json(rows: list[SweepRow]) -> str:
    """JSON array mirroring the CSV fields, one object per row."""
    return json.dumps([_row_record(row) for row in rows], indent=2) + "\n"
