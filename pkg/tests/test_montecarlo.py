from __future__ import annotations

import csv
import io
import json
import math

import pytest

from shiftsim import Boundary, make_code
from shiftsim.gkp import SQRT_PI, apply_displacement_cv, decode_gkp, encode_gkp, make_gkp
from shiftsim.montecarlo import (
    CSV_COLUMNS,
    DiscreteStepWalk,
    DiscreteUniform,
    GaussianDisplacement,
    REFERENCE_AMPS,
    SummaryStats,
    TrialPlan,
    _gaussian_displacements,
    _uniform_block,
    analytic_rate_for,
    run_trials,
    sweep,
    sweep_to_csv,
    sweep_to_json,
)
from shiftsim.planar import LogicalAction, PlanarCode

from oracles import predicted_logical_flip


def gkp_plan(sigma_v: float, sigma_h: float = 0.0, trials: int = 20_000, seed: int = 99) -> TrialPlan:
    return TrialPlan(
        code=make_gkp(SQRT_PI),
        noise=GaussianDisplacement(sigma_v, sigma_h),
        trials=trials,
        master_seed=seed,
    )


def ladder_plan(max_shift: int, spacing: int = 3, levels: int = 12, seed: int = 7,
                trials: int = 20_000, boundary: Boundary = Boundary.CYCLIC) -> TrialPlan:
    return TrialPlan(
        code=make_code(levels, spacing, boundary),
        noise=DiscreteUniform(max_shift),
        trials=trials,
        master_seed=seed,
    )


# ------------------------------------------------------------- exact cases


def test_zero_noise_gives_rate_zero_exactly():
    stats = run_trials(gkp_plan(0.0, 0.0, trials=5000))
    assert stats.logical_error_count == 0
    assert stats.rate == 0.0


def test_shifts_within_radius_never_error():
    stats = run_trials(ladder_plan(max_shift=1))
    assert stats.rate == 0.0


def test_hard_boundary_overflow_counts_as_error():
    # Reference support {0, 6} on a 10-level hard ladder, shifts -3..+3:
    # negatives fall off the bottom (error), +1 corrects back, +2 decodes to
    # a branch swap, +3 is a clean logical flip -> 5 errors out of 7.
    plan = ladder_plan(max_shift=3, levels=10, boundary=Boundary.HARD, trials=50_000)
    stats = run_trials(plan)
    expected = 5 / 7
    assert abs(stats.rate - expected) <= 4 * math.sqrt(expected * (1 - expected) / plan.trials)


# ------------------------------------------------- agreement with analytic


def test_gkp_rate_tracks_analytic_vertical_noise():
    for ratio in (0.2, 0.4):
        plan = gkp_plan(ratio * SQRT_PI, trials=100_000, seed=31)
        stats = run_trials(plan)
        analytic = analytic_rate_for(plan)
        guard = max(stats.std_error, math.sqrt(analytic * (1 - analytic) / plan.trials))
        assert abs(stats.rate - analytic) <= 4 * guard


def test_gkp_rate_tracks_analytic_both_axes():
    plan = gkp_plan(0.3 * SQRT_PI, 0.3 * SQRT_PI, trials=100_000, seed=5)
    stats = run_trials(plan)
    analytic = analytic_rate_for(plan)
    assert abs(stats.rate - analytic) <= 4 * stats.std_error


def test_analytic_coverage_over_independent_seeds():
    # 95% CI should cover the analytic value in at least 16 of 20 seeds.
    for ratio in (0.2, 0.4):
        covered = 0
        for seed in range(20):
            plan = gkp_plan(ratio * SQRT_PI, trials=10_000, seed=seed)
            stats = run_trials(plan)
            analytic = analytic_rate_for(plan)
            low, high = stats.ci95
            covered += low <= analytic <= high
        assert covered >= 16


def test_vector_path_matches_scalar_decode():
    plan = gkp_plan(0.4 * SQRT_PI, 0.2 * SQRT_PI, trials=400)
    uniforms = _uniform_block(plan.master_seed, 0, plan.trials, 2)
    dv, dh = _gaussian_displacements(plan.noise, uniforms)
    base = encode_gkp(plan.code, REFERENCE_AMPS)
    scalar_errors = 0
    for i in range(plan.trials):
        _, outcome = decode_gkp(apply_displacement_cv(base, float(dv[i]), float(dh[i])))
        scalar_errors += outcome.logical_action is not LogicalAction.IDENTITY
    assert run_trials(plan).logical_error_count == scalar_errors


# --------------------------------------------------- exhaustive enumeration


@pytest.mark.parametrize("spacing,levels", [(1, 4), (2, 8), (3, 12), (3, 24), (4, 16), (5, 20)])
def test_discrete_uniform_matches_exhaustive_enumeration(spacing, levels):
    plan = ladder_plan(max_shift=spacing, spacing=spacing, levels=levels, trials=40_000)
    shifts = range(-spacing, spacing + 1)
    expected = sum(predicted_logical_flip(s, spacing) for s in shifts) / len(list(shifts))
    stats = run_trials(plan)
    if expected == 0.0:
        assert stats.rate == 0.0
    else:
        assert abs(stats.rate - expected) <= 4 * math.sqrt(expected * (1 - expected) / plan.trials)


def test_step_walk_zero_steps_or_prob_is_silent():
    code = make_code(12, 3, Boundary.CYCLIC)
    for noise in (DiscreteStepWalk(0.5, 0), DiscreteStepWalk(0.0, 10)):
        plan = TrialPlan(code=code, noise=noise, trials=2000, master_seed=1)
        assert run_trials(plan).rate == 0.0


def test_step_walk_certain_single_step_stays_correctable():
    plan = TrialPlan(
        code=make_code(12, 3, Boundary.CYCLIC),
        noise=DiscreteStepWalk(1.0, 1),
        trials=2000,
        master_seed=1,
    )
    assert run_trials(plan).rate == 0.0


def test_step_walk_matches_binomial_enumeration():
    # spacing 1: every walk endpoint with odd |sum| flips parity; enumerate
    # the exact distribution of two +/-1 steps with prob 1 each: sum in
    # {-2, 0, 2} with probs {1/4, 1/2, 1/4} -> flip probability 0.
    plan = TrialPlan(
        code=make_code(4, 1, Boundary.CYCLIC),
        noise=DiscreteStepWalk(1.0, 2),
        trials=30_000,
        master_seed=17,
    )
    stats = run_trials(plan)
    assert stats.rate == 0.0
    # one certain step always flips a spacing-1 code
    plan_one = TrialPlan(
        code=make_code(4, 1, Boundary.CYCLIC),
        noise=DiscreteStepWalk(1.0, 1),
        trials=2000,
        master_seed=17,
    )
    assert run_trials(plan_one).rate == 1.0


def test_planar_discrete_noise_matches_enumeration():
    code = PlanarCode(
        vertical=make_code(12, 3, Boundary.CYCLIC),
        horizontal=make_code(16, 4, Boundary.CYCLIC),
    )
    plan = TrialPlan(code=code, noise=DiscreteUniform(2), trials=60_000, master_seed=23)
    span = range(-2, 3)
    outcomes = [
        predicted_logical_flip(dv, 3) or predicted_logical_flip(dh, 4)
        for dv in span
        for dh in span
    ]
    expected = sum(outcomes) / len(outcomes)
    stats = run_trials(plan)
    assert abs(stats.rate - expected) <= 4 * math.sqrt(expected * (1 - expected) / plan.trials)


# ------------------------------------------------------------- determinism


def test_identical_plans_are_bit_identical():
    a = run_trials(gkp_plan(0.35 * SQRT_PI, trials=30_000, seed=77))
    b = run_trials(gkp_plan(0.35 * SQRT_PI, trials=30_000, seed=77))
    assert a == b


def test_chunking_schedule_does_not_change_results():
    plan = gkp_plan(0.35 * SQRT_PI, 0.1 * SQRT_PI, trials=10_007, seed=13)
    reference = run_trials(plan)
    for chunk in (4, 52, 1009, 4096, 1 << 20):
        assert run_trials(plan, chunk_trials=chunk) == reference
    walk = TrialPlan(
        code=make_code(12, 3, Boundary.CYCLIC),
        noise=DiscreteStepWalk(0.7, 5),
        trials=5003,
        master_seed=3,
    )
    reference = run_trials(walk)
    for chunk in (4, 100, 997):
        assert run_trials(walk, chunk_trials=chunk) == reference


def test_different_seeds_differ():
    a = run_trials(gkp_plan(0.4 * SQRT_PI, trials=20_000, seed=1))
    b = run_trials(gkp_plan(0.4 * SQRT_PI, trials=20_000, seed=2))
    assert a.logical_error_count != b.logical_error_count


# ------------------------------------------------------------------ sweep


def test_sweep_preserves_order_and_matches_run_trials():
    plans = [gkp_plan(r * SQRT_PI, trials=5000, seed=4) for r in (0.1, 0.2, 0.3)]
    rows = sweep(plans)
    assert [row.plan for row in rows] == plans
    assert rows[1].stats == run_trials(plans[1])
    rates = [row.stats.rate for row in rows]
    assert rates == sorted(rates)


def test_sweep_reports_row_errors_and_continues():
    bad = TrialPlan(
        code=make_code(12, 3, Boundary.CYCLIC),
        noise=GaussianDisplacement(0.1, 0.1),
        trials=10,
        master_seed=0,
    )
    good = gkp_plan(0.2 * SQRT_PI, trials=1000)
    rows = sweep([bad, good])
    assert rows[0].stats is None and rows[0].error_message
    assert rows[1].stats is not None


def test_sweep_empty_rejected():
    with pytest.raises(ValueError):
        sweep([])


def test_invalid_noise_code_combinations():
    with pytest.raises(ValueError):
        run_trials(
            TrialPlan(code=make_gkp(SQRT_PI), noise=DiscreteUniform(1), trials=10, master_seed=0)
        )
    with pytest.raises(ValueError):
        run_trials(
            TrialPlan(
                code=make_code(12, 3, Boundary.CYCLIC),
                noise=GaussianDisplacement(0.1, 0.0),
                trials=10,
                master_seed=0,
            )
        )


# ------------------------------------------------------------ serialization


def test_csv_schema_and_determinism():
    rows = sweep([gkp_plan(0.2 * SQRT_PI, trials=2000), ladder_plan(2, trials=2000)])
    text_a = sweep_to_csv(rows)
    text_b = sweep_to_csv(sweep([gkp_plan(0.2 * SQRT_PI, trials=2000), ladder_plan(2, trials=2000)]))
    assert text_a == text_b
    assert "\r" not in text_a
    parsed = list(csv.reader(io.StringIO(text_a)))
    assert parsed[0] == CSV_COLUMNS
    assert len(parsed) == 3
    gkp_row = dict(zip(CSV_COLUMNS, parsed[1]))
    assert gkp_row["code_kind"] == "gkp"
    assert float(gkp_row["rate"]) == float(gkp_row["errors"]) / 2000
    assert float(gkp_row["analytic_rate"]) > 0
    ladder_row = dict(zip(CSV_COLUMNS, parsed[2]))
    assert ladder_row["code_kind"] == "ladder"
    assert ladder_row["lambda_v"] == ""
    assert ladder_row["boundary"] == "cyclic"


def test_json_mirrors_csv_fields():
    rows = sweep([gkp_plan(0.2 * SQRT_PI, trials=2000)])
    payload = json.loads(sweep_to_json(rows))
    assert isinstance(payload, list) and len(payload) == 1
    record = payload[0]
    assert set(record) == set(CSV_COLUMNS)
    assert record["trials"] == 2000
    assert record["error_message"] is None


def test_summary_stats_invariants():
    stats = SummaryStats.from_counts(400, 100)
    assert stats.rate == 0.25
    assert abs(stats.std_error - math.sqrt(0.25 * 0.75 / 400)) < 1e-15
    low, high = stats.ci95
    assert 0.0 <= low <= stats.rate <= high <= 1.0
