"""Acceptance suite: one test per exit criterion, at its stated tolerance.

Each test prints a single `[acceptance] PASS/FAIL <criterion>` line; run

    pytest tests/test_acceptance.py -v -s

to see them live. Timing budgets are asserted with the wall clock.
"""

from __future__ import annotations

import math
import time
import xml.etree.ElementTree as ET
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest
from fastapi.testclient import TestClient

from shiftsim import (
    Boundary,
    LogicalAmplitudes,
    RoundingRule,
    Syndrome,
    amplitude_distance,
    apply_shift,
    binning_decode,
    candidate_errors,
    classify,
    correctable_radius,
    decode,
    encode,
    make_code,
    measure_logical,
    measure_syndrome,
)
from shiftsim.gkp import (
    SQRT_PI,
    apply_displacement_cv,
    correctable,
    decode_gkp,
    encode_gkp,
    logical_error_prob_analytic,
    make_gkp,
)
from shiftsim.montecarlo import (
    GaussianDisplacement,
    TrialPlan,
    run_trials,
    sweep,
    sweep_to_csv,
    sweep_to_json,
)
from shiftsim.planar import WeylPair, anticommutes, build_weyl_matrices, verify_logical_z_action
from shiftsim.render import render_ascii, render_svg
from shiftsim.service import create_app

from golden_models import build_golden_models
from oracles import (
    alg1_interpreter,
    nearest_multiple_correction,
    phase_fixed,
    predicted_logical_flip,
    random_amplitude_pair,
)

GOLDEN_DIR = Path(__file__).resolve().parent / "goldens"
MASTER_SEED = 20260810


@contextmanager
def criterion(name: str, budget_seconds: float):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[acceptance] FAIL {name}")
        raise
    elapsed = time.perf_counter() - started
    assert elapsed < budget_seconds, f"{name} took {elapsed:.2f}s (budget {budget_seconds}s)"
    print(f"[acceptance] PASS {name} ({elapsed:.2f}s)")


# ----------------------------------------------------------------- PRIMARY


def test_binning_rule_fidelity():
    with criterion("binning rule fidelity", 1.0):
        for k in range(2, 13):
            for level in range(10 * k):
                paper = binning_decode(level, k, RoundingRule.PAPER_LITERAL)
                nearest = binning_decode(level, k, RoundingRule.NEAREST)
                assert paper == alg1_interpreter(level, k)
                assert nearest == nearest_multiple_correction(level, k)
                assert (paper != nearest) == (k % 2 == 1 and level % k == math.ceil(k / 2))


def test_paper_codewords():
    with criterion("ten-level codewords and candidates", 1.0):
        code = make_code(10, 3, Boundary.HARD)
        zero = encode(code, LogicalAmplitudes(1, 0))
        one = encode(code, LogicalAmplitudes(0, 1))
        assert zero.support == (0, 6)
        assert one.support == (3, 9)
        inv_sqrt2 = 1 / math.sqrt(2)
        for state, support in ((zero, (0, 6)), (one, (3, 9))):
            for level in support:
                assert abs(state.amplitude(level) - inv_sqrt2) <= 1e-12
        assert candidate_errors(Syndrome(2), code) == [2, 5, 8]


def test_roundtrip_and_radius():
    with criterion("round-trip / correctable radius", 5.0):
        rng = np.random.default_rng(MASTER_SEED)
        for k in range(1, 25):
            for p in range(1, 25):
                levels = 2 * k * p
                if levels > 48:
                    break
                code = make_code(levels, k, Boundary.CYCLIC)
                radius = correctable_radius(code)
                assert radius == (k - 1) // 2
                alpha, beta = random_amplitude_pair(rng)
                base = encode(code, LogicalAmplitudes(alpha, beta))
                for shift in range(-levels, levels + 1):
                    verdict = decode(apply_shift(base, shift)).classification
                    assert verdict.is_codeword
                    flipped = predicted_logical_flip(shift, k)
                    if abs(shift) <= radius:
                        assert not flipped
                    expected = phase_fixed(beta, alpha) if flipped else phase_fixed(alpha, beta)
                    assert abs(verdict.codeword.alpha - expected[0]) <= 1e-12
                    assert abs(verdict.codeword.beta - expected[1]) <= 1e-12


def test_measurement_semantics():
    with criterion("measurement semantics", 5.0):
        rng = np.random.default_rng(MASTER_SEED)
        # syndrome measurement never disturbs uniformly shifted codewords
        for k in (1, 2, 3, 5):
            code = make_code(8 * k, k, Boundary.CYCLIC)
            alpha, beta = random_amplitude_pair(rng)
            base = encode(code, LogicalAmplitudes(alpha, beta))
            for shift in range(0, 2 * k):
                shifted = apply_shift(base, shift)
                syndrome, post = measure_syndrome(shifted)
                assert syndrome.value == shift % k
                assert amplitude_distance(post, shifted) <= 1e-12
        # Born frequency for |alpha|^2 = 0.36 over 10^4 seeded trials
        code = make_code(10, 3, Boundary.HARD)
        state = encode(code, LogicalAmplitudes(0.6, 0.8))
        sampler = np.random.default_rng(MASTER_SEED)
        trials = 10_000
        zeros = sum(measure_logical(state, sampler)[0] == 0 for _ in range(trials))
        tolerance = 4 * math.sqrt(0.36 * 0.64 / trials)
        assert abs(zeros / trials - 0.36) <= tolerance
        # repetition is constant
        for seed in range(300):
            sampler = np.random.default_rng(seed)
            bit, collapsed = measure_logical(state, sampler)
            again, _ = measure_logical(collapsed, sampler)
            assert again == bit


def test_anticommutation_oracle():
    with criterion("clock/shift anti-commutation oracle", 10.0):
        for d in range(2, 33):
            shift, phase = build_weyl_matrices(d)
            shift_powers = [np.linalg.matrix_power(shift, a) for a in range(d)]
            phase_powers = [np.linalg.matrix_power(phase, b) for b in range(d)]
            for a in range(1, d):
                for b in range(1, d):
                    residual = shift_powers[a] @ phase_powers[b] + phase_powers[b] @ shift_powers[a]
                    vanishes = float(np.max(np.abs(residual))) <= 1e-10
                    assert vanishes == anticommutes(WeylPair(d, a, b))
                    assert vanishes == (d % 2 == 0 and (a * b) % d == d // 2)
        for k_v in range(1, 33):
            for k_h in range(1, 33):
                if 2 * k_v * k_h <= 64:
                    assert verify_logical_z_action(2 * k_v * k_h, k_v, k_h)


def test_gkp_thresholds():
    with criterion("continuous binning thresholds", 1.0):
        code = make_gkp(SQRT_PI)
        base = encode_gkp(code, LogicalAmplitudes(0.6, 0.8))
        lam = code.lambda_v
        for delta in np.linspace(-1.499 * lam, 1.499 * lam, 10_000):
            delta = float(delta)
            _, outcome = decode_gkp(apply_displacement_cv(base, delta, 0.0))
            flipped = outcome.lattice_multiple_v % 2 == 1
            if correctable(delta, lam):
                assert not flipped
            elif lam / 2 < abs(delta) < 1.5 * lam:
                assert flipped
        # documented half-open boundary: +lam/2 bins up, -lam/2 bins down
        _, up = decode_gkp(apply_displacement_cv(base, lam / 2, 0.0))
        _, down = decode_gkp(apply_displacement_cv(base, -lam / 2, 0.0))
        assert up.lattice_multiple_v == 1 and down.lattice_multiple_v == 0


def test_monte_carlo_matches_analytic():
    with criterion("Monte Carlo vs analytic rates", 10.0):
        from scipy.integrate import quad

        lam = SQRT_PI
        for ratio in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6):
            sigma = ratio * lam
            analytic = logical_error_prob_analytic(sigma, lam)

            def density(x: float) -> float:
                return math.exp(-x * x / (2 * sigma * sigma)) / (sigma * math.sqrt(2 * math.pi))

            quadrature, m = 0.0, 1
            while (m - 0.5) * lam < 9 * sigma:
                value, _ = quad(density, (m - 0.5) * lam, (m + 0.5) * lam, epsabs=1e-15)
                quadrature += 2 * value
                m += 2
            assert abs(analytic - quadrature) <= 1e-10

            plan = TrialPlan(
                code=make_gkp(lam),
                noise=GaussianDisplacement(sigma, 0.0),
                trials=100_000,
                master_seed=MASTER_SEED,
            )
            stats = run_trials(plan)
            guard = max(stats.std_error, math.sqrt(analytic * (1 - analytic) / plan.trials))
            assert abs(stats.rate - analytic) <= 4 * guard


def test_reproducibility_bytes():
    with criterion("seeded byte reproducibility", 10.0):
        plans = [
            TrialPlan(
                code=make_gkp(SQRT_PI),
                noise=GaussianDisplacement(r * SQRT_PI, 0.0),
                trials=20_000,
                master_seed=MASTER_SEED,
            )
            for r in (0.2, 0.4)
        ]
        csv_a, csv_b = sweep_to_csv(sweep(plans)), sweep_to_csv(sweep(plans))
        json_a, json_b = sweep_to_json(sweep(plans)), sweep_to_json(sweep(plans))
        assert csv_a == csv_b and json_a == json_b
        # schedule independence: any chunking gives identical counts
        reference = run_trials(plans[1])
        for chunk in (4, 999, 2**14):
            assert run_trials(plans[1], chunk_trials=chunk) == reference
        model = build_golden_models()["axis_sqrt_pi"]
        assert render_svg(model) == render_svg(model)


def test_render_goldens_byte_stable():
    with criterion("render goldens", 5.0):
        models = build_golden_models()
        for name in (
            "ladder_two_level",
            "ladder_mod3",
            "ladder_multi_peak",
            "grid_mod34",
            "axis_sqrt_pi",
        ):
            model = models[name]
            ascii_text = render_ascii(model)
            svg_text = render_svg(model)
            assert ascii_text.encode() == (GOLDEN_DIR / f"{name}.txt").read_bytes()
            assert svg_text.encode() == (GOLDEN_DIR / f"{name}.svg").read_bytes()
            ET.fromstring(svg_text)


# --------------------------------------------------------------- SECONDARY


def test_protocol_walkthrough_against_live_service():
    with criterion("protocol walkthrough (secondary)", 10.0):
        client = TestClient(create_app())
        health = client.get("/health").json()
        assert health["protocol_version"] == "shiftsim/1"

        created = client.post(
            "/create",
            json={"config": {"kind": "ladder", "num_levels": 10, "spacing": 3}},
        ).json()
        session_id = created["session_id"]

        def step(action, payload=None):
            response = client.post(
                "/step",
                json={"session_id": session_id, "action": action, "payload": payload or {}},
            )
            assert response.status_code == 200, response.text
            return response.json()

        step("InjectShift", {"amount": 2})
        measured = step("MeasureSyndrome")
        assert measured["payload"]["syndrome"] == 2
        assert measured["payload"]["candidates"] == [2, 5, 8]
        decoded = step("StepDecoder")
        assert decoded["payload"]["correction"] == 1

        # stickiness demo on an equal superposition
        inv_sqrt2 = 1 / math.sqrt(2)
        sticky = client.post(
            "/create",
            json={
                "config": {
                    "kind": "ladder",
                    "num_levels": 10,
                    "spacing": 3,
                    "alpha": [inv_sqrt2, 0.0],
                    "beta": [inv_sqrt2, 0.0],
                },
                "seed": 5,
            },
        ).json()
        sticky_id = sticky["session_id"]

        def sticky_step(action):
            return client.post(
                "/step", json={"session_id": sticky_id, "action": action, "payload": {}}
            ).json()

        first = sticky_step("MeasureLogical")["payload"]["bit"]
        second = sticky_step("MeasureLogical")["payload"]["bit"]
        assert first == second
