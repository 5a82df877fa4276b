"""Command-line front door: single-shot lessons, decode traces, rate sweeps,
and the playground service.

Exit codes: 0 success, 2 validation problem, 3 a traced decode ended in a
logical error (scriptable), 4 internal failure. SHIFTSIM_SEED provides the
default seed; every output with a fixed seed is byte-reproducible.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .errors import ShiftSimError
from .gkp import make_gkp
from .ladder import (
    Boundary,
    LogicalAmplitudes,
    RoundingRule,
    Syndrome,
    apply_shift,
    candidate_errors,
    classify,
    decode,
    encode,
    make_code,
)
from .montecarlo import GaussianDisplacement, TrialPlan, sweep, sweep_to_csv, sweep_to_json
from .render import model_ladder, render_ascii, render_svg
from .service import create_app

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_LOGICAL_ERROR = 3
EXIT_INTERNAL = 4


def _parse_complex(text: str) -> complex:
    """Accept 'RE,IM' (or a bare real part)."""
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"amplitude must be RE,IM — got {text!r}")


def _resolve_amps(alpha: complex, beta: complex) -> LogicalAmplitudes:
    norm_sq = abs(alpha) ** 2 + abs(beta) ** 2
    if norm_sq == 0.0:
        raise ValueError("amplitudes must not both be zero")
    if abs(norm_sq - 1.0) > 1e-6:
        raise ValueError(f"amplitudes too far from normalized (|a|^2+|b|^2 = {norm_sq!r})")
    if abs(norm_sq - 1.0) > 1e-12:
        print(f"warning: renormalizing amplitudes (norm^2 was {norm_sq!r})", file=sys.stderr)
    scale = math.sqrt(norm_sq)
    return LogicalAmplitudes(alpha / scale, beta / scale)


def _default_seed() -> int:
    return int(os.environ.get("SHIFTSIM_SEED", "0"))


def _amp_text(value: complex) -> str:
    return f"{value.real:+.6f}{value.imag:+.6f}j"


# ---------------------------------------------------------------- encode


def cmd_encode(args: argparse.Namespace) -> int:
    code = make_code(args.levels, args.spacing, Boundary(args.boundary))
    amps = _resolve_amps(_parse_complex(args.alpha), _parse_complex(args.beta))
    state = encode(code, amps)
    model = model_ladder(code, state, mod_labels=args.mod_labels)
    if args.format == "svg":
        print(render_svg(model), end="")
        return EXIT_OK
    if args.format == "json":
        payload = {
            "levels": code.num_levels,
            "spacing": code.spacing,
            "boundary": code.boundary.value,
            "amplitudes": {str(l): [a.real, a.imag] for l, a in state.amplitudes.items()},
            "diagram": model.to_dict(),
        }
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(f"alpha={_amp_text(amps.alpha)}  beta={_amp_text(amps.beta)}")
    for level, amp in sorted(state.amplitudes.items()):
        print(f"level {level}: {_amp_text(amp)}")
    print(render_ascii(model), end="")
    return EXIT_OK


# ----------------------------------------------------------------- trace


def _trace_one(state, rule: RoundingRule, original: LogicalAmplitudes) -> tuple[list[str], bool, dict]:
    result = decode(state, rule)
    verdict = result.classification
    lines = [
        f"correction ({rule.value}): {result.applied_correction:+d}",
    ]
    detail: dict = {
        "rule": rule.value,
        "syndrome": result.measured_syndrome.value,
        "correction": result.applied_correction,
    }
    if not verdict.is_codeword:
        lines.append("classification: outside the code space")
        detail["classification"] = "non-codeword"
        return lines, True, detail
    restored = (
        abs(verdict.codeword.alpha - original.alpha) < 1e-9
        and abs(verdict.codeword.beta - original.beta) < 1e-9
    )
    alpha, beta = verdict.codeword.alpha, verdict.codeword.beta
    lines.append(f"classification: alpha={_amp_text(alpha)} beta={_amp_text(beta)}")
    lines.append("verdict: state restored" if restored else "verdict: logical error")
    detail["classification"] = {"alpha": [alpha.real, alpha.imag], "beta": [beta.real, beta.imag]}
    detail["logical_error"] = not restored
    return lines, not restored, detail


def cmd_trace(args: argparse.Namespace) -> int:
    code = make_code(args.levels, args.spacing, Boundary(args.boundary))
    amps = _resolve_amps(_parse_complex(args.alpha), _parse_complex(args.beta))
    state = apply_shift(encode(code, amps), args.shift)
    syndrome = Syndrome(args.shift % code.spacing)
    candidates = candidate_errors(syndrome, code)
    rules = (
        [RoundingRule.PAPER_LITERAL, RoundingRule.NEAREST]
        if args.rule == "compare"
        else [RoundingRule(args.rule)]
    )
    # the omniscient verdict compares against the phase-fixed original
    original = classify(encode(code, amps)).codeword
    lines = [
        f"inject: shift {args.shift:+d} on {code.num_levels} levels (spacing {code.spacing})",
        f"syndrome: {syndrome.value}",
        "candidates: " + (", ".join(str(c) for c in candidates) or "(code space)"),
    ]
    details = []
    failed = False
    for rule in rules:
        rule_lines, rule_failed, detail = _trace_one(state, rule, original)
        lines.extend(rule_lines)
        details.append(detail)
        if rule is RoundingRule.NEAREST or len(rules) == 1:
            failed = rule_failed
    if args.format == "json":
        print(
            json.dumps(
                {
                    "shift": args.shift,
                    "syndrome": syndrome.value,
                    "candidates": candidates,
                    "rules": details,
                    "logical_error": failed,
                },
                indent=2,
            )
        )
    else:
        print("\n".join(lines))
    return EXIT_LOGICAL_ERROR if failed else EXIT_OK


# ----------------------------------------------------------------- sweep


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.code != "gkp":
        raise ValueError("only --code gkp sweeps are wired to the command line")
    if args.sigma_steps < 1:
        raise ValueError("--sigma-steps must be >= 1")
    code = make_gkp(args.lambda_v)
    seed = args.seed if args.seed is not None else _default_seed()
    sigmas = [
        args.sigma_start
        + i * (args.sigma_end - args.sigma_start) / max(args.sigma_steps - 1, 1)
        for i in range(args.sigma_steps)
    ]
    plans = [
        TrialPlan(
            code=code,
            noise=GaussianDisplacement(sigma, args.sigma_h),
            trials=args.trials,
            master_seed=seed,
        )
        for sigma in sigmas
    ]
    rows = sweep(plans)
    output = sweep_to_csv(rows) if args.format == "csv" else sweep_to_json(rows)
    print(output, end="")
    return EXIT_OK


# ----------------------------------------------------------------- serve


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


# ------------------------------------------------------------------ wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftsim",
        description="displacement-error code simulator and teaching playground",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="encode a qubit on a finite ladder and draw it")
    enc.add_argument("--levels", type=int, required=True)
    enc.add_argument("--spacing", type=int, required=True)
    enc.add_argument("--alpha", default="1,0", help="complex amplitude as RE,IM")
    enc.add_argument("--beta", default="0,0", help="complex amplitude as RE,IM")
    enc.add_argument("--boundary", choices=["cyclic", "hard"], default="hard")
    enc.add_argument("--format", choices=["text", "json", "svg"], default="text")
    enc.add_argument("--mod-labels", action="store_true", help="write level mod spacing in each cell")
    enc.set_defaults(func=cmd_encode)

    tra = sub.add_parser("trace", help="narrate one inject/measure/decode round")
    tra.add_argument("--levels", type=int, required=True)
    tra.add_argument("--spacing", type=int, required=True)
    tra.add_argument("--shift", type=int, required=True)
    tra.add_argument("--rule", choices=["paper", "nearest", "compare"], default="nearest")
    tra.add_argument("--alpha", default="1,0")
    tra.add_argument("--beta", default="0,0")
    tra.add_argument("--boundary", choices=["cyclic", "hard"], default="cyclic")
    tra.add_argument("--format", choices=["text", "json"], default="text")
    tra.set_defaults(func=cmd_trace)

    swp = sub.add_parser("sweep", help="Monte Carlo logical error rates over a sigma grid")
    swp.add_argument("--code", default="gkp")
    swp.add_argument("--lambda-v", type=float, default=math.sqrt(math.pi))
    swp.add_argument("--sigma-start", type=float, required=True)
    swp.add_argument("--sigma-end", type=float, required=True)
    swp.add_argument("--sigma-steps", type=int, required=True)
    swp.add_argument("--sigma-h", type=float, default=0.0, help="horizontal noise (default off)")
    swp.add_argument("--trials", type=int, default=10_000)
    swp.add_argument("--seed", type=int, default=None, help="defaults to SHIFTSIM_SEED or 0")
    swp.add_argument("--format", choices=["csv", "json"], default="csv")
    swp.set_defaults(func=cmd_sweep)

    srv = sub.add_parser("serve", help="run the playground protocol service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8077)
    srv.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ShiftSimError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except KeyboardInterrupt:
        return EXIT_OK
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
