"""Stateful lesson sessions behind the JSON playground protocol.

A session owns a code, a hidden true state, and a seeded random stream.
Learner-facing envelopes only ever expose what legal measurements reveal:
after an error injection the diagram goes blind, a syndrome measurement
highlights the levels consistent with the outcome, and the decoder step
reports its correction without disclosing whether a logical flip slipped
through. The omniscient picture rides in a separate teacher view that
exists only when the session was created with teacher_mode.

Every mutation appends to an ordered event log; replaying the log against
a fresh session with the same seed reproduces all envelopes exactly.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Any, Optional, Union

import numpy as np

from .. import PROTOCOL_VERSION
from ..errors import InvalidAction, NotInCodeSpace, UnknownSession
from ..gkp import (
    GkpCode,
    GkpState,
    apply_displacement_cv,
    centered_mod,
    decode_gkp,
    encode_gkp,
)
from ..ladder import (
    AMP_TOL,
    LadderCode,
    LadderState,
    LogicalAmplitudes,
    RoundingRule,
    Syndrome,
    apply_shift,
    binning_decode,
    candidate_errors,
    classify,
    decode,
    encode,
    measure_logical,
    measure_syndrome,
)
from ..planar import (
    PlanarCode,
    PlanarState,
    apply_displacement,
    decode_planar,
    encode_planar,
)
from ..render import (
    DiagramAnnotation,
    model_axis,
    model_grid,
    model_ladder,
)

CodeLike = Union[LadderCode, PlanarCode, GkpCode]
StateLike = Union[LadderState, PlanarState, GkpState]

ACTIONS = (
    "Create",
    "GetState",
    "InjectShift",
    "MeasureSyndrome",
    "StepDecoder",
    "MeasureLogical",
    "CandidateErrors",
    "Reset",
)


def _complex_pair(value: complex) -> list[float]:
    return [value.real, value.imag]


def _rule(payload: dict) -> RoundingRule:
    name = payload.get("rule", "nearest")
    try:
        return RoundingRule(name)
    except ValueError:
        raise InvalidAction(f"unknown rounding rule {name!r}") from None


@dataclass
class SessionEvent:
    action: str
    payload: dict
    result: dict
    narration: str


@dataclass
class Session:
    session_id: str
    kind: str
    code: CodeLike
    initial_amps: LogicalAmplitudes
    seed: int
    teacher_mode: bool
    rng: np.random.Generator
    state: StateLike
    # what the learner may legally see: "state", "codespace", "blind",
    # or ("syndrome", ...measured values...)
    view: Any = "state"
    event_log: list[SessionEvent] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class SessionStore:
    """Thread-safe registry; per-session actions are strictly serialized."""

    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._counter = 0

    # ------------------------------------------------------------ lifecycle

    def create(
        self,
        code: CodeLike,
        amps: LogicalAmplitudes,
        seed: int = 0,
        teacher_mode: bool = False,
    ) -> dict:
        with self._lock:
            self._counter += 1
            session_id = f"s{self._counter:06d}"
            session = Session(
                session_id=session_id,
                kind=_kind_of(code),
                code=code,
                initial_amps=amps,
                seed=seed,
                teacher_mode=teacher_mode,
                rng=np.random.default_rng(seed),
                state=_encode_for(code, amps),
            )
            self._sessions[session_id] = session
        result = {"kind": session.kind, "seed": seed, "teacher_mode": teacher_mode}
        narration = _create_narration(session)
        session.event_log.append(SessionEvent("Create", {}, result, narration))
        return _envelope(session, "Create", result, narration)

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSession(f"no session {session_id!r}")
        return session

    # -------------------------------------------------------------- actions

    def state(self, session_id: str) -> dict:
        session = self.get(session_id)
        with session.lock:
            result = {
                "kind": session.kind,
                "events": len(session.event_log),
                "view": session.view if isinstance(session.view, str) else "syndrome",
            }
            return _envelope(session, "GetState", result, "current session snapshot")

    def reset(self, session_id: str) -> dict:
        return self.step(session_id, "Reset", {})

    def step(self, session_id: str, action: str, payload: Optional[dict] = None) -> dict:
        payload = payload or {}
        if action not in ACTIONS:
            raise InvalidAction(f"unknown action {action!r}")
        if action == "GetState":
            return self.state(session_id)
        session = self.get(session_id)
        with session.lock:
            handler = _HANDLERS[action]
            result, narration = handler(session, payload)
            session.event_log.append(SessionEvent(action, payload, result, narration))
            return _envelope(session, action, result, narration)


# ------------------------------------------------------------------ helpers


def _kind_of(code: CodeLike) -> str:
    if isinstance(code, LadderCode):
        return "ladder"
    if isinstance(code, PlanarCode):
        return "planar"
    return "gkp"


def _encode_for(code: CodeLike, amps: LogicalAmplitudes) -> StateLike:
    if isinstance(code, LadderCode):
        return encode(code, amps)
    if isinstance(code, PlanarCode):
        return encode_planar(code, amps)
    return encode_gkp(code, amps)


def _create_narration(session: Session) -> str:
    if session.kind == "ladder":
        code = session.code
        return (
            f"encoded one qubit across {code.num_levels} levels with peak "
            f"spacing {code.spacing}"
        )
    if session.kind == "planar":
        code = session.code
        return (
            f"encoded one qubit on a {code.vertical.num_levels}x"
            f"{code.horizontal.num_levels} grid (spacings "
            f"{code.vertical.spacing} vertical, {code.horizontal.spacing} horizontal)"
        )
    code = session.code
    return (
        f"encoded one qubit on the continuous lattice with spacings "
        f"lv={code.lambda_v:.6f}, lh={code.lambda_h:.6f}"
    )


# ------------------------------------------------------------ action logic


def _inject(session: Session, payload: dict) -> tuple[dict, str]:
    if session.kind == "ladder":
        amount = int(payload.get("amount", 0))
        session.state = apply_shift(session.state, amount)
        session.view = "blind"
        return {"injected": amount}, (
            f"injected shift {amount:+d}; only a measurement can reveal anything now"
        )
    if session.kind == "planar":
        dv, dh = int(payload.get("dv", 0)), int(payload.get("dh", 0))
        session.state = apply_displacement(session.state, dv, dh)
        session.view = "blind"
        return {"injected_v": dv, "injected_h": dh}, (
            f"injected displacement ({dv:+d} vertical, {dh:+d} horizontal)"
        )
    dv, dh = float(payload.get("dv", 0.0)), float(payload.get("dh", 0.0))
    session.state = apply_displacement_cv(session.state, dv, dh)
    session.view = "blind"
    return {"injected_v": dv, "injected_h": dh}, (
        f"injected displacement ({dv:+.4f} vertical, {dh:+.4f} horizontal)"
    )


def _measure_syndrome(session: Session, payload: dict) -> tuple[dict, str]:
    if session.kind == "ladder":
        syndrome, post = measure_syndrome(session.state, session.rng)
        session.state = post
        session.view = ("syndrome", syndrome.value)
        candidates = candidate_errors(syndrome, session.code)
        result = {"syndrome": syndrome.value, "candidates": candidates}
        if syndrome.value == 0:
            return result, "syndrome 0: consistent with the code space"
        listing = ", ".join(str(c) for c in candidates)
        return result, (
            f"syndrome {syndrome.value}: several errors could explain it "
            f"(levels {listing})"
        )
    if session.kind == "planar":
        k_v = session.code.vertical.spacing
        k_h = session.code.horizontal.spacing
        s_v, s_h = session.state.v_shift % k_v, session.state.h_shift % k_h
        session.view = ("syndrome", s_v, s_h)
        result = {
            "syndrome_v": s_v,
            "syndrome_h": s_h,
            "candidates_v": candidate_errors(Syndrome(s_v), session.code.vertical),
            "candidates_h": candidate_errors(Syndrome(s_h), session.code.horizontal),
        }
        return result, f"syndromes: {s_v} (vertical mod {k_v}), {s_h} (horizontal mod {k_h})"
    code = session.code
    r_v = centered_mod(session.state.delta_v, code.lambda_v)
    r_h = centered_mod(session.state.delta_h, code.lambda_h)
    session.view = ("syndrome", r_v, r_h)
    result = {"residual_v": r_v, "residual_h": r_h}
    return result, f"modular residuals: {r_v:+.4f} vertical, {r_h:+.4f} horizontal"


def _step_decoder(session: Session, payload: dict) -> tuple[dict, str]:
    rule = _rule(payload)
    if session.kind == "ladder":
        result = decode(session.state, rule, session.rng)
        session.state = result.corrected_state
        session.view = "codespace"
        info = {
            "syndrome": result.measured_syndrome.value,
            "correction": result.applied_correction,
        }
        if result.applied_correction == 0:
            return info, "syndrome 0; nothing to correct"
        return info, (
            f"corrected {result.applied_correction:+d}; state back in the code space"
        )
    if session.kind == "planar":
        k_v = session.code.vertical.spacing
        k_h = session.code.horizontal.spacing
        c_v = binning_decode(session.state.v_shift % k_v, k_v, rule)
        c_h = binning_decode(session.state.h_shift % k_h, k_h, rule)
        corrected, _ = decode_planar(session.state, rule)
        session.state = corrected
        session.view = "codespace"
        info = {"correction_v": c_v, "correction_h": c_h}
        return info, f"corrected ({c_v:+d} vertical, {c_h:+d} horizontal)"
    code = session.code
    r_v = centered_mod(session.state.delta_v, code.lambda_v)
    r_h = centered_mod(session.state.delta_h, code.lambda_h)
    corrected, _ = decode_gkp(session.state)
    session.state = corrected
    session.view = "codespace"
    info = {"correction_v": -r_v, "correction_h": -r_h}
    return info, f"corrected ({-r_v:+.4f} vertical, {-r_h:+.4f} horizontal)"


def _planar_effective_amps(state: PlanarState, code: PlanarCode) -> LogicalAmplitudes:
    k_v, k_h = code.vertical.spacing, code.horizontal.spacing
    if state.v_shift % k_v or state.h_shift % k_h:
        raise NotInCodeSpace("logical readout requires a code-space state")
    alpha, beta = state.logical.alpha, state.logical.beta
    if (state.h_shift // k_h) % 2:
        beta = -beta
    if (state.v_shift // k_v) % 2:
        alpha, beta = beta, alpha
    return LogicalAmplitudes(alpha, beta)


def _collapse(amps: LogicalAmplitudes, rng: np.random.Generator) -> tuple[int, LogicalAmplitudes]:
    p_zero = abs(amps.alpha) ** 2
    if p_zero >= 1.0 - AMP_TOL:
        bit = 0
    elif p_zero <= AMP_TOL:
        bit = 1
    else:
        bit = 0 if rng.random() < p_zero else 1
    coefficient = amps.alpha if bit == 0 else amps.beta
    phase = coefficient / abs(coefficient)
    collapsed = LogicalAmplitudes(phase if bit == 0 else 0, phase if bit == 1 else 0)
    return bit, collapsed


def _measure_logical(session: Session, payload: dict) -> tuple[dict, str]:
    if session.kind == "ladder":
        bit, post = measure_logical(session.state, session.rng)
        session.state = post
    elif session.kind == "planar":
        amps = _planar_effective_amps(session.state, session.code)
        bit, collapsed = _collapse(amps, session.rng)
        session.state = PlanarState(logical=collapsed, code=session.code)
    else:
        code = session.code
        if (
            abs(centered_mod(session.state.delta_v, code.lambda_v)) > 1e-9
            or abs(centered_mod(session.state.delta_h, code.lambda_h)) > 1e-9
        ):
            raise NotInCodeSpace("logical readout requires a code-space state")
        m_v = round(session.state.delta_v / code.lambda_v)
        m_h = round(session.state.delta_h / code.lambda_h)
        alpha, beta = session.state.logical.alpha, session.state.logical.beta
        if m_h % 2:
            beta = -beta
        if m_v % 2:
            alpha, beta = beta, alpha
        bit, collapsed = _collapse(LogicalAmplitudes(alpha, beta), session.rng)
        session.state = encode_gkp(code, collapsed)
    session.view = "state"
    return {"bit": bit}, (
        f"measured logical {bit}; the outcome is fixed now, repeats return {bit}"
    )


def _candidates(session: Session, payload: dict) -> tuple[dict, str]:
    if session.kind == "ladder":
        value = int(payload.get("syndrome", _current_syndrome(session)))
        candidates = candidate_errors(Syndrome(value), session.code)
        session.view = ("syndrome", value)
        listing = ", ".join(str(c) for c in candidates) or "none"
        return {"syndrome": value, "candidates": candidates}, (
            f"levels consistent with syndrome {value}: {listing}"
        )
    if session.kind == "planar":
        k_v = session.code.vertical.spacing
        k_h = session.code.horizontal.spacing
        s_v = int(payload.get("syndrome_v", session.state.v_shift % k_v))
        s_h = int(payload.get("syndrome_h", session.state.h_shift % k_h))
        session.view = ("syndrome", s_v, s_h)
        result = {
            "syndrome_v": s_v,
            "syndrome_h": s_h,
            "candidates_v": candidate_errors(Syndrome(s_v), session.code.vertical),
            "candidates_h": candidate_errors(Syndrome(s_h), session.code.horizontal),
        }
        return result, f"candidate errors for syndromes ({s_v}, {s_h}) listed per axis"
    raise InvalidAction("the continuous code has a continuum of candidate errors")


def _current_syndrome(session: Session) -> int:
    residues = {l % session.code.spacing for l in session.state.support}
    if len(residues) != 1:
        raise InvalidAction("measure the syndrome first: it is not yet determined")
    return residues.pop()


def _reset(session: Session, payload: dict) -> tuple[dict, str]:
    session.state = _encode_for(session.code, session.initial_amps)
    session.rng = np.random.default_rng(session.seed)
    session.view = "state"
    return {"kind": session.kind}, "session reset to the freshly encoded state"


_HANDLERS = {
    "InjectShift": _inject,
    "MeasureSyndrome": _measure_syndrome,
    "StepDecoder": _step_decoder,
    "MeasureLogical": _measure_logical,
    "CandidateErrors": _candidates,
    "Reset": _reset,
}


# -------------------------------------------------------------- rendering


def _ladder_diagram(session: Session) -> dict:
    code, view = session.code, session.view
    if view == "state":
        return model_ladder(code, session.state).to_dict()
    if view == "codespace":
        highlight = list(code.support_zero) + list(code.support_one)
        return model_ladder(code, highlight=sorted(highlight)).to_dict()
    if view == "blind":
        return model_ladder(code, highlight=[]).to_dict()
    value = view[1]
    return model_ladder(
        code, highlight=candidate_errors(Syndrome(value), code), mod_labels=True
    ).to_dict()


def _planar_diagram(session: Session) -> dict:
    code, view = session.code, session.view
    vert, hori = code.vertical, code.horizontal
    if view == "state":
        return model_grid(code, session.state).to_dict()
    if view == "codespace":
        rows = set(vert.support_zero) | set(vert.support_one)
        cols = set(hori.support_zero) | set(hori.support_one)
        cells = [(r, c) for r in sorted(rows) for c in sorted(cols)]
        return model_grid(code, highlight=cells).to_dict()
    if view == "blind":
        return model_grid(code, highlight=[]).to_dict()
    _, s_v, s_h = view
    cells = [
        (r, c)
        for r in range(vert.num_levels)
        if r % vert.spacing == s_v
        for c in range(hori.num_levels)
        if c % hori.spacing == s_h
    ]
    return model_grid(code, highlight=cells).to_dict()


def _gkp_diagram(session: Session) -> dict:
    code, view = session.code, session.view
    if view == "state":
        return model_axis(code, session.state).to_dict()
    if view == "blind":
        return model_axis(code).to_dict()
    if view == "codespace":
        return model_axis(
            code,
            annotations=[DiagramAnnotation(text="back on the lattice", anchor=(0.0,))],
        ).to_dict()
    _, r_v, r_h = view
    return model_axis(
        code,
        annotations=[
            DiagramAnnotation(text=f"residual {r_v:+.4f}", anchor=(r_v,)),
        ],
    ).to_dict()


def _diagram(session: Session) -> dict:
    if session.kind == "ladder":
        return _ladder_diagram(session)
    if session.kind == "planar":
        return _planar_diagram(session)
    return _gkp_diagram(session)


def _teacher_view(session: Session) -> dict:
    if session.kind == "ladder":
        truth: dict[str, Any] = {
            "levels": {
                str(level): _complex_pair(amp)
                for level, amp in sorted(session.state.amplitudes.items())
            }
        }
        verdict = classify(session.state)
        if verdict.is_codeword:
            truth["classification"] = {
                "alpha": _complex_pair(verdict.codeword.alpha),
                "beta": _complex_pair(verdict.codeword.beta),
            }
        else:
            truth["classification"] = "non-codeword"
        return truth
    if session.kind == "planar":
        return {
            "logical": {
                "alpha": _complex_pair(session.state.logical.alpha),
                "beta": _complex_pair(session.state.logical.beta),
            },
            "v_shift": session.state.v_shift,
            "h_shift": session.state.h_shift,
        }
    return {
        "logical": {
            "alpha": _complex_pair(session.state.logical.alpha),
            "beta": _complex_pair(session.state.logical.beta),
        },
        "delta_v": session.state.delta_v,
        "delta_h": session.state.delta_h,
    }


def _envelope(session: Session, action: str, result: dict, narration: str) -> dict:
    envelope = {
        "protocol_version": PROTOCOL_VERSION,
        "session_id": session.session_id,
        "action": action,
        "payload": result,
        "narration": narration,
        "diagram": _diagram(session),
        "error": None,
    }
    if session.teacher_mode:
        envelope["teacher_view"] = _teacher_view(session)
    return envelope


def error_envelope(action: str, code: str, message: str, session_id: Optional[str] = None) -> dict:
    envelope = {
        "protocol_version": PROTOCOL_VERSION,
        "action": action,
        "error": {"code": code, "message": message},
    }
    if session_id is not None:
        envelope["session_id"] = session_id
    return envelope
