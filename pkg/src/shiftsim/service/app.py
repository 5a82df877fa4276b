"""FastAPI application exposing the playground protocol.

Endpoints: POST /create, POST /step, GET /state/{id}, POST /reset/{id},
GET /health. Every response (including errors) is a session envelope;
domain errors map to 400-class statuses with the error riding inside the
envelope so clients keep a single decoding path.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import PROTOCOL_VERSION, __version__
from ..errors import (
    InvalidAction,
    InvalidGeometry,
    NonPositiveParameter,
    NonPositiveSpacing,
    NotInCodeSpace,
    OutOfRangeShift,
    UnknownSession,
)
from .models import CreateSessionRequest, SessionEnvelope, StepRequest, build_code, resolve_amplitudes
from .sessions import SessionStore, error_envelope

_BAD_REQUEST = {
    InvalidGeometry: "invalid_geometry",
    InvalidAction: "invalid_action",
    OutOfRangeShift: "out_of_range_shift",
    NotInCodeSpace: "not_in_code_space",
    NonPositiveSpacing: "invalid_geometry",
    NonPositiveParameter: "invalid_parameter",
}


def create_app() -> FastAPI:
    app = FastAPI(title="shiftsim playground service", version=__version__)
    # the playground is a local teaching tool; let any origin talk to it
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])
    store = SessionStore()
    app.state.store = store

    @app.exception_handler(RequestValidationError)
    async def malformed_request(request: Request, exc: RequestValidationError):
        envelope = error_envelope("Invalid", "invalid_request", str(exc.errors()))
        return JSONResponse(status_code=422, content=envelope)

    def _domain_error(action: str, exc: Exception, session_id: str | None = None) -> JSONResponse:
        if isinstance(exc, UnknownSession):
            return JSONResponse(
                status_code=404,
                content=error_envelope(action, "unknown_session", str(exc), session_id),
            )
        code = _BAD_REQUEST.get(type(exc), "invalid_request")
        return JSONResponse(
            status_code=400, content=error_envelope(action, code, str(exc), session_id)
        )

    @app.get("/health")
    def health() -> dict:
        return {"protocol_version": PROTOCOL_VERSION, "status": "ok", "version": __version__}

    @app.post("/create", response_model=SessionEnvelope, response_model_exclude_none=True)
    def create(request: CreateSessionRequest):
        try:
            code = build_code(request.config)
            amps = resolve_amplitudes(request.config.alpha, request.config.beta)
        except tuple(_BAD_REQUEST) as exc:
            return _domain_error("Create", exc)
        return store.create(code, amps, seed=request.seed, teacher_mode=request.teacher_mode)

    @app.post("/step", response_model=SessionEnvelope, response_model_exclude_none=True)
    def step(request: StepRequest):
        try:
            return store.step(request.session_id, request.action, request.payload)
        except (UnknownSession, *_BAD_REQUEST, ValueError) as exc:
            if isinstance(exc, ValueError) and not isinstance(exc, tuple(_BAD_REQUEST)):
                return JSONResponse(
                    status_code=400,
                    content=error_envelope(request.action, "invalid_request", str(exc), request.session_id),
                )
            return _domain_error(request.action, exc, request.session_id)

    @app.get("/state/{session_id}", response_model=SessionEnvelope, response_model_exclude_none=True)
    def state(session_id: str):
        try:
            return store.state(session_id)
        except UnknownSession as exc:
            return _domain_error("GetState", exc, session_id)

    @app.post("/reset/{session_id}", response_model=SessionEnvelope, response_model_exclude_none=True)
    def reset(session_id: str):
        try:
            return store.reset(session_id)
        except UnknownSession as exc:
            return _domain_error("Reset", exc, session_id)

    return app
