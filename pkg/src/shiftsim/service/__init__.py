from .app import create_app
from .models import (
    CodeConfig,
    CreateSessionRequest,
    GkpConfig,
    LadderConfig,
    PlanarConfig,
    SessionEnvelope,
    StepRequest,
)
from .sessions import SessionStore

__all__ = [
    "create_app",
    "SessionStore",
    "CodeConfig",
    "CreateSessionRequest",
    "GkpConfig",
    "LadderConfig",
    "PlanarConfig",
    "SessionEnvelope",
    "StepRequest",
]
