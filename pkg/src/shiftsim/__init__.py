"""Displacement-error code simulator: finite ladders, two-axis grids, and
the continuous square-lattice limit, with Monte Carlo rate estimation,
diagram rendering, and an interactive lesson service."""

from .errors import (
    DimensionTooLarge,
    InvalidAction,
    InvalidGeometry,
    NonPositiveParameter,
    NonPositiveSpacing,
    NotInCodeSpace,
    OutOfRangeShift,
    ShiftSimError,
    UnknownSession,
)
from .ladder import (
    AMP_TOL,
    NON_CODEWORD,
    Boundary,
    Classification,
    DecodeResult,
    LadderCode,
    LadderState,
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

__version__ = "0.1.0"

PROTOCOL_VERSION = "shiftsim/1"
