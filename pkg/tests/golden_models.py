"""The fixed diagram models whose renders are frozen as golden files."""

from __future__ import annotations

import math

from shiftsim import Boundary, LogicalAmplitudes, encode, make_code
from shiftsim.gkp import SQRT_PI, apply_displacement_cv, encode_gkp, make_gkp
from shiftsim.planar import PlanarCode, encode_planar
from shiftsim.render import DiagramModel, model_axis, model_grid, model_ladder, model_plane

INV_SQRT2 = 1 / math.sqrt(2)


def build_golden_models() -> dict[str, DiagramModel]:
    two = make_code(2, 1, Boundary.CYCLIC)
    four = make_code(4, 3, Boundary.HARD)
    ten = make_code(10, 3, Boundary.HARD)
    planar = PlanarCode(
        vertical=make_code(6, 3, Boundary.CYCLIC),
        horizontal=make_code(8, 4, Boundary.CYCLIC),
    )
    square = make_gkp(SQRT_PI)
    return {
        # two-level encoding holding |0_L>
        "ladder_two_level": model_ladder(two, encode(two, LogicalAmplitudes(1, 0))),
        # four levels, residues mod 3 written in the cells
        "ladder_mod3": model_ladder(
            four, encode(four, LogicalAmplitudes(1, 0)), mod_labels=True
        ),
        # ten levels, equal superposition over all four peaks
        "ladder_multi_peak": model_ladder(
            ten, encode(ten, LogicalAmplitudes(INV_SQRT2, INV_SQRT2))
        ),
        # the three candidate errors behind syndrome 2
        "ladder_candidates": model_ladder(ten, highlight=[2, 5, 8], mod_labels=True),
        # two-axis grid, spacings 3 (vertical) and 4 (horizontal)
        "grid_mod34": model_grid(planar, encode_planar(planar, LogicalAmplitudes(1, 0))),
        # continuous axis with a 0.6-spacing displacement marked
        "axis_sqrt_pi": model_axis(
            square,
            apply_displacement_cv(
                encode_gkp(square, LogicalAmplitudes(1, 0)), 0.6 * SQRT_PI, 0.0
            ),
        ),
        # crossed continuous axes with a small diagonal displacement
        "plane_sqrt_pi": model_plane(
            square,
            apply_displacement_cv(encode_gkp(square, LogicalAmplitudes(1, 0)), 0.3, -0.2),
        ),
    }
