"""Iterated discrete averaging of cyclic rhythms.

Repeatedly replacing each onset by the (cyclic, integer) midpoint of itself
and the next onset drives any rhythm to a maximally even one in finitely many
steps. This package implements the maps involved, classifies their terminal
behaviour, and ships brute-force checks of the underlying identities.
"""

from .core import (
    AscendingCycle,
    OnsetRhythm,
    PolygonView,
    Residue,
    cycle_to_rhythm,
    jumping_number,
    rhythm_to_cycle,
)
from .dynamics import (
    OrbitReport,
    TerminalClass,
    block_erosion_check,
    classify,
    condition_c_witness,
    decompose_blocks,
    distance_to_cycle,
    orbit,
    orbit_labeled,
)
from .errors import CapExceeded, InvariantViolation, ParseError, RhythmError, UsageError
from .transforms import DifferenceVector, dav_A, dav_fc, diff, rhythm_step

__all__ = [
    "AscendingCycle", "OnsetRhythm", "PolygonView", "Residue",
    "cycle_to_rhythm", "jumping_number", "rhythm_to_cycle",
    "OrbitReport", "TerminalClass", "block_erosion_check", "classify",
    "condition_c_witness", "decompose_blocks", "distance_to_cycle", "orbit", "orbit_labeled",
    "CapExceeded", "InvariantViolation", "ParseError", "RhythmError", "UsageError",
    "DifferenceVector", "dav_A", "dav_fc", "diff", "rhythm_step",
]
__version__ = "0.1.0"
