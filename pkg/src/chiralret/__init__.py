"""Resonance energy transfer between chiral molecules in magnetodielectric media."""

from .core import (
    CODATA,
    LFC,
    MCP3,
    VACUUM,
    Constants,
    DegenerateInputError,
    Handedness,
    Medium,
    Molecule,
    RateBreakdown,
    TransferConfig,
    ValidationError,
    Variant,
    make_molecule,
    refractive_index,
    rotatory_over_c,
)
from .discrim import (
    Branch,
    LimitMode,
    Target,
    degree_S,
    media_table,
    midpoint_crossing,
    optimize_real_n,
    s_limits,
    scan_complex_n,
    scan_separation,
)
from .greens import SeparationVector, dual_green, green_tensor, lfc_factors, scalar_green
from .rates import matrix_element, rates_LR

__version__ = "0.1.0"

__all__ = [
    "CODATA", "LFC", "MCP3", "VACUUM", "Branch", "Constants", "DegenerateInputError",
    "Handedness", "LimitMode", "Medium", "Molecule", "RateBreakdown", "SeparationVector",
    "Target", "TransferConfig", "ValidationError", "Variant", "degree_S", "dual_green",
    "green_tensor", "lfc_factors", "make_molecule", "matrix_element", "media_table",
    "midpoint_crossing", "optimize_real_n", "rates_LR", "refractive_index",
    "rotatory_over_c", "s_limits", "scalar_green", "scan_complex_n", "scan_separation",
]
