"""Covering radius of binary codes and limited-independence distributions versus dual distance."""

from .bits import BitMatrix, BitVector, CubeTooLarge
from .codes import LinearCode, dual_bch, extend_code, hamming_code, read_code
from .covering import CoverReport, covering_radius, eps_covering_radius_exact, uncovered_fraction
from .spectral import SupportDistribution

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVector",
    "CoverReport",
    "CubeTooLarge",
    "LinearCode",
    "SupportDistribution",
    "covering_radius",
    "dual_bch",
    "eps_covering_radius_exact",
    "extend_code",
    "hamming_code",
    "read_code",
    "uncovered_fraction",
]
