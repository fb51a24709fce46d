"""Homological Kauffman brackets and Jones-Krushkal polynomials of virtual links.

Diagrams are given as signed Gauss codes and realized on their minimal
carrier surface; every invariant is computed exactly by state sums.
"""

from .gauss import (
    Diagram,
    GaussCode,
    GaussCodeError,
    add_kink,
    add_rm2,
    horizontal_mirror,
    is_alternating,
    is_split,
    parse_link,
    r_parallel,
    split_components,
    vertical_mirror,
    writhe,
)
from .invariants import (
    InvariantReport,
    NotCheckerboardError,
    adequacy,
    bracket,
    determinant,
    jones,
    jones_krushkal,
    reduced_jk,
    report,
)
from .poly import BracketPoly, TPoly
from .states import StateCapError, enumerate_states, state_data
from .surface import build_surface, homology, is_checkerboard, nugatory_crossings

__version__ = "0.1.0"

__all__ = [
    "BracketPoly",
    "Diagram",
    "GaussCode",
    "GaussCodeError",
    "InvariantReport",
    "NotCheckerboardError",
    "StateCapError",
    "TPoly",
    "add_kink",
    "add_rm2",
    "adequacy",
    "bracket",
    "build_surface",
    "determinant",
    "enumerate_states",
    "homology",
    "horizontal_mirror",
    "is_alternating",
    "is_checkerboard",
    "is_split",
    "jones",
    "jones_krushkal",
    "nugatory_crossings",
    "parse_link",
    "r_parallel",
    "reduced_jk",
    "report",
    "split_components",
    "state_data",
    "vertical_mirror",
    "writhe",
]
