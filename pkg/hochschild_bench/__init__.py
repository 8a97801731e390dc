"""
HochschildBench - exact Hochschild / singular Hochschild computations for small dg Frobenius algebras

Rational linear algebra in finite degree windows: Hochschild (co)homology, the
Goresky-Hingston product, the Tate-Hochschild cone and its homotopy retract, and
transport of HH_sg along quasi-isomorphisms.
"""

__version__ = "0.3.1"
__author__ = "HochschildBench Team"

from .algebra_io import load_algebra, parse_algebra, parse_morphism
from .frobenius_algebra import FrobeniusAlgebra, casimir, euler_char, validate
from .hochschild_complexes import Window, hh_cohomology, hh_homology
from .tate_singular import gh_table, hh_sg
from .morphism_transport import DgMorphism, gh_invariance_check, transport_iso, validate_morphism
from .run_modes import Command, get_command_from_string

__all__ = [
    "FrobeniusAlgebra",
    "Window",
    "DgMorphism",
    "Command",
    "load_algebra",
    "parse_algebra",
    "parse_morphism",
    "validate",
    "casimir",
    "euler_char",
    "hh_homology",
    "hh_cohomology",
    "hh_sg",
    "gh_table",
    "validate_morphism",
    "transport_iso",
    "gh_invariance_check",
    "get_command_from_string",
]
