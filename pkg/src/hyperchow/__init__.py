"""Exact computation of orbifold Chow rings of stacky hyperplane arrangements."""

from .arrangement import StackyArrangement, ValidationReport, validate_data
from .boxes import BoxElement, enumerate_box
from .inertia import quotient_arrangement
from .io import InputDocument, load_fixture, parse, parse_text
from .lawrence import hypertoric_ideal, lawrence_fan
from .multifan import MultiFan
from .orbring import OrbifoldChowRing, RingElement, presentation
from .zlattice import FgAbGroup, GroupHom, gale_dual, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "StackyArrangement", "ValidationReport", "validate_data", "BoxElement", "enumerate_box",
    "quotient_arrangement", "InputDocument", "load_fixture", "parse", "parse_text",
    "hypertoric_ideal", "lawrence_fan", "MultiFan", "OrbifoldChowRing", "RingElement",
    "presentation", "FgAbGroup", "GroupHom", "gale_dual", "smith_normal_form",
]
