"""Decide and map L-space integral surgeries on two-component L-space links."""

from .cable import CableParams, cable_b, cable_knot_alexander, cable_link, cable_link_alexander, t_map
from .catalog import LinkDescriptor, catalog_get, catalog_names, dumps, load_link, loads
from .complex import SurgeryMatrix, build_truncated_complex, is_lspace_surgery, surgery_homology
from .errors import (
    InconsistencyError,
    InvalidParameters,
    LatticeMismatch,
    LSpaceKitError,
    NotLSpace,
    NotLSpaceKnot,
    NotLSpaceLink,
    NotRationalHomologySphere,
    UnknownLink,
)
from .hfun import HFunction1D, HFunction2D, knot_h_from_alexander, link_h_from_alexander, validate_h
from .invariants import LinkInvariants, link_invariants
from .oracle import Verdict, region_map, theorem_verdict
from .poly import HalfInt, LaurentPoly, quantum_factor

__all__ = [
    "CableParams",
    "HFunction1D",
    "HFunction2D",
    "HalfInt",
    "InconsistencyError",
    "InvalidParameters",
    "LSpaceKitError",
    "LatticeMismatch",
    "LaurentPoly",
    "LinkDescriptor",
    "LinkInvariants",
    "NotLSpace",
    "NotLSpaceKnot",
    "NotLSpaceLink",
    "NotRationalHomologySphere",
    "SurgeryMatrix",
    "UnknownLink",
    "Verdict",
    "build_truncated_complex",
    "cable_b",
    "cable_knot_alexander",
    "cable_link",
    "cable_link_alexander",
    "catalog_get",
    "catalog_names",
    "dumps",
    "is_lspace_surgery",
    "knot_h_from_alexander",
    "link_h_from_alexander",
    "link_invariants",
    "load_link",
    "loads",
    "quantum_factor",
    "region_map",
    "surgery_homology",
    "t_map",
    "theorem_verdict",
    "validate_h",
]
