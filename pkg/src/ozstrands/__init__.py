"""Strands algebras, the bordered algebras B(n, k, S) and the map between them."""

from .combinatorics import classify_lines, enumerate_istates, is_far, weight_v
from .errors import ConsistencyError, DomainError, InvalidGenerator, NotationError, ParameterError
from .grading_groups import GPrime, deg_prime, psi_refine, theta
from .notation import dumps, format_element, loads, parse_element
from .osz import OSElement, OSGen, enumerate_os_basis, evaluate_path, grade_os, mul_os
from .phi import phi_basis, phi_closed_form, phi_elem, relation_check
from .render import render_ascii
from .splitting import (graded_piece, homology_dims, predicted_dims, quasi_iso_check,
                        split_psi, unsplit_phi)
from .strands import (Context, Element, Gen, Grading, all_generators, diff, element,
                      enumerate_basis, grade, make_context, mul, o_sym, rho, validate_generator)

__version__ = "0.1.0"

__all__ = [
    "classify_lines", "enumerate_istates", "is_far", "weight_v",
    "ConsistencyError", "DomainError", "InvalidGenerator", "NotationError", "ParameterError",
    "GPrime", "deg_prime", "psi_refine", "theta",
    "dumps", "format_element", "loads", "parse_element",
    "OSElement", "OSGen", "enumerate_os_basis", "evaluate_path", "grade_os", "mul_os",
    "phi_basis", "phi_closed_form", "phi_elem", "relation_check",
    "render_ascii",
    "graded_piece", "homology_dims", "predicted_dims", "quasi_iso_check", "split_psi",
    "unsplit_phi",
    "Context", "Element", "Gen", "Grading", "all_generators", "diff", "element",
    "enumerate_basis", "grade", "make_context", "mul", "o_sym", "rho", "validate_generator",
]
