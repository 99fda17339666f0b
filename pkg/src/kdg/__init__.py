"""Exact invariants of weighted dual graphs of normal surface singularities.

The package computes the numerical canonical cycle and -K^2 in exact
rational arithmetic, classifies the easy cases, verifies the identities
governing (-2)-chain insertion, evaluates string-stretching limits, and
enumerates small admissible graphs.
"""

from .errors import (
    InternalCheckError,
    InvalidGraphError,
    KdgError,
    NotNegativeDefiniteError,
    PreconditionError,
    SingularLimitError,
)
from .families import (
    FamilySpec,
    closed_form_k2,
    expected_limit,
    family_names,
    family_spec,
    generate,
    stretch_descriptor,
    stretchable_parameters,
    two_curve_coefficient,
)
from .graph import (
    Edge,
    ValidationReport,
    VertexData,
    WeightedDualGraph,
    adjunction_degrees,
    build_graph,
    connected_components,
    graph_to_json,
    graph_to_obj,
    intersection_matrix,
    is_admissible,
    is_connected,
    load_graph,
    parse_graph_json,
    parse_graph_obj,
    subgraph,
    to_dot,
    validate,
)
from .invariants import (
    BoundCheck,
    Cycle,
    InvariantReport,
    bound_checks,
    canonical_cycle,
    classify,
    cycle_degrees,
    cycle_pa,
    fundamental_cycle,
    invariant_report,
    k_squared,
    numerical_index,
    pa_max_bounded,
    report_to_obj,
    report_to_text,
)
from .enumeration import (
    EnumBounds,
    SpectrumEntry,
    canonical_encoding,
    enumerate_admissible,
    enumerate_encodings,
    graph_from_encoding,
    random_admissible,
    spectrum_report,
)
from .rational import UNBOUNDED, rat_decimal, rat_str
from .transforms import (
    InsertionIdentityReport,
    InsertionSite,
    StringDescriptor,
    contract_string,
    contracted_indices,
    detect_strings,
    find_sites,
    insert_minus2,
    limit_k_squared,
    mobius_limit_crosscheck,
    verify_insertion,
    with_string_length,
)

__version__ = "0.1.0"

__all__ = [
    "BoundCheck",
    "Cycle",
    "Edge",
    "EnumBounds",
    "FamilySpec",
    "InsertionIdentityReport",
    "InsertionSite",
    "InternalCheckError",
    "InvalidGraphError",
    "InvariantReport",
    "KdgError",
    "NotNegativeDefiniteError",
    "PreconditionError",
    "SingularLimitError",
    "SpectrumEntry",
    "StringDescriptor",
    "UNBOUNDED",
    "ValidationReport",
    "VertexData",
    "WeightedDualGraph",
    "adjunction_degrees",
    "bound_checks",
    "build_graph",
    "canonical_cycle",
    "canonical_encoding",
    "classify",
    "closed_form_k2",
    "connected_components",
    "contract_string",
    "contracted_indices",
    "cycle_degrees",
    "cycle_pa",
    "detect_strings",
    "enumerate_admissible",
    "enumerate_encodings",
    "expected_limit",
    "family_names",
    "family_spec",
    "find_sites",
    "fundamental_cycle",
    "generate",
    "graph_from_encoding",
    "graph_to_json",
    "graph_to_obj",
    "insert_minus2",
    "intersection_matrix",
    "invariant_report",
    "is_admissible",
    "is_connected",
    "k_squared",
    "limit_k_squared",
    "load_graph",
    "mobius_limit_crosscheck",
    "numerical_index",
    "pa_max_bounded",
    "parse_graph_json",
    "parse_graph_obj",
    "random_admissible",
    "rat_decimal",
    "rat_str",
    "report_to_obj",
    "report_to_text",
    "spectrum_report",
    "stretch_descriptor",
    "stretchable_parameters",
    "subgraph",
    "to_dot",
    "two_curve_coefficient",
    "validate",
    "verify_insertion",
    "with_string_length",
]
