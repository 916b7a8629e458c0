"""Exact cycle spaces, defect invariants and Gram operators for
tensor-labeled hypergraphs over Q and prime fields."""

__version__ = "0.1.0"

from .field import FieldSpec, PrimeField, QQ, Rationals, parse_field
from .hypergraph import (
    AnalysisReport,
    DirectedEdge,
    DirectedMultisetEdge,
    DirectedOrderedEdge,
    MultisetEdge,
    OrderedEdge,
    RawEdge,
    SymQuadEdge,
    TensorHypergraph,
    analyze,
    build,
    cycle_decomposition,
    minimality_check,
    star_defect,
    vanishing_audit,
)
from .ohg import OrientedHypergraph, kernel_equivalence, oh_dimension_report, to_tensor_hg

__all__ = [
    "__version__",
    "AnalysisReport",
    "DirectedEdge",
    "DirectedMultisetEdge",
    "DirectedOrderedEdge",
    "FieldSpec",
    "MultisetEdge",
    "OrderedEdge",
    "OrientedHypergraph",
    "PrimeField",
    "QQ",
    "Rationals",
    "RawEdge",
    "SymQuadEdge",
    "TensorHypergraph",
    "analyze",
    "build",
    "cycle_decomposition",
    "kernel_equivalence",
    "minimality_check",
    "oh_dimension_report",
    "parse_field",
    "star_defect",
    "to_tensor_hg",
    "vanishing_audit",
]
