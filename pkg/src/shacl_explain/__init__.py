"""Explainable SHACL validation.

Validates RDF data against a SHACL-core subset, builds a justification tree
per violation, retrieves graph context, generates (or cache-retrieves)
multilingual explanations and correction suggestions, and persists them in
a violation knowledge graph keyed by instance-independent signatures.
"""

from .context import DomainContext, RetrievalCaps, assemble_context
from .justify import (
    JustificationNode,
    JustificationTree,
    build_justification_tree,
    tree_to_json,
    tree_to_text,
)
from .kg import ExplanationRecord, KgStats, SchemaError, ViolationKnowledgeGraph
from .pipeline import run_benchmark, run_validation
from .rdf import (
    BlankNode,
    Graph,
    Iri,
    Literal,
    Triple,
    TurtleSyntaxError,
    is_isomorphic,
    parse_turtle,
    serialize_turtle,
)
from .shacl import (
    ConstraintViolation,
    ShapeModel,
    ShapeParseError,
    ViolationType,
    classify_violation_type,
    parse_shapes,
    validate,
)
from .signature import ViolationSignature, make_signature

__version__ = "0.1.0"

__all__ = [
    "BlankNode",
    "ConstraintViolation",
    "DomainContext",
    "ExplanationRecord",
    "Graph",
    "Iri",
    "JustificationNode",
    "JustificationTree",
    "KgStats",
    "Literal",
    "RetrievalCaps",
    "SchemaError",
    "ShapeModel",
    "ShapeParseError",
    "Triple",
    "TurtleSyntaxError",
    "ViolationKnowledgeGraph",
    "ViolationSignature",
    "ViolationType",
    "__version__",
    "assemble_context",
    "build_justification_tree",
    "classify_violation_type",
    "is_isomorphic",
    "make_signature",
    "parse_shapes",
    "parse_turtle",
    "run_benchmark",
    "run_validation",
    "serialize_turtle",
    "tree_to_json",
    "tree_to_text",
    "validate",
]
