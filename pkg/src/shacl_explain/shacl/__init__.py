"""SHACL-core subset: shape model, shapes parser, validation engine."""

from .engine import check_constraint, class_instances, focus_nodes, validate, value_nodes
from .model import (
    SUPPORTED_COMPONENTS,
    ConstraintDescriptor,
    ConstraintViolation,
    PropertyPath,
    Shape,
    ShapeModel,
    Target,
    ViolationType,
    classify_violation_type,
)
from .parse import ShapeParseError, UnsupportedPathError, parse_shapes

__all__ = [
    "SUPPORTED_COMPONENTS",
    "ConstraintDescriptor",
    "ConstraintViolation",
    "PropertyPath",
    "Shape",
    "ShapeModel",
    "ShapeParseError",
    "Target",
    "UnsupportedPathError",
    "ViolationType",
    "check_constraint",
    "class_instances",
    "classify_violation_type",
    "focus_nodes",
    "parse_shapes",
    "validate",
    "value_nodes",
]
