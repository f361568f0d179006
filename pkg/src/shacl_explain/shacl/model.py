"""Shape model and validation result types."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Union

from ..namespaces import SH, local_name
from ..rdf import Iri, Literal, Term


class ViolationType(Enum):
    CARDINALITY = "CARDINALITY"
    VALUE_TYPE = "VALUE_TYPE"
    VALUE_RANGE = "VALUE_RANGE"
    STRING_BASED = "STRING_BASED"
    VALUE_CONSTRAINT = "VALUE_CONSTRAINT"
    OTHER = "OTHER"


_COMPONENT_TYPES = {
    SH.MinCountConstraintComponent: ViolationType.CARDINALITY,
    SH.MaxCountConstraintComponent: ViolationType.CARDINALITY,
    SH.DatatypeConstraintComponent: ViolationType.VALUE_TYPE,
    SH.ClassConstraintComponent: ViolationType.VALUE_TYPE,
    SH.NodeKindConstraintComponent: ViolationType.VALUE_TYPE,
    SH.MinInclusiveConstraintComponent: ViolationType.VALUE_RANGE,
    SH.MaxInclusiveConstraintComponent: ViolationType.VALUE_RANGE,
    SH.MinExclusiveConstraintComponent: ViolationType.VALUE_RANGE,
    SH.MaxExclusiveConstraintComponent: ViolationType.VALUE_RANGE,
    SH.MinLengthConstraintComponent: ViolationType.STRING_BASED,
    SH.MaxLengthConstraintComponent: ViolationType.STRING_BASED,
    SH.PatternConstraintComponent: ViolationType.STRING_BASED,
    SH.HasValueConstraintComponent: ViolationType.VALUE_CONSTRAINT,
    SH.InConstraintComponent: ViolationType.VALUE_CONSTRAINT,
}

SUPPORTED_COMPONENTS = tuple(_COMPONENT_TYPES)


def classify_violation_type(component: str) -> ViolationType:
    """Bucket a constraint component IRI; unknown components map to OTHER."""
    return _COMPONENT_TYPES.get(component, ViolationType.OTHER)


@dataclass(frozen=True)
class PropertyPath:
    """A predicate path, optionally inverse (value nodes found subject-ward)."""

    predicate: str
    inverse: bool = False

    def canonical(self) -> str:
        return ("^" if self.inverse else "") + self.predicate

    def __str__(self) -> str:
        return self.canonical()


ParameterValue = Union[Term, List[Term]]


@dataclass
class ConstraintDescriptor:
    component: str
    # parameter predicate IRI -> term or term list (e.g. sh:in values)
    parameters: Dict[str, ParameterValue]

    def parameter(self, iri: str) -> Optional[ParameterValue]:
        return self.parameters.get(iri)


@dataclass(frozen=True)
class Target:
    kind: str  # "class" | "node" | "subjects_of" | "objects_of"
    term: Term


@dataclass
class Shape:
    id: Term
    kind: str  # "node" | "property"
    targets: List[Target] = field(default_factory=list)
    constraints: List[ConstraintDescriptor] = field(default_factory=list)
    property_shapes: List["Shape"] = field(default_factory=list)
    path: Optional[PropertyPath] = None
    name: Optional[str] = None
    description: Optional[str] = None
    comment: Optional[str] = None
    messages: List[str] = field(default_factory=list)
    severity: str = SH.Violation

    def label(self) -> str:
        if self.name:
            return self.name
        return self.id.n3()


@dataclass
class ShapeModel:
    shapes: List[Shape] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def shape_by_id(self, shape_id: Term) -> Optional[Shape]:
        for shape in self.shapes:
            if shape.id == shape_id:
                return shape
            for child in shape.property_shapes:
                if child.id == shape_id:
                    return child
        return None


@dataclass
class ConstraintViolation:
    focus_node: Term
    source_shape: Term
    constraint_component: str
    result_path: Optional[PropertyPath]
    value: Optional[Term]
    severity: str
    message: str
    violation_type: ViolationType
    constraint_parameters: Dict[str, ParameterValue] = field(default_factory=dict)
    focus_node_types: List[str] = field(default_factory=list)

    def sort_key(self) -> tuple:
        return (
            self.focus_node.n3(),
            self.source_shape.n3(),
            self.constraint_component,
            self.result_path.canonical() if self.result_path else "",
            self.value.n3() if self.value is not None else "",
        )

    def to_dict(self) -> dict:
        def render(value: ParameterValue):
            if isinstance(value, list):
                return [term.n3() for term in value]
            return value.n3()

        return {
            "focus_node": self.focus_node.n3(),
            "source_shape": self.source_shape.n3(),
            "constraint_component": self.constraint_component,
            "result_path": self.result_path.canonical() if self.result_path else None,
            "value": self.value.n3() if self.value is not None else None,
            "severity": self.severity,
            "message": self.message,
            "violation_type": self.violation_type.value,
            "constraint_parameters": {
                iri: render(value) for iri, value in sorted(self.constraint_parameters.items())
            },
            "focus_node_types": list(self.focus_node_types),
        }

    def component_name(self) -> str:
        return local_name(self.constraint_component)


def parameter_int(value: ParameterValue) -> int:
    """Integer value of a count/length parameter literal."""
    if isinstance(value, Literal):
        return int(value.lexical)
    raise TypeError(f"expected integer literal, got {value!r}")


def parameter_str(value: ParameterValue) -> str:
    if isinstance(value, Literal):
        return value.lexical
    if isinstance(value, Iri):
        return value.value
    raise TypeError(f"expected literal or IRI, got {value!r}")
