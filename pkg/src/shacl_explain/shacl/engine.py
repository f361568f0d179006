"""SHACL-core validation over the parsed shape model.

Validation is a pure function of (data graph, shape model): focus nodes
come from target declarations, value nodes from the property path, and
each supported component is evaluated per SHACL-core semantics. No
inferencing is applied; class membership follows rdf:type plus
rdfs:subClassOf links present in the data graph itself.
"""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from typing import List, Optional, Set, Tuple

from ..namespaces import RDF, RDFS, SH, XSD, local_name
from ..rdf import BlankNode, Graph, Iri, Literal, Term
from .model import (
    ConstraintDescriptor,
    ConstraintViolation,
    PropertyPath,
    Shape,
    ShapeModel,
    classify_violation_type,
    parameter_int,
)

NUMERIC_DATATYPES = {
    XSD.integer, XSD.decimal, XSD.float, XSD.double,
    XSD.long, XSD.int, XSD.short, XSD.byte,
    XSD.nonNegativeInteger, XSD.positiveInteger,
    XSD.nonPositiveInteger, XSD.negativeInteger,
    XSD.unsignedLong, XSD.unsignedInt, XSD.unsignedShort, XSD.unsignedByte,
}

NON_COMPARABLE_MESSAGE = "non-comparable value"


def numeric_value(term: Optional[Term]) -> Optional[Decimal]:
    """Value-space number of a numeric literal, else None."""
    if not isinstance(term, Literal) or term.datatype not in NUMERIC_DATATYPES:
        return None
    try:
        value = Decimal(term.lexical)
    except InvalidOperation:
        return None
    if value.is_nan():
        return None
    return value


def class_instances(data: Graph, cls: Iri) -> Set[Term]:
    """Nodes typed with ``cls`` or any transitive subclass declared in the data."""
    classes: Set[Term] = {cls}
    frontier = [cls]
    while frontier:
        current = frontier.pop()
        for sub in data.subjects(Iri(RDFS.subClassOf), current):
            if sub not in classes:
                classes.add(sub)
                frontier.append(sub)
    instances: Set[Term] = set()
    for c in classes:
        instances.update(data.subjects(Iri(RDF.type), c))
    return instances


def focus_nodes(data: Graph, shape: Shape) -> List[Term]:
    nodes: Set[Term] = set()
    for target in shape.targets:
        if target.kind == "class" and isinstance(target.term, Iri):
            nodes.update(class_instances(data, target.term))
        elif target.kind == "node":
            nodes.add(target.term)
        elif target.kind == "subjects_of":
            nodes.update(t.subject for t in data.match(None, target.term, None))
        elif target.kind == "objects_of":
            nodes.update(t.object for t in data.match(None, target.term, None))
    return sorted(nodes, key=lambda t: t.n3())


def value_nodes(data: Graph, focus: Term, path: Optional[PropertyPath]) -> List[Term]:
    """Values reachable from ``focus`` along ``path``; the focus itself if none."""
    if path is None:
        return [focus]
    predicate = Iri(path.predicate)
    if path.inverse:
        return data.subjects(predicate, focus)
    if isinstance(focus, Literal):
        return []
    return data.objects(focus, predicate)


# --- per-component checks ----------------------------------------------------
# Each check returns a list of (offending value or None, failure detail).

def _check_component(
    data: Graph,
    descriptor: ConstraintDescriptor,
    values: List[Term],
) -> List[Tuple[Optional[Term], str]]:
    component = descriptor.component
    params = descriptor.parameters

    if component == SH.MinCountConstraintComponent:
        minimum = parameter_int(params[SH.minCount])
        if len(values) < minimum:
            return [(None, f"has {len(values)} values, requires at least {minimum}")]
        return []

    if component == SH.MaxCountConstraintComponent:
        maximum = parameter_int(params[SH.maxCount])
        if len(values) > maximum:
            return [(None, f"has {len(values)} values, allows at most {maximum}")]
        return []

    if component == SH.DatatypeConstraintComponent:
        required = params[SH.datatype].value
        return [
            (v, f"datatype is not <{required}>")
            for v in values
            if not (isinstance(v, Literal) and v.datatype == required)
        ]

    if component == SH.ClassConstraintComponent:
        required = params[getattr(SH, "class")]
        instances = class_instances(data, required)
        return [
            (v, f"is not an instance of <{required.value}>")
            for v in values
            if isinstance(v, Literal) or v not in instances
        ]

    if component == SH.NodeKindConstraintComponent:
        kind = params[SH.nodeKind].value
        allowed = {
            SH.IRI: (Iri,),
            SH.BlankNode: (BlankNode,),
            SH.Literal: (Literal,),
            SH.BlankNodeOrIRI: (BlankNode, Iri),
            SH.BlankNodeOrLiteral: (BlankNode, Literal),
            SH.IRIOrLiteral: (Iri, Literal),
        }[kind]
        return [
            (v, f"node kind is not {local_name(kind)}")
            for v in values
            if not isinstance(v, allowed)
        ]

    if component in (SH.MinLengthConstraintComponent, SH.MaxLengthConstraintComponent):
        is_min = component == SH.MinLengthConstraintComponent
        bound = parameter_int(params[SH.minLength if is_min else SH.maxLength])
        failures = []
        for v in values:
            text = _string_form(v)
            if text is None:
                failures.append((v, "blank node has no string form"))
            elif is_min and len(text) < bound:
                failures.append((v, f"length {len(text)} is below minimum {bound}"))
            elif not is_min and len(text) > bound:
                failures.append((v, f"length {len(text)} exceeds maximum {bound}"))
        return failures

    if component == SH.PatternConstraintComponent:
        pattern = params[SH.pattern].lexical
        flag_text = params[SH.flags].lexical if SH.flags in params else ""
        flags = 0
        for char, flag in (("i", re.IGNORECASE), ("m", re.MULTILINE), ("s", re.DOTALL)):
            if char in flag_text:
                flags |= flag
        compiled = re.compile(pattern, flags)
        failures = []
        for v in values:
            text = _string_form(v)
            if text is None or not compiled.search(text):
                failures.append((v, f"does not match pattern {pattern!r}"))
        return failures

    if component in (
        SH.MinInclusiveConstraintComponent,
        SH.MaxInclusiveConstraintComponent,
        SH.MinExclusiveConstraintComponent,
        SH.MaxExclusiveConstraintComponent,
    ):
        parameter = {
            SH.MinInclusiveConstraintComponent: SH.minInclusive,
            SH.MaxInclusiveConstraintComponent: SH.maxInclusive,
            SH.MinExclusiveConstraintComponent: SH.minExclusive,
            SH.MaxExclusiveConstraintComponent: SH.maxExclusive,
        }[component]
        bound = numeric_value(params[parameter])
        failures = []
        for v in values:
            number = numeric_value(v)
            if number is None or bound is None:
                failures.append((v, NON_COMPARABLE_MESSAGE))
            elif component == SH.MinInclusiveConstraintComponent and not number >= bound:
                failures.append((v, f"{number} is below minimum {bound}"))
            elif component == SH.MaxInclusiveConstraintComponent and not number <= bound:
                failures.append((v, f"{number} exceeds maximum {bound}"))
            elif component == SH.MinExclusiveConstraintComponent and not number > bound:
                failures.append((v, f"{number} is not above {bound}"))
            elif component == SH.MaxExclusiveConstraintComponent and not number < bound:
                failures.append((v, f"{number} is not below {bound}"))
        return failures

    if component == SH.HasValueConstraintComponent:
        required = params[SH.hasValue]
        if required not in values:
            # No single offending value exists; report once per focus node.
            return [(None, f"required value {required.n3()} missing")]
        return []

    if component == SH.InConstraintComponent:
        allowed = params[getattr(SH, "in")]
        return [(v, "value not in the allowed list") for v in values if v not in allowed]

    return [(None, f"unsupported component <{component}>")]


def _string_form(term: Term) -> Optional[str]:
    if isinstance(term, Literal):
        return term.lexical
    if isinstance(term, Iri):
        return term.value
    return None


def check_constraint(
    data: Graph,
    shape: Shape,
    descriptor: ConstraintDescriptor,
    focus: Term,
) -> List[ConstraintViolation]:
    """Evaluate one constraint of one shape against one focus node."""
    values = value_nodes(data, focus, shape.path)
    failures = _check_component(data, descriptor, values)
    types = sorted(
        obj.value for obj in data.objects(focus, Iri(RDF.type)) if isinstance(obj, Iri)
    )
    violations = []
    for value, detail in failures:
        message = (
            NON_COMPARABLE_MESSAGE
            if detail == NON_COMPARABLE_MESSAGE
            else _message_for(shape, descriptor)
        )
        violations.append(
            ConstraintViolation(
                focus_node=focus,
                source_shape=shape.id,
                constraint_component=descriptor.component,
                result_path=shape.path,
                value=value,
                severity=shape.severity,
                message=message,
                violation_type=classify_violation_type(descriptor.component),
                constraint_parameters=dict(descriptor.parameters),
                focus_node_types=types,
            )
        )
    return violations


def _message_for(shape: Shape, descriptor: ConstraintDescriptor) -> str:
    if shape.messages:
        return sorted(shape.messages)[0]
    where = shape.path.canonical() if shape.path else "focus node"
    return f"Constraint {local_name(descriptor.component)} violated on {where}"


def validate(data: Graph, model: ShapeModel) -> List[ConstraintViolation]:
    """All violations, ordered by focus node, then shape id, then component."""
    violations: List[ConstraintViolation] = []
    for shape in model.shapes:
        for focus in focus_nodes(data, shape):
            for descriptor in shape.constraints:
                violations.extend(check_constraint(data, shape, descriptor, focus))
            for child in shape.property_shapes:
                for descriptor in child.constraints:
                    violations.extend(check_constraint(data, child, descriptor, focus))
    violations.sort(key=ConstraintViolation.sort_key)
    return violations
