"""Shapes graph -> ShapeModel.

Supports the 14 core constraint components plus predicate and inverse
paths. SPARQL constraints, logical combinators, and shape-valued
constraints are skipped with a warning; richer path expressions are a hard
error so they cannot silently validate as something else.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Set

from ..namespaces import RDF, RDFS, SH, XSD
from ..rdf import BlankNode, Graph, Iri, Literal, Term
from .model import (
    ConstraintDescriptor,
    PropertyPath,
    Shape,
    ShapeModel,
    Target,
)


class ShapeParseError(ValueError):
    def __init__(self, message: str, shape_id: Optional[Term] = None):
        if shape_id is not None:
            message = f"{message} (shape {shape_id.n3()})"
        super().__init__(message)
        self.shape_id = shape_id


class UnsupportedPathError(ShapeParseError):
    """Sequence, alternative, and repetition paths are not supported."""


_TARGET_PREDICATES = {
    SH.targetClass: "class",
    SH.targetNode: "node",
    SH.targetSubjectsOf: "subjects_of",
    SH.targetObjectsOf: "objects_of",
}

# parameter predicate -> constraint component
_PARAMETER_COMPONENTS = {
    SH.minCount: SH.MinCountConstraintComponent,
    SH.maxCount: SH.MaxCountConstraintComponent,
    SH.datatype: SH.DatatypeConstraintComponent,
    getattr(SH, "class"): SH.ClassConstraintComponent,
    SH.nodeKind: SH.NodeKindConstraintComponent,
    SH.minLength: SH.MinLengthConstraintComponent,
    SH.maxLength: SH.MaxLengthConstraintComponent,
    SH.pattern: SH.PatternConstraintComponent,
    SH.minInclusive: SH.MinInclusiveConstraintComponent,
    SH.maxInclusive: SH.MaxInclusiveConstraintComponent,
    SH.minExclusive: SH.MinExclusiveConstraintComponent,
    SH.maxExclusive: SH.MaxExclusiveConstraintComponent,
    SH.hasValue: SH.HasValueConstraintComponent,
    getattr(SH, "in"): SH.InConstraintComponent,
}

_COUNT_PARAMETERS = {SH.minCount, SH.maxCount, SH.minLength, SH.maxLength}
_CARDINALITY_PARAMETERS = {SH.minCount, SH.maxCount}

_UNSUPPORTED_PREDICATES = {
    SH.sparql: "sh:sparql",
    getattr(SH, "and"): "sh:and",
    getattr(SH, "or"): "sh:or",
    getattr(SH, "not"): "sh:not",
    SH.xone: "sh:xone",
    SH.node: "sh:node",
    SH.qualifiedValueShape: "sh:qualifiedValueShape",
    SH.closed: "sh:closed",
}

_NODE_KINDS = {
    SH.IRI,
    SH.BlankNode,
    SH.Literal,
    SH.BlankNodeOrIRI,
    SH.BlankNodeOrLiteral,
    SH.IRIOrLiteral,
}

_INTEGER_DATATYPES = {XSD.integer, XSD.int, XSD.long, XSD.short, XSD.byte,
                      XSD.nonNegativeInteger, XSD.positiveInteger}


def parse_shapes(shapes_graph: Graph) -> ShapeModel:
    return _ShapesReader(shapes_graph).read()


class _ShapesReader:
    def __init__(self, graph: Graph):
        self.graph = graph
        self.warnings: List[str] = []
        self._parsed: Dict[Term, Shape] = {}

    def read(self) -> ShapeModel:
        top_level = self._top_level_ids()
        shapes = [self._parse_shape(shape_id) for shape_id in top_level]
        return ShapeModel(shapes=shapes, warnings=self.warnings)

    def _top_level_ids(self) -> List[Term]:
        ids: Set[Term] = set()
        for t in self.graph.match(None, Iri(RDF.type), Iri(SH.NodeShape)):
            ids.add(t.subject)
        for t in self.graph.match(None, Iri(RDF.type), Iri(SH.PropertyShape)):
            ids.add(t.subject)
        for predicate in _TARGET_PREDICATES:
            for t in self.graph.match(None, Iri(predicate), None):
                ids.add(t.subject)
        # Nested property shapes stay children unless independently targeted.
        nested = {t.object for t in self.graph.match(None, Iri(SH.property), None)}
        targeted = {
            t.subject
            for predicate in _TARGET_PREDICATES
            for t in self.graph.match(None, Iri(predicate), None)
        }
        ids -= nested - targeted
        return sorted(ids, key=lambda term: term.n3())

    def _parse_shape(self, shape_id: Term) -> Shape:
        if shape_id in self._parsed:
            return self._parsed[shape_id]
        path = self._parse_path(shape_id)
        shape = Shape(id=shape_id, kind="property" if path else "node", path=path)
        self._parsed[shape_id] = shape

        shape.targets = self._parse_targets(shape_id)
        shape.constraints = self._parse_constraints(shape_id, shape)
        shape.name = self._string_value(shape_id, SH.name)
        shape.description = self._string_value(shape_id, SH.description)
        shape.comment = self._string_value(shape_id, RDFS.comment)
        shape.messages = [
            obj.lexical
            for obj in self.graph.objects(shape_id, Iri(SH.message))
            if isinstance(obj, Literal)
        ]
        severity = self.graph.value(shape_id, Iri(SH.severity))
        if isinstance(severity, Iri):
            shape.severity = severity.value

        for warned_iri, label in _UNSUPPORTED_PREDICATES.items():
            if self.graph.objects(shape_id, Iri(warned_iri)):
                self.warnings.append(
                    f"unsupported constraint {label} on shape {shape_id.n3()} ignored"
                )

        children = self.graph.objects(shape_id, Iri(SH.property))
        if children and shape.kind == "property":
            self.warnings.append(
                f"nested sh:property on property shape {shape_id.n3()} ignored"
            )
        elif children:
            for child_id in children:
                child = self._parse_shape(child_id)
                if child.kind != "property":
                    raise ShapeParseError("sh:property value lacks sh:path", child_id)
                shape.property_shapes.append(child)
        if shape.kind == "property" and shape.path is None:
            raise ShapeParseError("property shape without sh:path", shape_id)
        return shape

    def _parse_targets(self, shape_id: Term) -> List[Target]:
        targets: List[Target] = []
        for predicate, kind in sorted(_TARGET_PREDICATES.items()):
            for obj in self.graph.objects(shape_id, Iri(predicate)):
                targets.append(Target(kind=kind, term=obj))
        return targets

    def _parse_path(self, shape_id: Term) -> Optional[PropertyPath]:
        paths = self.graph.objects(shape_id, Iri(SH.path))
        if not paths:
            # Typed property shapes must carry a path even when empty otherwise.
            types = self.graph.objects(shape_id, Iri(RDF.type))
            if Iri(SH.PropertyShape) in types:
                raise ShapeParseError("property shape without sh:path", shape_id)
            return None
        if len(paths) > 1:
            raise ShapeParseError("multiple sh:path values", shape_id)
        path = paths[0]
        if isinstance(path, Iri):
            return PropertyPath(path.value)
        if isinstance(path, BlankNode):
            inverse = self.graph.objects(path, Iri(SH.inversePath))
            if inverse:
                if len(inverse) == 1 and isinstance(inverse[0], Iri):
                    return PropertyPath(inverse[0].value, inverse=True)
                raise UnsupportedPathError("sh:inversePath of a non-IRI path", shape_id)
            for unsupported in (SH.alternativePath, SH.zeroOrMorePath,
                                SH.oneOrMorePath, SH.zeroOrOnePath):
                if self.graph.objects(path, Iri(unsupported)):
                    raise UnsupportedPathError(
                        f"unsupported path expression sh:{unsupported.rsplit('#')[-1]}",
                        shape_id,
                    )
            if self.graph.objects(path, Iri(RDF.first)):
                raise UnsupportedPathError("unsupported sequence path", shape_id)
        raise ShapeParseError("malformed sh:path value", shape_id)

    def _parse_constraints(self, shape_id: Term, shape: Shape) -> List[ConstraintDescriptor]:
        constraints: List[ConstraintDescriptor] = []
        for parameter, component in _PARAMETER_COMPONENTS.items():
            values = self.graph.objects(shape_id, Iri(parameter))
            if not values:
                continue
            if len(values) > 1:
                raise ShapeParseError(f"multiple values for <{parameter}>", shape_id)
            if parameter in _CARDINALITY_PARAMETERS and shape.path is None:
                raise ShapeParseError(
                    f"<{parameter}> requires a property shape with sh:path", shape_id
                )
            value = self._check_parameter(shape_id, parameter, values[0])
            parameters = {parameter: value}
            if parameter == SH.pattern:
                flags = self.graph.value(shape_id, Iri(SH.flags))
                if flags is not None:
                    if not isinstance(flags, Literal):
                        raise ShapeParseError("sh:flags must be a string literal", shape_id)
                    parameters[SH.flags] = flags
            constraints.append(ConstraintDescriptor(component=component, parameters=parameters))
        constraints.sort(key=lambda c: c.component)
        return constraints

    def _check_parameter(self, shape_id: Term, parameter: str, value: Term):
        if parameter in _COUNT_PARAMETERS:
            ok = (
                isinstance(value, Literal)
                and value.datatype in _INTEGER_DATATYPES
                and value.lexical.lstrip("+-").isdigit()
                and int(value.lexical) >= 0
            )
            if not ok:
                raise ShapeParseError(
                    f"<{parameter}> must be a non-negative integer, got {value.n3()}",
                    shape_id,
                )
            return value
        if parameter in (SH.datatype, getattr(SH, "class"), SH.nodeKind):
            if not isinstance(value, Iri):
                raise ShapeParseError(f"<{parameter}> must be an IRI", shape_id)
            if parameter == SH.nodeKind and value.value not in _NODE_KINDS:
                raise ShapeParseError(f"unknown sh:nodeKind {value.n3()}", shape_id)
            return value
        if parameter == SH.pattern:
            if not isinstance(value, Literal):
                raise ShapeParseError("sh:pattern must be a string literal", shape_id)
            return value
        if parameter in (SH.minInclusive, SH.maxInclusive, SH.minExclusive, SH.maxExclusive):
            if not isinstance(value, Literal):
                raise ShapeParseError(f"<{parameter}> must be a literal", shape_id)
            return value
        if parameter == getattr(SH, "in"):
            try:
                items = self.graph.rdf_list(value)
            except ValueError as exc:
                raise ShapeParseError(f"sh:in is not a well-formed list: {exc}", shape_id)
            if not items:
                raise ShapeParseError("sh:in list must not be empty", shape_id)
            return items
        return value  # sh:hasValue accepts any term

    def _string_value(self, shape_id: Term, predicate: str) -> Optional[str]:
        values = [
            obj.lexical
            for obj in self.graph.objects(shape_id, Iri(predicate))
            if isinstance(obj, Literal)
        ]
        return values[0] if values else None
