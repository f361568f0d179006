"""Justification trees: a symbolic trace of why a violation holds.

Every tree has a conclusion root with three children: a premise (what the
shape requires, evidenced by shapes-graph triples), an observation (what
the data actually says, evidenced by data-graph triples touching the focus
node), and an inference (the failing comparison). One template per
violation type, plus a fallback.

Statements are English regardless of the requested explanation language;
the tree is the symbolic trace and translation happens at generation time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from .namespaces import SH, local_name
from .rdf import Graph, Iri, Literal, Term, Triple, term_from_n3
from .shacl.engine import value_nodes
from .shacl.model import ConstraintViolation, ViolationType, parameter_int

EVIDENCE_CAP = 20


class NodeKind(Enum):
    CONCLUSION = "CONCLUSION"
    PREMISE = "PREMISE"
    OBSERVATION = "OBSERVATION"
    INFERENCE = "INFERENCE"


@dataclass
class JustificationNode:
    kind: NodeKind
    statement: str
    evidence: List[Triple] = field(default_factory=list)
    children: List["JustificationNode"] = field(default_factory=list)


@dataclass
class JustificationTree:
    root: JustificationNode
    violation: ConstraintViolation

    def nodes(self) -> List[JustificationNode]:
        out: List[JustificationNode] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(reversed(node.children))
        return out


def _capped(statement: str, evidence: List[Triple]) -> Tuple[str, List[Triple]]:
    if len(evidence) <= EVIDENCE_CAP:
        return statement, evidence
    note = f" (evidence truncated to {EVIDENCE_CAP} of {len(evidence)} triples)"
    return statement + note, evidence[:EVIDENCE_CAP]


def _node(kind: NodeKind, statement: str, evidence: Optional[List[Triple]] = None) -> JustificationNode:
    statement, evidence = _capped(statement, evidence or [])
    return JustificationNode(kind=kind, statement=statement, evidence=evidence)


def _path_triples(data: Graph, violation: ConstraintViolation) -> List[Triple]:
    path = violation.result_path
    if path is None:
        return []
    predicate = Iri(path.predicate)
    if path.inverse:
        return data.match(None, predicate, violation.focus_node)
    return data.match(violation.focus_node, predicate, None)


def _value_triple(data: Graph, violation: ConstraintViolation) -> List[Triple]:
    """The data triple(s) linking the focus node to the offending value."""
    if violation.value is None:
        return []
    path = violation.result_path
    if path is None:
        # Node-shape constraint: the focus itself is the value; cite its types.
        return data.match(violation.focus_node, Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"), None)
    predicate = Iri(path.predicate)
    if path.inverse:
        return data.match(violation.value, predicate, violation.focus_node)
    return data.match(violation.focus_node, predicate, violation.value)


def _where(violation: ConstraintViolation) -> str:
    return violation.result_path.canonical() if violation.result_path else "the focus node"


def _param(violation: ConstraintViolation, parameter: str) -> Optional[Term]:
    value = violation.constraint_parameters.get(parameter)
    if isinstance(value, list):
        return None
    return value


def _requirement(violation: ConstraintViolation) -> str:
    component = violation.constraint_component
    where = _where(violation)
    if component == SH.MinCountConstraintComponent:
        return f"property {where} with minCount {_param(violation, SH.minCount).lexical}"
    if component == SH.MaxCountConstraintComponent:
        return f"property {where} with maxCount {_param(violation, SH.maxCount).lexical}"
    if component == SH.DatatypeConstraintComponent:
        return f"values of {where} to have datatype {_param(violation, SH.datatype).value}"
    if component == SH.ClassConstraintComponent:
        cls = _param(violation, getattr(SH, "class"))
        return f"values of {where} to be instances of {cls.value}"
    if component == SH.NodeKindConstraintComponent:
        kind = _param(violation, SH.nodeKind)
        return f"values of {where} to be of node kind {local_name(kind.value)}"
    if component == SH.MinLengthConstraintComponent:
        return f"values of {where} to have length at least {_param(violation, SH.minLength).lexical}"
    if component == SH.MaxLengthConstraintComponent:
        return f"values of {where} to have length at most {_param(violation, SH.maxLength).lexical}"
    if component == SH.PatternConstraintComponent:
        pattern = _param(violation, SH.pattern).lexical
        flags = _param(violation, SH.flags)
        suffix = f" (flags {flags.lexical})" if flags is not None else ""
        return f"values of {where} to match pattern '{pattern}'{suffix}"
    if component == SH.MinInclusiveConstraintComponent:
        return f"values of {where} to be at least {_param(violation, SH.minInclusive).lexical}"
    if component == SH.MaxInclusiveConstraintComponent:
        return f"values of {where} to be at most {_param(violation, SH.maxInclusive).lexical}"
    if component == SH.MinExclusiveConstraintComponent:
        return f"values of {where} to be greater than {_param(violation, SH.minExclusive).lexical}"
    if component == SH.MaxExclusiveConstraintComponent:
        return f"values of {where} to be less than {_param(violation, SH.maxExclusive).lexical}"
    if component == SH.HasValueConstraintComponent:
        return f"{where} to include the value {_param(violation, SH.hasValue).n3()}"
    if component == SH.InConstraintComponent:
        allowed = violation.constraint_parameters[getattr(SH, "in")]
        listed = ", ".join(t.n3() for t in allowed)
        return f"values of {where} to be one of [{listed}]"
    return f"constraint {violation.component_name()}"


def _premise(violation: ConstraintViolation, shapes: Graph) -> JustificationNode:
    evidence: List[Triple] = []
    shape_id = violation.source_shape
    for parameter in sorted(violation.constraint_parameters):
        evidence.extend(shapes.match(shape_id, Iri(parameter), None))
    evidence.extend(shapes.match(shape_id, Iri(SH.path), None))
    statement = f"Shape {shape_id.n3()} requires {_requirement(violation)}"
    return _node(NodeKind.PREMISE, statement, evidence)


def _observation(violation: ConstraintViolation, data: Graph) -> JustificationNode:
    focus = violation.focus_node.n3()
    where = _where(violation)
    vtype = violation.violation_type
    value = violation.value

    if vtype is ViolationType.CARDINALITY:
        triples = _path_triples(data, violation)
        statement = f"{focus} has {len(triples)} values for {where}"
        return _node(NodeKind.OBSERVATION, statement, triples)

    if vtype is ViolationType.VALUE_TYPE:
        component = violation.constraint_component
        if component == SH.DatatypeConstraintComponent:
            if isinstance(value, Literal):
                actual = value.datatype
                statement = f"{focus} has value {value.n3()} with datatype {actual} for {where}"
            else:
                statement = f"{focus} has non-literal value {value.n3()} for {where}"
        elif component == SH.ClassConstraintComponent:
            cls = _param(violation, getattr(SH, "class"))
            statement = (
                f"{focus} has value {value.n3()} for {where}, and the data declares "
                f"no rdf:type {cls.value} for it"
            )
        else:
            kind = "a literal" if isinstance(value, Literal) else (
                "a blank node" if value is not None and value.n3().startswith("_:") else "an IRI"
            )
            statement = f"{focus} has value {value.n3()} for {where}, which is {kind}"
        return _node(NodeKind.OBSERVATION, statement, _value_triple(data, violation))

    if vtype is ViolationType.VALUE_RANGE:
        statement = f"{focus} has value {value.n3()} for {where}"
        return _node(NodeKind.OBSERVATION, statement, _value_triple(data, violation))

    if vtype is ViolationType.STRING_BASED:
        if isinstance(value, Literal):
            detail = f" (length {len(value.lexical)})"
        elif isinstance(value, Iri):
            detail = f" (length {len(value.value)})"
        else:
            detail = ""
        statement = f"{focus} has value {value.n3()}{detail} for {where}"
        return _node(NodeKind.OBSERVATION, statement, _value_triple(data, violation))

    if vtype is ViolationType.VALUE_CONSTRAINT:
        if violation.constraint_component == SH.HasValueConstraintComponent:
            triples = _path_triples(data, violation)
            required = _param(violation, SH.hasValue)
            statement = (
                f"{focus} has {len(triples)} values for {where}, "
                f"none equal to {required.n3()}"
            )
            return _node(NodeKind.OBSERVATION, statement, triples)
        statement = f"{focus} has value {value.n3()} for {where}"
        return _node(NodeKind.OBSERVATION, statement, _value_triple(data, violation))

    statement = f"{focus} was checked against {violation.component_name()} on {where}"
    return _node(NodeKind.OBSERVATION, statement, _path_triples(data, violation))


def _inference(violation: ConstraintViolation, data: Graph) -> JustificationNode:
    component = violation.constraint_component
    value = violation.value

    if component == SH.MinCountConstraintComponent:
        n = len(value_nodes(data, violation.focus_node, violation.result_path))
        k = parameter_int(violation.constraint_parameters[SH.minCount])
        return _node(NodeKind.INFERENCE, f"Since {n} < {k}, the minCount constraint is violated")
    if component == SH.MaxCountConstraintComponent:
        n = len(value_nodes(data, violation.focus_node, violation.result_path))
        k = parameter_int(violation.constraint_parameters[SH.maxCount])
        return _node(NodeKind.INFERENCE, f"Since {n} > {k}, the maxCount constraint is violated")
    if component == SH.DatatypeConstraintComponent:
        required = _param(violation, SH.datatype).value
        if isinstance(value, Literal):
            reason = f"Since {value.datatype} is not {required}"
        else:
            reason = "Since the value is not a literal"
        return _node(NodeKind.INFERENCE, f"{reason}, the datatype constraint is violated")
    if component == SH.ClassConstraintComponent:
        cls = _param(violation, getattr(SH, "class")).value
        return _node(
            NodeKind.INFERENCE,
            f"Since the value is not an instance of {cls}, the class constraint is violated",
        )
    if component == SH.NodeKindConstraintComponent:
        required = local_name(_param(violation, SH.nodeKind).value)
        return _node(
            NodeKind.INFERENCE,
            f"Since the value is not of node kind {required}, the nodeKind constraint is violated",
        )
    if component in (SH.MinLengthConstraintComponent, SH.MaxLengthConstraintComponent):
        is_min = component == SH.MinLengthConstraintComponent
        bound = parameter_int(
            violation.constraint_parameters[SH.minLength if is_min else SH.maxLength]
        )
        if isinstance(value, Literal):
            length = len(value.lexical)
        elif isinstance(value, Iri):
            length = len(value.value)
        else:
            return _node(
                NodeKind.INFERENCE,
                "Since a blank node has no string form, the length constraint is violated",
            )
        relation = f"{length} < {bound}" if is_min else f"{length} > {bound}"
        name = "minLength" if is_min else "maxLength"
        return _node(NodeKind.INFERENCE, f"Since {relation}, the {name} constraint is violated")
    if component == SH.PatternConstraintComponent:
        pattern = _param(violation, SH.pattern).lexical
        return _node(
            NodeKind.INFERENCE,
            f"Since the value does not match '{pattern}', the pattern constraint is violated",
        )
    range_parameters = {
        SH.MinInclusiveConstraintComponent: (SH.minInclusive, "<", "minInclusive"),
        SH.MaxInclusiveConstraintComponent: (SH.maxInclusive, ">", "maxInclusive"),
        SH.MinExclusiveConstraintComponent: (SH.minExclusive, "<=", "minExclusive"),
        SH.MaxExclusiveConstraintComponent: (SH.maxExclusive, ">=", "maxExclusive"),
    }
    if component in range_parameters:
        parameter, relation, name = range_parameters[component]
        bound = _param(violation, parameter)
        if violation.message == "non-comparable value":
            statement = (
                f"Since {value.n3()} cannot be compared numerically with "
                f"{bound.lexical}, the {name} constraint is violated"
            )
        else:
            statement = (
                f"Since {value.lexical} {relation} {bound.lexical}, "
                f"the {name} constraint is violated"
            )
        return _node(NodeKind.INFERENCE, statement)
    if component == SH.HasValueConstraintComponent:
        required = _param(violation, SH.hasValue)
        return _node(
            NodeKind.INFERENCE,
            f"Since no value equals {required.n3()}, the hasValue constraint is violated",
        )
    if component == SH.InConstraintComponent:
        allowed = violation.constraint_parameters[getattr(SH, "in")]
        return _node(
            NodeKind.INFERENCE,
            f"Since the value is not among the {len(allowed)} allowed values, "
            f"the in constraint is violated",
        )
    return _node(
        NodeKind.INFERENCE,
        f"The {violation.component_name()} constraint does not hold",
    )


def build_justification_tree(
    violation: ConstraintViolation, data: Graph, shapes: Graph
) -> JustificationTree:
    """Deterministic tree for any violation the engine can emit."""
    root = JustificationNode(
        kind=NodeKind.CONCLUSION,
        statement=(
            f"{violation.focus_node.n3()} fails conformance to "
            f"{violation.source_shape.n3()} on {violation.component_name()}"
        ),
    )
    root.children = [
        _premise(violation, shapes),
        _observation(violation, data),
        _inference(violation, data),
    ]
    return JustificationTree(root=root, violation=violation)


# --- renderings ----------------------------------------------------------------

def tree_to_text(tree: JustificationTree) -> str:
    """Indented rendering, one node per line, for prompt embedding."""
    lines: List[str] = []

    def walk(node: JustificationNode, depth: int) -> None:
        lines.append(f"{'  ' * depth}[{node.kind.value}] {node.statement}")
        for child in node.children:
            walk(child, depth + 1)

    walk(tree.root, 0)
    return "\n".join(lines)


def node_to_dict(node: JustificationNode) -> dict:
    return {
        "kind": node.kind.value,
        "statement": node.statement,
        "evidence": [
            {"subject": t.subject.n3(), "predicate": t.predicate.n3(), "object": t.object.n3()}
            for t in node.evidence
        ],
        "children": [node_to_dict(child) for child in node.children],
    }


def tree_to_json(tree: JustificationTree) -> dict:
    return node_to_dict(tree.root)


def node_from_dict(payload: dict) -> JustificationNode:
    return JustificationNode(
        kind=NodeKind(payload["kind"]),
        statement=payload["statement"],
        evidence=[
            Triple(
                term_from_n3(item["subject"]),
                term_from_n3(item["predicate"]),
                term_from_n3(item["object"]),
            )
            for item in payload["evidence"]
        ],
        children=[node_from_dict(child) for child in payload["children"]],
    )
