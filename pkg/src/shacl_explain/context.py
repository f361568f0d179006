"""Context retrieval for a violation: ontology fragments, shape
documentation, similar cases, and domain rules.

Everything assembled here bounds what the explanation generator may see
from the data graph: fragments are exactly the triples touching the focus
node, similar cases are node identifiers only, and the remaining sections
come from the shapes graph. Nothing else leaks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .namespaces import RDFS, SH, XSH
from .rdf import Graph, Iri, Literal, Term, Triple
from .shacl.engine import check_constraint
from .shacl.model import ConstraintViolation, PropertyPath, Shape, ShapeModel


@dataclass
class RetrievalCaps:
    max_fragments: int = 50
    max_similar_cases: int = 10
    max_rules: int = 5


@dataclass
class DomainContext:
    ontology_fragments: List[Triple] = field(default_factory=list)
    fragments_truncated: bool = False
    shape_documentation: List[str] = field(default_factory=list)
    similar_cases: List[Term] = field(default_factory=list)
    similar_case_count: int = 0
    domain_rules: List[Tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ontology_fragments": [
                {"subject": t.subject.n3(), "predicate": t.predicate.n3(), "object": t.object.n3()}
                for t in self.ontology_fragments
            ],
            "fragments_truncated": self.fragments_truncated,
            "shape_documentation": list(self.shape_documentation),
            "similar_cases": [term.n3() for term in self.similar_cases],
            "similar_case_count": self.similar_case_count,
            "domain_rules": [list(rule) for rule in self.domain_rules],
        }


def retrieve_ontology_fragments(
    data: Graph, focus: Term, cap: int = 50
) -> Tuple[List[Triple], bool]:
    """Triples touching the focus node: outgoing first, then incoming."""
    outgoing = data.match(focus, None, None)
    incoming = [t for t in data.match(None, None, focus) if t not in set(outgoing)]
    fragments = outgoing + incoming
    if len(fragments) > cap:
        return fragments[:cap], True
    return fragments, False


def retrieve_shape_documentation(shapes: Graph, shape_id: Term) -> List[str]:
    """sh:name, sh:description, rdfs:comment texts of the violated shape.

    When the shape is a property shape, its parent node shape's texts come
    first (the parent states the purpose; the property shape the detail).
    """
    ordered_ids: List[Term] = []
    for parent in shapes.subjects(Iri(SH.property), shape_id):
        ordered_ids.append(parent)
    ordered_ids.append(shape_id)
    docs: List[str] = []
    for term_id in ordered_ids:
        for predicate in (SH.name, SH.description, RDFS.comment):
            for obj in shapes.objects(term_id, Iri(predicate)):
                if isinstance(obj, Literal) and obj.lexical not in docs:
                    docs.append(obj.lexical)
    return docs


def retrieve_similar_cases(
    data: Graph,
    violation: ConstraintViolation,
    model: ShapeModel,
    cap: int = 10,
) -> Tuple[List[Term], int]:
    """Other nodes failing the same (shape, component, path) check.

    Candidates share at least one rdf:type with the focus node; an untyped
    focus falls back to every subject in the data graph. Returns the
    truncated list and the count before truncation.
    """
    shape = model.shape_by_id(violation.source_shape)
    if shape is None:
        return [], 0
    descriptor = next(
        (d for d in shape.constraints if d.component == violation.constraint_component),
        None,
    )
    if descriptor is None:
        return [], 0

    rdf_type = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
    if violation.focus_node_types:
        candidates: List[Term] = []
        seen = set()
        for type_iri in violation.focus_node_types:
            for subject in data.subjects(rdf_type, Iri(type_iri)):
                if subject not in seen:
                    seen.add(subject)
                    candidates.append(subject)
        candidates.sort(key=lambda t: t.n3())
    else:
        candidates = data.subject_terms()

    matches: List[Term] = []
    for candidate in candidates:
        if candidate == violation.focus_node:
            continue
        if check_constraint(data, shape, descriptor, candidate):
            matches.append(candidate)
    return matches[:cap], len(matches)


def retrieve_domain_rules(
    shapes: Graph, path: Optional[PropertyPath], cap: int = 5
) -> List[Tuple[str, str]]:
    """Rules attached to the violated property via xsh:appliesToProperty."""
    if path is None:
        return []
    rules: List[Tuple[str, str]] = []
    for rule in shapes.subjects(Iri(XSH.appliesToProperty), Iri(path.predicate)):
        comment = shapes.value(rule, Iri(RDFS.comment))
        text = comment.lexical if isinstance(comment, Literal) else ""
        rules.append((rule.n3() if not isinstance(rule, Iri) else rule.value, text))
    rules.sort()
    return rules[:cap]


def assemble_context(
    data: Graph,
    shapes: Graph,
    violation: ConstraintViolation,
    model: ShapeModel,
    caps: Optional[RetrievalCaps] = None,
) -> DomainContext:
    caps = caps or RetrievalCaps()
    fragments, truncated = retrieve_ontology_fragments(
        data, violation.focus_node, caps.max_fragments
    )
    similar, count = retrieve_similar_cases(data, violation, model, caps.max_similar_cases)
    return DomainContext(
        ontology_fragments=fragments,
        fragments_truncated=truncated,
        shape_documentation=retrieve_shape_documentation(shapes, violation.source_shape),
        similar_cases=similar,
        similar_case_count=count,
        domain_rules=retrieve_domain_rules(shapes, violation.result_path, caps.max_rules),
    )
