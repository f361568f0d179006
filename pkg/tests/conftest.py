import pytest

from shacl_explain.context import assemble_context
from shacl_explain.justify import build_justification_tree
from shacl_explain.rdf import parse_turtle
from shacl_explain.shacl import parse_shapes, validate

PREFIXES = """
@prefix ex: <http://ex.org/> .
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix xsh: <http://xpshacl.org/#> .
"""

MISSING_NAME_SHAPES = PREFIXES + """
ex:PersonShape a sh:NodeShape ; sh:targetClass ex:Person ;
    rdfs:comment "Every person needs a name" ;
    sh:property ex:NameShape .
ex:NameShape sh:path ex:hasName ; sh:minCount 1 ;
    sh:name "name requirement" .
ex:NameRule xsh:appliesToProperty ex:hasName ;
    rdfs:comment "every catalogued person must carry a display name" .
"""

MISSING_NAME_DATA = PREFIXES + """
ex:resource1 a ex:Person .
ex:resource2 a ex:Person .
ex:resource3 a ex:Person ; ex:hasName "Named" .
"""


@pytest.fixture
def missing_name_case():
    """(data, shapes, model, violation, tree, context) for the canonical
    missing-name scenario used across generation tests."""
    data = parse_turtle(MISSING_NAME_DATA)
    shapes = parse_turtle(MISSING_NAME_SHAPES)
    model = parse_shapes(shapes)
    violation = validate(data, model)[0]
    tree = build_justification_tree(violation, data, shapes)
    context = assemble_context(data, shapes, violation, model)
    return data, shapes, model, violation, tree, context
