import pytest

from component_fixtures import FIXTURES

from shacl_explain.justify import (
    NodeKind,
    build_justification_tree,
    node_from_dict,
    tree_to_json,
    tree_to_text,
)
from shacl_explain.rdf import parse_turtle
from shacl_explain.shacl import parse_shapes, validate

PREFIXES = """
@prefix ex: <http://ex.org/> .
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
"""


def build_all(fx):
    data = parse_turtle(fx["bad"])
    shapes = parse_turtle(fx["shapes"])
    violations = validate(data, parse_shapes(shapes))
    return data, shapes, [build_justification_tree(v, data, shapes) for v in violations]


def test_min_count_tree_matches_expected_shape():
    fx = next(f for f in FIXTURES if f["name"] == "min_count")
    data, shapes, trees = build_all(fx)
    (tree,) = trees
    root = tree.root
    assert root.kind is NodeKind.CONCLUSION
    assert "<http://ex.org/alice>" in root.statement
    assert "MinCountConstraintComponent" in root.statement
    kinds = [child.kind for child in root.children]
    assert kinds == [NodeKind.PREMISE, NodeKind.OBSERVATION, NodeKind.INFERENCE]
    premise, observation, inference = root.children
    assert "requires property http://ex.org/hasName with minCount 1" in premise.statement
    assert observation.statement.endswith("has 0 values for http://ex.org/hasName")
    assert observation.evidence == []
    assert inference.statement == "Since 0 < 1, the minCount constraint is violated"


def test_datatype_tree_carries_offending_triple():
    fx = next(f for f in FIXTURES if f["name"] == "datatype")
    data, shapes, trees = build_all(fx)
    (tree,) = trees
    observation = tree.root.children[1]
    assert len(observation.evidence) == 1
    assert observation.evidence[0] in data


@pytest.mark.parametrize("fx", FIXTURES, ids=[f["name"] for f in FIXTURES])
def test_structural_invariants_for_every_fixture_violation(fx):
    data, shapes, trees = build_all(fx)
    assert trees
    for tree in trees:
        nodes = tree.nodes()
        kinds = [n.kind for n in nodes]
        assert kinds.count(NodeKind.CONCLUSION) == 1
        assert nodes[0].kind is NodeKind.CONCLUSION
        assert kinds.count(NodeKind.PREMISE) >= 1
        assert kinds.count(NodeKind.OBSERVATION) >= 1
        assert kinds.count(NodeKind.INFERENCE) >= 1
        assert tree.root.children  # depth >= 2


@pytest.mark.parametrize("fx", FIXTURES, ids=[f["name"] for f in FIXTURES])
def test_evidence_triples_exist_in_source_graphs(fx):
    data, shapes, trees = build_all(fx)
    for tree in trees:
        for node in tree.nodes():
            source = shapes if node.kind is NodeKind.PREMISE else data
            for triple in node.evidence:
                assert triple in source


def test_root_statement_mentions_focus_and_component():
    for fx in FIXTURES:
        data, shapes, trees = build_all(fx)
        for tree in trees:
            assert tree.violation.focus_node.n3() in tree.root.statement
            assert tree.violation.component_name() in tree.root.statement


def test_trees_identical_up_to_focus_substitution():
    shapes_doc = PREFIXES + """
    ex:S a sh:NodeShape ; sh:targetClass ex:T ;
        sh:property ex:P .
    ex:P sh:path ex:p ; sh:minCount 1 .
    """
    data = parse_turtle(PREFIXES + "ex:a a ex:T . ex:b a ex:T .")
    shapes = parse_turtle(shapes_doc)
    v1, v2 = validate(data, parse_shapes(shapes))
    t1 = tree_to_text(build_justification_tree(v1, data, shapes))
    t2 = tree_to_text(build_justification_tree(v2, data, shapes))
    assert t1.replace("<http://ex.org/a>", "<http://ex.org/b>") == t2


def test_text_rendering_layout():
    fx = next(f for f in FIXTURES if f["name"] == "min_count")
    data, shapes, trees = build_all(fx)
    text = tree_to_text(trees[0])
    lines = text.splitlines()
    assert len(lines) == 4
    assert lines[0].startswith("[CONCLUSION] ")
    for line in lines[1:]:
        assert line.startswith("  [")


def test_json_round_trip():
    fx = next(f for f in FIXTURES if f["name"] == "datatype")
    data, shapes, trees = build_all(fx)
    payload = tree_to_json(trees[0])
    rebuilt = node_from_dict(payload)
    assert node_to_comparable(rebuilt) == node_to_comparable(trees[0].root)


def node_to_comparable(node):
    return (
        node.kind,
        node.statement,
        tuple(node.evidence),
        tuple(node_to_comparable(c) for c in node.children),
    )


def test_empty_evidence_serialized_as_empty_list():
    fx = next(f for f in FIXTURES if f["name"] == "min_count")
    data, shapes, trees = build_all(fx)
    payload = tree_to_json(trees[0])
    observation = payload["children"][1]
    assert observation["kind"] == "OBSERVATION"
    assert observation["evidence"] == []


def test_evidence_cap_with_truncation_note():
    shapes_doc = PREFIXES + """
    ex:S a sh:NodeShape ; sh:targetClass ex:T ;
        sh:property ex:P .
    ex:P sh:path ex:p ; sh:maxCount 1 .
    """
    statements = [PREFIXES, "ex:x a ex:T ."]
    statements += [f"ex:x ex:p ex:v{i} ." for i in range(25)]
    data = parse_turtle("\n".join(statements))
    shapes = parse_turtle(shapes_doc)
    (violation,) = validate(data, parse_shapes(shapes))
    tree = build_justification_tree(violation, data, shapes)
    observation = tree.root.children[1]
    assert len(observation.evidence) == 20
    assert "truncated to 20 of 25" in observation.statement


def test_determinism():
    fx = next(f for f in FIXTURES if f["name"] == "multi_violation_mixed")
    data, shapes, trees1 = build_all(fx)
    _, _, trees2 = build_all(fx)
    for a, b in zip(trees1, trees2):
        assert tree_to_json(a) == tree_to_json(b)
