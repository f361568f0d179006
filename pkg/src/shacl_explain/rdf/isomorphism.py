"""Graph equality up to blank-node relabeling.

Canonicalization assigns deterministic labels to blank nodes by iterated
neighborhood refinement; remaining symmetric ties are broken by
individualize-and-recurse, picking the lexicographically smallest result.
Worst case is exponential, which is acceptable at fixture scale (< 1k
triples).
"""

from __future__ import annotations

import hashlib
from typing import Dict, List, Optional, Tuple

from .graph import Graph
from .terms import BlankNode, Term


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _term_token(term: Term, colors: Dict[BlankNode, str]) -> str:
    if isinstance(term, BlankNode):
        return "?" + colors[term]
    return term.n3()


def _refine(graph: Graph, colors: Dict[BlankNode, str]) -> Dict[BlankNode, str]:
    new_colors: Dict[BlankNode, str] = {}
    for node, color in colors.items():
        signature: List[str] = [color]
        for t in graph.match(node, None, None):
            signature.append(f"s|{t.predicate.n3()}|{_term_token(t.object, colors)}")
        for t in graph.match(None, None, node):
            signature.append(f"o|{t.predicate.n3()}|{_term_token(t.subject, colors)}")
        for t in graph.match(None, node, None):
            signature.append("p")
        signature.sort()
        new_colors[node] = _digest("\n".join(signature))
    return new_colors


def _refine_to_fixpoint(graph: Graph, colors: Dict[BlankNode, str]) -> Dict[BlankNode, str]:
    def partition(c: Dict[BlankNode, str]) -> Tuple[Tuple[str, ...], ...]:
        groups: Dict[str, List[str]] = {}
        for node, color in c.items():
            groups.setdefault(color, []).append(node.label)
        return tuple(tuple(sorted(v)) for v in sorted(groups.values()))

    for _ in range(len(colors) + 1):
        refined = _refine(graph, colors)
        if partition(refined) == partition(colors):
            return refined
        colors = refined
    return colors


def _canonical_lines(graph: Graph, colors: Dict[BlankNode, str]) -> Optional[List[str]]:
    """Relabeled, sorted triple rendering; None while colors still collide."""
    by_color = sorted(colors.items(), key=lambda kv: kv[1])
    if len({c for _, c in by_color}) != len(by_color):
        return None
    relabel = {node: f"c{i}" for i, (node, _) in enumerate(by_color)}

    def render(term: Term) -> str:
        if isinstance(term, BlankNode):
            return "_:" + relabel[term]
        return term.n3()

    lines = [f"{render(t.subject)} {render(t.predicate)} {render(t.object)}" for t in graph]
    return sorted(lines)


def _canonicalize(graph: Graph, colors: Dict[BlankNode, str]) -> List[str]:
    colors = _refine_to_fixpoint(graph, colors)
    lines = _canonical_lines(graph, colors)
    if lines is not None:
        return lines
    # Symmetry remains: individualize each member of the smallest tied
    # class in turn and keep the smallest canonical form.
    groups: Dict[str, List[BlankNode]] = {}
    for node, color in colors.items():
        groups.setdefault(color, []).append(node)
    tied = min(
        (nodes for nodes in groups.values() if len(nodes) > 1),
        key=lambda nodes: (len(nodes), colors[nodes[0]]),
    )
    best: Optional[List[str]] = None
    for node in sorted(tied, key=lambda n: n.label):
        attempt = dict(colors)
        attempt[node] = _digest("pivot|" + colors[node])
        candidate = _canonicalize(graph, attempt)
        if best is None or candidate < best:
            best = candidate
    return best


def canonical_form(graph: Graph) -> str:
    """A text form equal for exactly the graphs isomorphic to ``graph``."""
    colors = {
        node: "init"
        for triple in graph
        for node in (triple.subject, triple.object)
        if isinstance(node, BlankNode)
    }
    if not colors:
        return "\n".join(sorted(t.n3() for t in graph))
    return "\n".join(_canonicalize(graph, colors))


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    """True iff the graphs are equal under some blank-node bijection."""
    if len(g1) != len(g2):
        return False
    return canonical_form(g1) == canonical_form(g2)
