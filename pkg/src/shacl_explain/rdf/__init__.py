"""RDF data model: terms, triples, graphs, Turtle I/O, isomorphism."""

from .graph import Graph
from .isomorphism import canonical_form, is_isomorphic
from .terms import BlankNode, Iri, Literal, Term, Triple, term_from_n3
from .turtle import (
    TurtleSyntaxError,
    UnresolvedPrefixError,
    parse_turtle,
    resolve_iri,
    serialize_turtle,
)

__all__ = [
    "BlankNode",
    "Graph",
    "Iri",
    "Literal",
    "Term",
    "Triple",
    "TurtleSyntaxError",
    "UnresolvedPrefixError",
    "canonical_form",
    "is_isomorphic",
    "parse_turtle",
    "resolve_iri",
    "serialize_turtle",
    "term_from_n3",
]
