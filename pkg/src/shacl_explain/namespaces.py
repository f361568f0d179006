"""Namespace constants used throughout the package.

Namespace objects build full IRI strings by attribute access, e.g.
``SH.minCount`` -> ``"http://www.w3.org/ns/shacl#minCount"``.
"""

from __future__ import annotations


class Namespace:
    def __init__(self, base: str):
        self._base = base

    @property
    def base(self) -> str:
        return self._base

    def __getattr__(self, name: str) -> str:
        if name.startswith("_"):
            raise AttributeError(name)
        return self._base + name

    def term(self, name: str) -> str:
        """Escape hatch for names that are not valid Python attributes."""
        return self._base + name

    def __contains__(self, iri: str) -> bool:
        return iri.startswith(self._base)

    def __repr__(self) -> str:
        return f"Namespace({self._base!r})"


RDF = Namespace("http://www.w3.org/1999/02/22-rdf-syntax-ns#")
RDFS = Namespace("http://www.w3.org/2000/01/rdf-schema#")
XSD = Namespace("http://www.w3.org/2001/XMLSchema#")
SH = Namespace("http://www.w3.org/ns/shacl#")
# Namespace of the violation knowledge-graph ontology (signatures, explanations,
# domain rules). The prefix "xsh" is bound to it by default.
XSH = Namespace("http://xpshacl.org/#")

DEFAULT_PREFIXES = {
    "rdf": RDF.base,
    "rdfs": RDFS.base,
    "xsd": XSD.base,
    "sh": SH.base,
    "xsh": XSH.base,
}


def local_name(iri: str) -> str:
    """Last path/fragment segment of an IRI, e.g. '...#minCount' -> 'minCount'."""
    for sep in ("#", "/", ":"):
        idx = iri.rfind(sep)
        if idx >= 0 and idx < len(iri) - 1:
            return iri[idx + 1 :]
    return iri
