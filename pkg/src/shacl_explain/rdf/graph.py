"""Indexed triple container with set semantics and deterministic matching."""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Optional, Set

from ..namespaces import DEFAULT_PREFIXES, RDF
from .terms import Iri, Term, Triple


class Graph:
    """A set of triples plus a prefix map.

    Pattern queries (``match``) return triples in lexicographic order of
    their N-Triples rendering, so two identical queries always yield
    identical sequences. Graphs are treated as immutable once validation
    starts; only the violation KG mutates its graph, under a single writer.
    """

    def __init__(self, triples: Optional[Iterable[Triple]] = None):
        self._triples: Set[Triple] = set()
        self._by_subject: Dict[Term, Set[Triple]] = {}
        self._by_predicate: Dict[Term, Set[Triple]] = {}
        self._by_object: Dict[Term, Set[Triple]] = {}
        self.prefixes: Dict[str, str] = dict(DEFAULT_PREFIXES)
        if triples:
            for t in triples:
                self.add(t)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self._triples, key=Triple.sort_key))

    def add(self, triple: Triple) -> None:
        if triple in self._triples:
            return
        self._triples.add(triple)
        self._by_subject.setdefault(triple.subject, set()).add(triple)
        self._by_predicate.setdefault(triple.predicate, set()).add(triple)
        self._by_object.setdefault(triple.object, set()).add(triple)

    def remove(self, triple: Triple) -> None:
        if triple not in self._triples:
            return
        self._triples.discard(triple)
        self._by_subject[triple.subject].discard(triple)
        self._by_predicate[triple.predicate].discard(triple)
        self._by_object[triple.object].discard(triple)

    def bind(self, prefix: str, iri: str) -> None:
        self.prefixes[prefix] = iri

    def match(
        self,
        subject: Optional[Term] = None,
        predicate: Optional[Term] = None,
        object: Optional[Term] = None,
    ) -> List[Triple]:
        """All triples agreeing with every bound position, in sorted order."""
        candidates: Optional[Set[Triple]] = None
        if subject is not None:
            candidates = self._by_subject.get(subject, set())
        if predicate is not None:
            by_p = self._by_predicate.get(predicate, set())
            candidates = by_p if candidates is None else candidates & by_p
        if object is not None:
            by_o = self._by_object.get(object, set())
            candidates = by_o if candidates is None else candidates & by_o
        if candidates is None:
            candidates = self._triples
        return sorted(candidates, key=Triple.sort_key)

    def objects(self, subject: Term, predicate: Term) -> List[Term]:
        return [t.object for t in self.match(subject, predicate, None)]

    def subjects(self, predicate: Term, object: Term) -> List[Term]:
        return [t.subject for t in self.match(None, predicate, object)]

    def value(self, subject: Term, predicate: Term) -> Optional[Term]:
        objs = self.objects(subject, predicate)
        return objs[0] if objs else None

    def subject_terms(self) -> List[Term]:
        """All distinct subjects, sorted."""
        return sorted(self._by_subject.keys(), key=lambda t: t.n3())

    def rdf_list(self, head: Term) -> List[Term]:
        """Materialize an rdf:first/rdf:rest chain starting at ``head``."""
        items: List[Term] = []
        nil = Iri(RDF.nil)
        seen = set()
        node = head
        while node != nil:
            if node in seen:
                raise ValueError("cyclic RDF list")
            seen.add(node)
            first = self.value(node, Iri(RDF.first))
            rest = self.value(node, Iri(RDF.rest))
            if first is None or rest is None:
                raise ValueError(f"malformed RDF list at {node.n3()}")
            items.append(first)
            node = rest
        return items

    def copy(self) -> "Graph":
        g = Graph(self._triples)
        g.prefixes = dict(self.prefixes)
        return g
