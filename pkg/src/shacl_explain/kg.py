"""The violation knowledge graph: a persistent, content-addressed store of
explanations keyed by (violation signature, language).

At most one record exists per (signature, language); re-storing replaces
it. The serialized generation input (violation + tree + context JSON) is
kept once per signature, captured at first generation. Lookups and stores
are safe under concurrent readers with a single writer; the counters are
updated under the instance lock.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional, Union

from .namespaces import RDF, XSD, XSH
from .rdf import BlankNode, Graph, Iri, Literal, Term, Triple, parse_turtle, serialize_turtle
from .shacl.model import ViolationType
from .signature import ViolationSignature


class SchemaError(ValueError):
    """A persisted KG resource is missing required properties."""


# BCP-47 shape; tags key the cache and become Turtle language tags, so a
# malformed one would corrupt the persisted KG.
LANGUAGE_TAG_RE = re.compile(r"^[A-Za-z]{2,8}(-[A-Za-z0-9]{1,8})*$")


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass
class ExplanationRecord:
    signature: ViolationSignature
    language: str
    natural_language_text: str
    correction_suggestions: List[str]
    provided_by_model: str
    input_payload: str = ""
    created_at: str = field(default_factory=utc_now_iso)


@dataclass
class KgStats:
    lookups: int = 0
    hits: int = 0
    misses: int = 0

    @property
    def hit_rate(self) -> float:
        return self.hits / max(self.lookups, 1)

    def snapshot(self) -> "KgStats":
        return KgStats(lookups=self.lookups, hits=self.hits, misses=self.misses)

    def since(self, earlier: "KgStats") -> "KgStats":
        return KgStats(
            lookups=self.lookups - earlier.lookups,
            hits=self.hits - earlier.hits,
            misses=self.misses - earlier.misses,
        )


@dataclass
class _SignatureEntry:
    signature: ViolationSignature
    input_payload: str = ""
    records: Dict[str, ExplanationRecord] = field(default_factory=dict)


class ViolationKnowledgeGraph:
    def __init__(self):
        self._entries: Dict[str, _SignatureEntry] = {}
        self.stats = KgStats()
        self._lock = threading.Lock()

    # --- core cache operations ------------------------------------------------

    def lookup(self, signature: ViolationSignature, language: str) -> Optional[ExplanationRecord]:
        with self._lock:
            self.stats.lookups += 1
            entry = self._entries.get(signature.hash)
            record = entry.records.get(language) if entry else None
            if record is None:
                self.stats.misses += 1
                return None
            self.stats.hits += 1
            return record

    def store(self, record: ExplanationRecord) -> None:
        if not LANGUAGE_TAG_RE.match(record.language):
            raise ValueError(f"invalid language tag {record.language!r}")
        with self._lock:
            entry = self._entries.get(record.signature.hash)
            if entry is None:
                entry = _SignatureEntry(
                    signature=record.signature, input_payload=record.input_payload
                )
                self._entries[record.signature.hash] = entry
            # The payload is signature-level context: the first stored one wins.
            stored = replace(record, input_payload=entry.input_payload)
            entry.records[record.language] = stored

    def signature_count(self) -> int:
        return len(self._entries)

    def record_count(self) -> int:
        return sum(len(e.records) for e in self._entries.values())

    def signatures(self) -> List[ViolationSignature]:
        return [e.signature for _, e in sorted(self._entries.items())]

    def languages_for(self, signature: ViolationSignature) -> List[str]:
        entry = self._entries.get(signature.hash)
        return sorted(entry.records) if entry else []

    # --- persistence -----------------------------------------------------------

    def to_graph(self) -> Graph:
        graph = Graph()
        counter = 0
        for sig_hash, entry in sorted(self._entries.items()):
            sig = entry.signature
            subject = Iri(XSH.base + "signature-" + sig_hash)
            graph.add(Triple(subject, Iri(RDF.type), Iri(XSH.ViolationSignature)))
            graph.add(Triple(subject, Iri(XSH.signatureHash), Literal(sig_hash)))
            graph.add(Triple(subject, Iri(XSH.constraintComponent), Iri(sig.constraint_component)))
            graph.add(Triple(subject, Iri(XSH.propertyPath), Literal(sig.property_path)))
            graph.add(Triple(subject, Iri(XSH.violationType), Literal(sig.violation_type.value)))
            for language in sorted(entry.records):
                record = entry.records[language]
                exp = Iri(XSH.base + f"explanation-{sig_hash}-{language}")
                graph.add(Triple(subject, Iri(XSH.hasExplanation), exp))
                graph.add(Triple(exp, Iri(RDF.type), Iri(XSH.Explanation)))
                graph.add(Triple(
                    exp,
                    Iri(XSH.naturalLanguageText),
                    Literal(record.natural_language_text, language=language),
                ))
                list_head: Term = Iri(RDF.nil)
                nodes = []
                for index in range(len(record.correction_suggestions)):
                    nodes.append(BlankNode(f"sg{counter}_{index}"))
                counter += 1
                for index, suggestion in enumerate(record.correction_suggestions):
                    node = nodes[index]
                    graph.add(Triple(node, Iri(RDF.first), Literal(suggestion)))
                    nxt = nodes[index + 1] if index + 1 < len(nodes) else Iri(RDF.nil)
                    graph.add(Triple(node, Iri(RDF.rest), nxt))
                if nodes:
                    list_head = nodes[0]
                graph.add(Triple(exp, Iri(XSH.correctionSuggestion), list_head))
                graph.add(Triple(exp, Iri(XSH.providedByModel), Literal(record.provided_by_model)))
                graph.add(Triple(exp, Iri(XSH.inputPayload), Literal(record.input_payload)))
                graph.add(Triple(
                    exp, Iri(XSH.createdAt), Literal(record.created_at, datatype=XSD.dateTime)
                ))
        return graph

    def save(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with self._lock:
            text = serialize_turtle(self.to_graph())
        path.write_text(text, encoding="utf-8")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ViolationKnowledgeGraph":
        graph = parse_turtle(Path(path).read_text(encoding="utf-8"))
        return cls.from_graph(graph)

    @classmethod
    def from_graph(cls, graph: Graph) -> "ViolationKnowledgeGraph":
        kg = cls()
        for triple in graph.match(None, Iri(RDF.type), Iri(XSH.ViolationSignature)):
            subject = triple.subject
            sig_hash = _required_literal(graph, subject, XSH.signatureHash)
            component = graph.value(subject, Iri(XSH.constraintComponent))
            if not isinstance(component, Iri):
                raise SchemaError(f"{subject.n3()} lacks xsh:constraintComponent")
            path_literal = graph.value(subject, Iri(XSH.propertyPath))
            if not isinstance(path_literal, Literal):
                raise SchemaError(f"{subject.n3()} lacks xsh:propertyPath")
            type_name = _required_literal(graph, subject, XSH.violationType)
            try:
                violation_type = ViolationType(type_name)
            except ValueError:
                raise SchemaError(f"{subject.n3()} has unknown violation type {type_name!r}")
            signature = ViolationSignature(
                constraint_component=component.value,
                property_path=path_literal.lexical,
                violation_type=violation_type,
                hash=sig_hash,
            )
            for exp in graph.objects(subject, Iri(XSH.hasExplanation)):
                text_term = graph.value(exp, Iri(XSH.naturalLanguageText))
                if not isinstance(text_term, Literal) or text_term.language is None:
                    raise SchemaError(
                        f"{exp.n3()} lacks a language-tagged xsh:naturalLanguageText"
                    )
                suggestions: List[str] = []
                head = graph.value(exp, Iri(XSH.correctionSuggestion))
                if head is not None:
                    for item in graph.rdf_list(head):
                        if isinstance(item, Literal):
                            suggestions.append(item.lexical)
                model = graph.value(exp, Iri(XSH.providedByModel))
                payload = graph.value(exp, Iri(XSH.inputPayload))
                created = graph.value(exp, Iri(XSH.createdAt))
                kg.store(ExplanationRecord(
                    signature=signature,
                    language=text_term.language,
                    natural_language_text=text_term.lexical,
                    correction_suggestions=suggestions,
                    provided_by_model=model.lexical if isinstance(model, Literal) else "",
                    input_payload=payload.lexical if isinstance(payload, Literal) else "",
                    created_at=created.lexical if isinstance(created, Literal) else "",
                ))
        return kg


def _required_literal(graph: Graph, subject: Term, predicate: str) -> str:
    value = graph.value(subject, Iri(predicate))
    if not isinstance(value, Literal):
        raise SchemaError(f"{subject.n3()} lacks <{predicate}>")
    return value.lexical
