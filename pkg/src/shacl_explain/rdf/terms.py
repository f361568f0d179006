"""RDF term and triple model.

Terms come in three variants: IRIs, blank nodes, and literals. A literal
carries a lexical form, a datatype IRI, and optionally a language tag
(language-tagged literals always have datatype rdf:langString).

Every term has a canonical N-Triples rendering (``n3()``); deterministic
graph ordering sorts on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..namespaces import RDF, XSD

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPES = {"\\": "\\", '"': '"', "'": "'", "n": "\n", "r": "\r", "t": "\t", "b": "\b", "f": "\f"}


def _escape_literal(text: str) -> str:
    return "".join(_ESCAPES.get(c, c) for c in text)


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self):
        if not self.value or any(c.isspace() for c in self.value):
            raise ValueError(f"invalid IRI: {self.value!r}")

    def n3(self) -> str:
        return f"<{self.value}>"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class BlankNode:
    label: str

    def n3(self) -> str:
        return f"_:{self.label}"

    def __str__(self) -> str:
        return f"_:{self.label}"


@dataclass(frozen=True, order=True)
class Literal:
    lexical: str
    datatype: str = XSD.string
    language: Union[str, None] = None

    def __post_init__(self):
        # A language tag forces rdf:langString; a missing datatype means xsd:string.
        if self.language is not None:
            object.__setattr__(self, "datatype", RDF.langString)
        elif not self.datatype:
            object.__setattr__(self, "datatype", XSD.string)

    def n3(self) -> str:
        quoted = f'"{_escape_literal(self.lexical)}"'
        if self.language is not None:
            return f"{quoted}@{self.language}"
        if self.datatype == XSD.string:
            return quoted
        return f"{quoted}^^<{self.datatype}>"

    def __str__(self) -> str:
        return self.n3()


Term = Union[Iri, BlankNode, Literal]


@dataclass(frozen=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise ValueError("triple subject must not be a literal")
        if not isinstance(self.predicate, Iri):
            raise ValueError("triple predicate must be an IRI")

    def n3(self) -> str:
        return f"{self.subject.n3()} {self.predicate.n3()} {self.object.n3()} ."

    def sort_key(self) -> tuple:
        return (self.subject.n3(), self.predicate.n3(), self.object.n3())


def term_from_n3(text: str) -> Term:
    """Parse one term in N-Triples syntax (inverse of ``Term.n3()``)."""
    text = text.strip()
    if text.startswith("<") and text.endswith(">"):
        return Iri(text[1:-1])
    if text.startswith("_:"):
        return BlankNode(text[2:])
    if text.startswith('"'):
        idx = 1
        chars = []
        while idx < len(text):
            c = text[idx]
            if c == "\\" and idx + 1 < len(text):
                nxt = text[idx + 1]
                if nxt in ("u", "U"):
                    width = 4 if nxt == "u" else 8
                    chars.append(chr(int(text[idx + 2 : idx + 2 + width], 16)))
                    idx += 2 + width
                    continue
                chars.append(_UNESCAPES.get(nxt, nxt))
                idx += 2
                continue
            if c == '"':
                break
            chars.append(c)
            idx += 1
        else:
            raise ValueError(f"unterminated literal: {text!r}")
        rest = text[idx + 1 :]
        lexical = "".join(chars)
        if rest.startswith("@"):
            return Literal(lexical, language=rest[1:])
        if rest.startswith("^^<") and rest.endswith(">"):
            return Literal(lexical, datatype=rest[3:-1])
        if rest:
            raise ValueError(f"trailing characters after literal: {rest!r}")
        return Literal(lexical)
    raise ValueError(f"not an N-Triples term: {text!r}")
