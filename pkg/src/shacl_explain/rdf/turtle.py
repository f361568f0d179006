"""Turtle reader and writer.

Covers Turtle 1.1 minus RDF-star: prefix/base directives (both @-style and
SPARQL-style), prefixed names, IRIs with \\u escapes, blank node labels and
property lists, collections, all four string quoting forms, numeric and
boolean shorthand, language tags, ``^^`` datatypes, ``a``, and ``;``/``,``
lists.

The parser is a hand-written lexer + recursive descent over the token list,
reporting errors with line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from ..namespaces import RDF, XSD
from .graph import Graph
from .terms import BlankNode, Iri, Literal, Term, Triple


class TurtleSyntaxError(ValueError):
    """Malformed Turtle, with 1-based line/column of the offending input."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnresolvedPrefixError(TurtleSyntaxError):
    """A prefixed name used a prefix that was never declared."""


# --- relative IRI resolution (RFC 3986, section 5) --------------------------

_IRI_PARTS = re.compile(r"^(?:([^:/?#]+):)?(?://([^/?#]*))?([^?#]*)(?:\?([^#]*))?(?:#(.*))?$")


def _remove_dot_segments(path: str) -> str:
    output: List[str] = []
    while path:
        if path.startswith("../"):
            path = path[3:]
        elif path.startswith("./"):
            path = path[2:]
        elif path.startswith("/./"):
            path = "/" + path[3:]
        elif path == "/.":
            path = "/"
        elif path.startswith("/../"):
            path = "/" + path[4:]
            if output:
                output.pop()
        elif path == "/..":
            path = "/"
            if output:
                output.pop()
        elif path in (".", ".."):
            path = ""
        else:
            idx = path.find("/", 1)
            if idx == -1:
                output.append(path)
                path = ""
            else:
                output.append(path[:idx])
                path = path[idx:]
    return "".join(output)


def resolve_iri(base: Optional[str], ref: str) -> str:
    """Resolve ``ref`` against ``base`` per RFC 3986. Absolute refs pass through."""
    match = _IRI_PARTS.match(ref)
    scheme, authority, path, query, fragment = match.groups()
    if scheme is not None:
        return ref
    if base is None:
        raise ValueError(f"relative IRI {ref!r} with no base")
    b_scheme, b_auth, b_path, b_query, _ = _IRI_PARTS.match(base).groups()
    if authority is not None:
        path = _remove_dot_segments(path)
    elif not path:
        path = b_path
        authority = b_auth
        if query is None:
            query = b_query
    else:
        if path.startswith("/"):
            path = _remove_dot_segments(path)
        else:
            if b_auth is not None and not b_path:
                merged = "/" + path
            else:
                merged = b_path[: b_path.rfind("/") + 1] + path
            path = _remove_dot_segments(merged)
        authority = b_auth
    result = ""
    if b_scheme is not None:
        result += b_scheme + ":"
    if authority is not None:
        result += "//" + authority
    result += path
    if query is not None:
        result += "?" + query
    if fragment is not None:
        result += "#" + fragment
    return result


# --- lexer -------------------------------------------------------------------

@dataclass
class Token:
    kind: str
    value: object
    line: int
    column: int


_PUNCT = {".", ";", ",", "[", "]", "(", ")"}
_STRING_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_LOCAL_ESCAPABLE = set("_~.-!$&'()*+,;=/?#@%")
_LANGTAG_RE = re.compile(r"[A-Za-z]+(?:-[A-Za-z0-9]+)*")


def _is_pn_chars_base(c: str) -> bool:
    return bool(c) and (c.isalpha() or ord(c) >= 0x80)


def _is_pn_chars(c: str) -> bool:
    return _is_pn_chars_base(c) or c == "_" or c == "-" or c.isdigit()


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def error(self, message: str) -> TurtleSyntaxError:
        return TurtleSyntaxError(message, self.line, self.column)

    def _peek(self, offset: int = 0) -> str:
        idx = self.pos + offset
        return self.text[idx] if idx < len(self.text) else ""

    def _advance(self, count: int = 1) -> str:
        taken = self.text[self.pos : self.pos + count]
        for c in taken:
            if c == "\n":
                self.line += 1
                self.column = 1
            else:
                self.column += 1
        self.pos += count
        return taken

    def tokens(self) -> List[Token]:
        out: List[Token] = []
        while True:
            self._skip_ws_and_comments()
            line, col = self.line, self.column
            c = self._peek()
            if not c:
                out.append(Token("eof", None, line, col))
                return out
            token = self._next_token()
            token.line, token.column = line, col
            out.append(token)

    def _skip_ws_and_comments(self) -> None:
        while True:
            c = self._peek()
            if c and c in " \t\r\n":
                self._advance()
            elif c == "#":
                while self._peek() and self._peek() != "\n":
                    self._advance()
            else:
                return

    def _next_token(self) -> Token:
        c = self._peek()
        if c == "<":
            return self._iriref()
        if c in _PUNCT:
            self._advance()
            return Token(c, c, 0, 0)
        if c == "^":
            if self._peek(1) == "^":
                self._advance(2)
                return Token("^^", "^^", 0, 0)
            raise self.error("unexpected '^'")
        if c in "\"'":
            return self._string()
        if c == "@":
            return self._at_word()
        if c == "_" and self._peek(1) == ":":
            return self._blank_label()
        if c.isdigit() or c in "+-" or (c == "." and self._peek(1).isdigit()):
            return self._number()
        if _is_pn_chars_base(c) or c == ":":
            return self._pname_or_keyword()
        raise self.error(f"unexpected character {c!r}")

    def _iriref(self) -> Token:
        self._advance()  # '<'
        chars: List[str] = []
        while True:
            c = self._peek()
            if not c or c in " \t\r\n":
                raise self.error("unterminated IRI")
            if c == ">":
                self._advance()
                return Token("iriref", "".join(chars), 0, 0)
            if c == "\\":
                chars.append(self._unicode_escape(allow_echar=False))
                continue
            if c in '<"{}|^`':
                raise self.error(f"character {c!r} not allowed in IRI")
            chars.append(self._advance())

    def _unicode_escape(self, allow_echar: bool) -> str:
        self._advance()  # backslash
        c = self._peek()
        if c in ("u", "U"):
            width = 4 if c == "u" else 8
            self._advance()
            digits = ""
            for _ in range(width):
                d = self._peek()
                if not d or d not in "0123456789abcdefABCDEF":
                    raise self.error("bad \\u escape")
                digits += self._advance()
            return chr(int(digits, 16))
        if allow_echar and c in _STRING_ESCAPES:
            self._advance()
            return _STRING_ESCAPES[c]
        raise self.error(f"bad escape '\\{c}'")

    def _string(self) -> Token:
        quote = self._peek()
        long_form = self.text.startswith(quote * 3, self.pos)
        self._advance(3 if long_form else 1)
        chars: List[str] = []
        while True:
            c = self._peek()
            if not c:
                raise self.error("unterminated string")
            if not long_form and c in "\n\r":
                raise self.error("newline in single-line string")
            if c == "\\":
                chars.append(self._unicode_escape(allow_echar=True))
                continue
            if c == quote:
                if not long_form:
                    self._advance()
                    break
                if self.text.startswith(quote * 3, self.pos):
                    self._advance(3)
                    break
                chars.append(self._advance())
                continue
            chars.append(self._advance())
        return Token("string", "".join(chars), 0, 0)

    def _at_word(self) -> Token:
        self._advance()  # '@'
        start = self.pos
        while self._peek().isalpha() or (self.pos > start and self._peek() in "-0123456789"):
            self._advance()
        word = self.text[start : self.pos]
        if word == "prefix":
            return Token("@prefix", None, 0, 0)
        if word == "base":
            return Token("@base", None, 0, 0)
        if _LANGTAG_RE.fullmatch(word):
            return Token("langtag", word, 0, 0)
        raise self.error(f"malformed language tag or directive '@{word}'")

    def _blank_label(self) -> Token:
        self._advance(2)  # '_:'
        c = self._peek()
        if not (_is_pn_chars(c)):
            raise self.error("blank node label expected after '_:'")
        chars = [self._advance()]
        while True:
            c = self._peek()
            if _is_pn_chars(c):
                chars.append(self._advance())
            elif c == "." and _is_pn_chars(self._peek(1)):
                chars.append(self._advance())
            else:
                break
        return Token("blank", "".join(chars), 0, 0)

    def _number(self) -> Token:
        start = self.pos
        if self._peek() in "+-":
            self._advance()
        int_digits = 0
        while self._peek().isdigit():
            self._advance()
            int_digits += 1
        kind = "integer"
        if self._peek() == "." and self._peek(1).isdigit():
            self._advance()
            while self._peek().isdigit():
                self._advance()
            kind = "decimal"
        if kind == "integer" and self._peek() == "." and self._peek(1) in "eE":
            # DOUBLE with empty fraction, e.g. "1.e3"
            if self._peek(2).isdigit() or (self._peek(2) in "+-" and self._peek(3).isdigit()):
                self._advance()
                kind = "decimal"
        if self._peek() in "eE" and (
            self._peek(1).isdigit() or (self._peek(1) in "+-" and self._peek(2).isdigit())
        ):
            self._advance()
            if self._peek() in "+-":
                self._advance()
            while self._peek().isdigit():
                self._advance()
            kind = "double"
        lexical = self.text[start : self.pos]
        if kind == "integer" and int_digits == 0:
            raise self.error(f"malformed number {lexical!r}")
        return Token(kind, lexical, 0, 0)

    def _pname_or_keyword(self) -> Token:
        start = self.pos
        if self._peek() != ":":
            if not _is_pn_chars_base(self._peek()):
                raise self.error(f"unexpected character {self._peek()!r}")
            self._advance()
            while True:
                c = self._peek()
                if _is_pn_chars(c):
                    self._advance()
                elif c == "." and (_is_pn_chars(self._peek(1)) or self._peek(1) == "."):
                    self._advance()
                else:
                    break
        prefix_part = self.text[start : self.pos]
        if self._peek() != ":":
            if prefix_part == "a":
                return Token("a", None, 0, 0)
            if prefix_part in ("true", "false"):
                return Token("boolean", prefix_part, 0, 0)
            if prefix_part.upper() == "PREFIX":
                return Token("sparql_prefix", None, 0, 0)
            if prefix_part.upper() == "BASE":
                return Token("sparql_base", None, 0, 0)
            raise self.error(f"unexpected token {prefix_part!r}")
        self._advance()  # ':'
        local = self._pn_local()
        return Token("pname", (prefix_part, local), 0, 0)

    def _pn_local(self) -> str:
        chars: List[str] = []

        def take_one() -> bool:
            c = self._peek()
            if not c:
                return False
            if _is_pn_chars(c) or c == ":":
                chars.append(self._advance())
                return True
            if c == "%":
                hexpair = self._peek(1) + self._peek(2)
                if len(hexpair) == 2 and all(h in "0123456789abcdefABCDEF" for h in hexpair):
                    chars.append(self._advance(3))
                    return True
                raise self.error("bad %-escape in prefixed name")
            if c == "\\" and self._peek(1) in _LOCAL_ESCAPABLE:
                self._advance()
                chars.append(self._advance())
                return True
            return False

        if not take_one():
            return ""
        while True:
            c = self._peek()
            if c == "." and (
                _is_pn_chars(self._peek(1)) or self._peek(1) in ":.%" or self._peek(1) == "\\"
            ):
                chars.append(self._advance())
                continue
            if not take_one():
                break
        return "".join(chars)


# --- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: List[Token], base: Optional[str]):
        self.tokens = tokens
        self.idx = 0
        self.base = base
        self.graph = Graph()
        # Generated blank labels must never collide with document labels,
        # so collect document labels up front from the token stream.
        self._doc_labels: Set[str] = {t.value for t in tokens if t.kind == "blank"}
        self._gen_counter = 0

    def _peek(self) -> Token:
        return self.tokens[self.idx]

    def _next(self) -> Token:
        tok = self.tokens[self.idx]
        if tok.kind != "eof":
            self.idx += 1
        return tok

    def _expect(self, kind: str) -> Token:
        tok = self._next()
        if tok.kind != kind:
            raise TurtleSyntaxError(f"expected {kind!r}, found {tok.kind!r}", tok.line, tok.column)
        return tok

    def _error(self, message: str, tok: Token) -> TurtleSyntaxError:
        return TurtleSyntaxError(message, tok.line, tok.column)

    def _fresh_blank(self) -> BlankNode:
        while True:
            label = f"b{self._gen_counter}"
            self._gen_counter += 1
            if label not in self._doc_labels:
                return BlankNode(label)

    def parse(self) -> Graph:
        while self._peek().kind != "eof":
            kind = self._peek().kind
            if kind == "@prefix":
                self._next()
                self._prefix_directive(needs_dot=True)
            elif kind == "@base":
                self._next()
                self._base_directive(needs_dot=True)
            elif kind == "sparql_prefix":
                self._next()
                self._prefix_directive(needs_dot=False)
            elif kind == "sparql_base":
                self._next()
                self._base_directive(needs_dot=False)
            else:
                self._triples()
                self._expect(".")
        return self.graph

    def _prefix_directive(self, needs_dot: bool) -> None:
        tok = self._expect("pname")
        prefix, local = tok.value
        if local:
            raise self._error("prefix declaration must end with ':'", tok)
        iri_tok = self._expect("iriref")
        self.graph.bind(prefix, self._resolve(iri_tok))
        if needs_dot:
            self._expect(".")

    def _base_directive(self, needs_dot: bool) -> None:
        iri_tok = self._expect("iriref")
        self.base = self._resolve(iri_tok)
        if needs_dot:
            self._expect(".")

    def _resolve(self, tok: Token) -> str:
        try:
            return resolve_iri(self.base, tok.value)
        except ValueError as exc:
            raise self._error(str(exc), tok)

    def _triples(self) -> None:
        tok = self._peek()
        if tok.kind == "[":
            subject = self._blank_property_list()
            if self._peek().kind != ".":
                self._predicate_object_list(subject)
        else:
            subject = self._subject()
            self._predicate_object_list(subject)

    def _subject(self) -> Term:
        tok = self._peek()
        if tok.kind in ("iriref", "pname"):
            return self._iri()
        if tok.kind == "blank":
            self._next()
            return BlankNode(tok.value)
        if tok.kind == "(":
            return self._collection()
        raise self._error(f"expected subject, found {tok.kind!r}", tok)

    def _iri(self) -> Iri:
        tok = self._next()
        if tok.kind == "iriref":
            return Iri(self._resolve(tok))
        if tok.kind == "pname":
            prefix, local = tok.value
            if prefix not in self.graph.prefixes:
                raise UnresolvedPrefixError(
                    f"undeclared prefix {prefix + ':'!r}", tok.line, tok.column
                )
            return Iri(self.graph.prefixes[prefix] + local)
        raise self._error(f"expected IRI, found {tok.kind!r}", tok)

    def _predicate_object_list(self, subject: Term) -> None:
        while True:
            predicate = self._verb()
            self._object_list(subject, predicate)
            if self._peek().kind != ";":
                return
            while self._peek().kind == ";":
                self._next()
            if self._peek().kind in (".", "]"):
                return

    def _verb(self) -> Iri:
        tok = self._peek()
        if tok.kind == "a":
            self._next()
            return Iri(RDF.type)
        return self._iri()

    def _object_list(self, subject: Term, predicate: Iri) -> None:
        while True:
            obj = self._object()
            self.graph.add(Triple(subject, predicate, obj))
            if self._peek().kind != ",":
                return
            self._next()

    def _object(self) -> Term:
        tok = self._peek()
        if tok.kind in ("iriref", "pname"):
            return self._iri()
        if tok.kind == "blank":
            self._next()
            return BlankNode(tok.value)
        if tok.kind == "[":
            return self._blank_property_list()
        if tok.kind == "(":
            return self._collection()
        if tok.kind == "string":
            return self._rdf_literal()
        if tok.kind == "integer":
            self._next()
            return Literal(tok.value, datatype=XSD.integer)
        if tok.kind == "decimal":
            self._next()
            return Literal(tok.value, datatype=XSD.decimal)
        if tok.kind == "double":
            self._next()
            return Literal(tok.value, datatype=XSD.double)
        if tok.kind == "boolean":
            self._next()
            return Literal(tok.value, datatype=XSD.boolean)
        raise self._error(f"expected object, found {tok.kind!r}", tok)

    def _rdf_literal(self) -> Literal:
        tok = self._expect("string")
        nxt = self._peek()
        if nxt.kind == "langtag":
            self._next()
            return Literal(tok.value, language=nxt.value)
        if nxt.kind == "^^":
            self._next()
            datatype = self._iri()
            return Literal(tok.value, datatype=datatype.value)
        return Literal(tok.value)

    def _blank_property_list(self) -> BlankNode:
        self._expect("[")
        node = self._fresh_blank()
        if self._peek().kind != "]":
            self._predicate_object_list(node)
        self._expect("]")
        return node

    def _collection(self) -> Term:
        self._expect("(")
        items: List[Term] = []
        while self._peek().kind != ")":
            if self._peek().kind == "eof":
                raise self._error("unterminated collection", self._peek())
            items.append(self._object())
        self._expect(")")
        if not items:
            return Iri(RDF.nil)
        head = self._fresh_blank()
        node = head
        for pos, item in enumerate(items):
            self.graph.add(Triple(node, Iri(RDF.first), item))
            if pos == len(items) - 1:
                self.graph.add(Triple(node, Iri(RDF.rest), Iri(RDF.nil)))
            else:
                nxt = self._fresh_blank()
                self.graph.add(Triple(node, Iri(RDF.rest), nxt))
                node = nxt
        return head


def parse_turtle(document: str, base: Optional[str] = None) -> Graph:
    """Parse a Turtle document into a Graph.

    Raises TurtleSyntaxError (with line/column) on malformed input and
    UnresolvedPrefixError when a prefixed name uses an undeclared prefix.
    """
    tokens = _Lexer(document).tokens()
    return _Parser(tokens, base).parse()


# --- serializer ----------------------------------------------------------------

_SAFE_LOCAL = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_\-.]*")
_BARE_INTEGER = re.compile(r"[+-]?[0-9]+")
_BARE_DECIMAL = re.compile(r"[+-]?[0-9]*\.[0-9]+")
_BARE_DOUBLE = re.compile(r"[+-]?(?:[0-9]+\.[0-9]*|\.?[0-9]+)[eE][+-]?[0-9]+")


def _shorten_iri(iri: str, prefixes: Dict[str, str]) -> Optional[str]:
    best: Optional[Tuple[int, str, str]] = None
    for prefix, base in prefixes.items():
        if not iri.startswith(base):
            continue
        local = iri[len(base) :]
        if local and not (_SAFE_LOCAL.fullmatch(local) and not local.endswith(".")):
            continue
        candidate = (len(base), prefix, local)
        if best is None or candidate > best:
            best = candidate
    if best is None:
        return None
    return f"{best[1]}:{best[2]}"


def _render_term(term: Term, prefixes: Dict[str, str]) -> str:
    if isinstance(term, Iri):
        short = _shorten_iri(term.value, prefixes)
        return short if short is not None else term.n3()
    if isinstance(term, BlankNode):
        return term.n3()
    lit: Literal = term
    if lit.language is None:
        if lit.datatype == XSD.integer and _BARE_INTEGER.fullmatch(lit.lexical):
            return lit.lexical
        if lit.datatype == XSD.decimal and _BARE_DECIMAL.fullmatch(lit.lexical):
            return lit.lexical
        if lit.datatype == XSD.double and _BARE_DOUBLE.fullmatch(lit.lexical):
            return lit.lexical
        if lit.datatype == XSD.boolean and lit.lexical in ("true", "false"):
            return lit.lexical
        if lit.datatype == XSD.string:
            return lit.n3()
        short = _shorten_iri(lit.datatype, prefixes)
        if short is not None:
            quoted = Literal(lit.lexical).n3()
            return f"{quoted}^^{short}"
    return lit.n3()


def serialize_turtle(graph: Graph) -> str:
    """Deterministic Turtle rendering; parse(serialize(g)) is isomorphic to g."""
    lines: List[str] = []
    for prefix in sorted(graph.prefixes):
        lines.append(f"@prefix {prefix}: <{graph.prefixes[prefix]}> .")
    if graph.prefixes:
        lines.append("")

    by_subject: Dict[Term, List[Triple]] = {}
    for triple in graph:
        by_subject.setdefault(triple.subject, []).append(triple)

    rdf_type = Iri(RDF.type)
    for subject in sorted(by_subject, key=lambda t: t.n3()):
        triples = by_subject[subject]
        by_predicate: Dict[Term, List[Term]] = {}
        for t in triples:
            by_predicate.setdefault(t.predicate, []).append(t.object)
        predicates = sorted(by_predicate, key=lambda p: (p != rdf_type, p.n3()))
        subject_text = _render_term(subject, graph.prefixes)
        parts: List[str] = []
        for predicate in predicates:
            pred_text = "a" if predicate == rdf_type else _render_term(predicate, graph.prefixes)
            objects = sorted(by_predicate[predicate], key=lambda o: o.n3())
            obj_text = ", ".join(_render_term(o, graph.prefixes) for o in objects)
            parts.append(f"{pred_text} {obj_text}")
        body = " ;\n    ".join(parts)
        lines.append(f"{subject_text} {body} .")
    return "\n".join(lines) + "\n"
