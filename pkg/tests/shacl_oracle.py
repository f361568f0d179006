"""Independent brute-force SHACL check used as the engine's test oracle.

Enumerates (focus, shape, component) straight off the raw graphs with full
scans and its own per-component predicates. Shares only the triple
container with the engine; none of the shape-model or engine code is used.
"""

from shacl_explain.rdf import BlankNode, Iri, Literal

SH = "http://www.w3.org/ns/shacl#"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDF_FIRST = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first"
RDF_REST = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest"
RDF_NIL = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil"
SUBCLASS = "http://www.w3.org/2000/01/rdf-schema#subClassOf"

NUMERIC = {
    "http://www.w3.org/2001/XMLSchema#" + name
    for name in (
        "integer", "decimal", "float", "double", "long", "int", "short", "byte",
        "nonNegativeInteger", "positiveInteger", "nonPositiveInteger",
        "negativeInteger", "unsignedLong", "unsignedInt", "unsignedShort",
        "unsignedByte",
    )
}


def _objects(graph, subject, predicate_iri):
    return [t.object for t in graph
            if t.subject == subject and t.predicate == Iri(predicate_iri)]


def _subjects(graph, predicate_iri, obj):
    return [t.subject for t in graph
            if t.predicate == Iri(predicate_iri) and t.object == obj]


def _list_items(graph, head):
    items = []
    while head != Iri(RDF_NIL):
        items.extend(_objects(graph, head, RDF_FIRST))
        rest = _objects(graph, head, RDF_REST)
        head = rest[0]
    return items


def _as_number(term):
    if isinstance(term, Literal) and term.datatype in NUMERIC:
        try:
            return float(term.lexical)
        except ValueError:
            return None
    return None


def _instances_of(data, cls):
    classes = {cls}
    changed = True
    while changed:
        changed = False
        for t in data:
            if t.predicate == Iri(SUBCLASS) and t.object in classes and t.subject not in classes:
                classes.add(t.subject)
                changed = True
    return {t.subject for t in data if t.predicate == Iri(RDF_TYPE) and t.object in classes}


def _focus_nodes(data, shapes, shape):
    nodes = set()
    for cls in _objects(shapes, shape, SH + "targetClass"):
        nodes |= _instances_of(data, cls)
    nodes.update(_objects(shapes, shape, SH + "targetNode"))
    for pred in _objects(shapes, shape, SH + "targetSubjectsOf"):
        nodes.update(t.subject for t in data if t.predicate == pred)
    for pred in _objects(shapes, shape, SH + "targetObjectsOf"):
        nodes.update(t.object for t in data if t.predicate == pred)
    return nodes


def _path_of(shapes, shape):
    """(predicate iri, inverse flag, canonical string) or None."""
    paths = _objects(shapes, shape, SH + "path")
    if not paths:
        return None
    path = paths[0]
    if isinstance(path, Iri):
        return (path.value, False, path.value)
    inv = _objects(shapes, path, SH + "inversePath")
    if inv and isinstance(inv[0], Iri):
        return (inv[0].value, True, "^" + inv[0].value)
    raise ValueError("oracle: unsupported path")


def _values(data, focus, path):
    if path is None:
        return [focus]
    predicate, inverse, _ = path
    if inverse:
        return [t.subject for t in data if t.predicate == Iri(predicate) and t.object == focus]
    return [t.object for t in data if t.subject == focus and t.predicate == Iri(predicate)]


def _string_of(term):
    if isinstance(term, Literal):
        return term.lexical
    if isinstance(term, Iri):
        return term.value
    return None


def _check(data, shapes, shape, focus, values):
    """Yield (component iri, offending value n3 or None) failures."""
    import re

    def param(name):
        objs = _objects(shapes, shape, SH + name)
        return objs[0] if objs else None

    p = param("minCount")
    if p is not None and len(values) < int(p.lexical):
        yield (SH + "MinCountConstraintComponent", None)
    p = param("maxCount")
    if p is not None and len(values) > int(p.lexical):
        yield (SH + "MaxCountConstraintComponent", None)
    p = param("datatype")
    if p is not None:
        for v in values:
            if not (isinstance(v, Literal) and v.datatype == p.value):
                yield (SH + "DatatypeConstraintComponent", v.n3())
    p = param("class")
    if p is not None:
        members = _instances_of(data, p)
        for v in values:
            if isinstance(v, Literal) or v not in members:
                yield (SH + "ClassConstraintComponent", v.n3())
    p = param("nodeKind")
    if p is not None:
        kinds = {
            SH + "IRI": lambda v: isinstance(v, Iri),
            SH + "BlankNode": lambda v: isinstance(v, BlankNode),
            SH + "Literal": lambda v: isinstance(v, Literal),
            SH + "BlankNodeOrIRI": lambda v: not isinstance(v, Literal),
            SH + "BlankNodeOrLiteral": lambda v: not isinstance(v, Iri),
            SH + "IRIOrLiteral": lambda v: not isinstance(v, BlankNode),
        }
        for v in values:
            if not kinds[p.value](v):
                yield (SH + "NodeKindConstraintComponent", v.n3())
    p = param("minLength")
    if p is not None:
        for v in values:
            text = _string_of(v)
            if text is None or len(text) < int(p.lexical):
                yield (SH + "MinLengthConstraintComponent", v.n3())
    p = param("maxLength")
    if p is not None:
        for v in values:
            text = _string_of(v)
            if text is None or len(text) > int(p.lexical):
                yield (SH + "MaxLengthConstraintComponent", v.n3())
    p = param("pattern")
    if p is not None:
        flags = 0
        f = param("flags")
        if f is not None:
            for char, val in (("i", re.I), ("m", re.M), ("s", re.S)):
                if char in f.lexical:
                    flags |= val
        rx = re.compile(p.lexical, flags)
        for v in values:
            text = _string_of(v)
            if text is None or not rx.search(text):
                yield (SH + "PatternConstraintComponent", v.n3())
    for name, comp, ok in (
        ("minInclusive", "MinInclusiveConstraintComponent", lambda n, b: n >= b),
        ("maxInclusive", "MaxInclusiveConstraintComponent", lambda n, b: n <= b),
        ("minExclusive", "MinExclusiveConstraintComponent", lambda n, b: n > b),
        ("maxExclusive", "MaxExclusiveConstraintComponent", lambda n, b: n < b),
    ):
        p = param(name)
        if p is not None:
            bound = _as_number(p)
            for v in values:
                n = _as_number(v)
                if n is None or bound is None or not ok(n, bound):
                    yield (SH + comp, v.n3())
    p = param("hasValue")
    if p is not None and p not in values:
        yield (SH + "HasValueConstraintComponent", None)
    p = param("in")
    if p is not None:
        allowed = _list_items(shapes, p)
        for v in values:
            if v not in allowed:
                yield (SH + "InConstraintComponent", v.n3())


def oracle_validate(data, shapes):
    """Set of (focus n3, shape n3, component, path string, value n3 | None)."""
    shape_ids = set()
    for t in shapes:
        if t.predicate == Iri(RDF_TYPE) and t.object in (
            Iri(SH + "NodeShape"), Iri(SH + "PropertyShape")
        ):
            shape_ids.add(t.subject)
        if t.predicate in (
            Iri(SH + "targetClass"), Iri(SH + "targetNode"),
            Iri(SH + "targetSubjectsOf"), Iri(SH + "targetObjectsOf"),
        ):
            shape_ids.add(t.subject)

    results = set()
    for shape in shape_ids:
        focuses = _focus_nodes(data, shapes, shape)
        checked = [(shape, _path_of(shapes, shape))]
        for child in _objects(shapes, shape, SH + "property"):
            checked.append((child, _path_of(shapes, child)))
        for focus in focuses:
            for target_shape, path in checked:
                values = _values(data, focus, path)
                for component, value_n3 in _check(data, shapes, target_shape, focus, values):
                    results.add((
                        focus.n3(),
                        target_shape.n3(),
                        component,
                        path[2] if path else "",
                        value_n3,
                    ))
    return results
