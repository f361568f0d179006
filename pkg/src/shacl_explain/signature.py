"""Instance-independent violation signatures.

A signature abstracts a violation to (constraint component, property path,
violation type): two violations differing only in focus node, value, or
shape id share a signature and therefore share cached explanations. The
hash is the lowercase-hex MD5 of ``component|path|TYPE``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .shacl.model import ConstraintViolation, ViolationType


@dataclass(frozen=True)
class ViolationSignature:
    constraint_component: str
    property_path: str  # canonical path string, "" when the violation has none
    violation_type: ViolationType
    hash: str

    def canonical_string(self) -> str:
        return f"{self.constraint_component}|{self.property_path}|{self.violation_type.value}"


def signature_hash(component: str, path: str, violation_type: ViolationType) -> str:
    canonical = f"{component}|{path}|{violation_type.value}"
    return hashlib.md5(canonical.encode("utf-8")).hexdigest()


def make_signature(violation: ConstraintViolation) -> ViolationSignature:
    path = violation.result_path.canonical() if violation.result_path else ""
    return ViolationSignature(
        constraint_component=violation.constraint_component,
        property_path=path,
        violation_type=violation.violation_type,
        hash=signature_hash(violation.constraint_component, path, violation.violation_type),
    )
