"""Deterministic offline backend.

Fills one sentence template per violation type plus two canned suggestions.
Texts are intentionally instance-independent (no focus node, no observed
counts): explanations are cached per signature and reused across data
instances, so wording must hold for every occurrence of the violation
class. English only; a non-English request still returns English text
tagged with the requested language and the pipeline records a warning.
"""

from __future__ import annotations

import time
from typing import List, Tuple

from ..context import DomainContext
from ..justify import JustificationTree
from ..namespaces import SH, local_name
from ..shacl.model import ConstraintViolation

MODEL_NAME = "template-v1"


def _path_of(violation: ConstraintViolation) -> str:
    return violation.result_path.canonical() if violation.result_path else "the focus node"


def _parameter_text(violation: ConstraintViolation, parameter: str) -> str:
    value = violation.constraint_parameters.get(parameter)
    if isinstance(value, list):
        return ", ".join(term.n3() for term in value)
    if value is None:
        return "?"
    lexical = getattr(value, "lexical", None)
    return lexical if lexical is not None else value.n3()


def _render(violation: ConstraintViolation) -> Tuple[str, List[str]]:
    component = violation.constraint_component
    path = _path_of(violation)

    if component == SH.MinCountConstraintComponent:
        k = _parameter_text(violation, SH.minCount)
        return (
            f"A node is missing values for {path}: the shape requires at least "
            f"{k} value(s), but fewer are present.",
            [
                f"Add the missing {path} value(s) so every targeted node reaches the minimum of {k}.",
                "If the data is actually complete, lower or remove the minCount parameter in the shape.",
            ],
        )
    if component == SH.MaxCountConstraintComponent:
        k = _parameter_text(violation, SH.maxCount)
        return (
            f"A node has too many values for {path}: the shape allows at most {k} value(s).",
            [
                f"Remove surplus {path} values until at most {k} remain.",
                "If multiple values are legitimate, raise or remove the maxCount parameter in the shape.",
            ],
        )
    if component == SH.DatatypeConstraintComponent:
        dt = _parameter_text(violation, SH.datatype)
        return (
            f"A value of {path} does not have the required datatype <{dt}>.",
            [
                f"Convert the offending values to literals of datatype <{dt}>.",
                "If other datatypes are acceptable, adjust the sh:datatype parameter in the shape.",
            ],
        )
    if component == SH.ClassConstraintComponent:
        cls = _parameter_text(violation, getattr(SH, "class"))
        return (
            f"A value of {path} is not declared an instance of the required class <{cls}>.",
            [
                f"Add an rdf:type <{cls}> statement for the referenced values, or point to a correctly typed node.",
                "If the class requirement is too strict, change the sh:class parameter in the shape.",
            ],
        )
    if component == SH.NodeKindConstraintComponent:
        kind = local_name(_parameter_text(violation, SH.nodeKind))
        return (
            f"A value of {path} is not of the required node kind {kind}.",
            [
                f"Replace the offending values with terms of kind {kind}.",
                "If several node kinds are valid, pick a broader sh:nodeKind in the shape.",
            ],
        )
    if component == SH.MinLengthConstraintComponent:
        n = _parameter_text(violation, SH.minLength)
        return (
            f"A value of {path} is too short: values must be at least {n} characters long.",
            [
                f"Lengthen the offending {path} values to at least {n} characters.",
                "If short values are valid, lower the minLength parameter in the shape.",
            ],
        )
    if component == SH.MaxLengthConstraintComponent:
        n = _parameter_text(violation, SH.maxLength)
        return (
            f"A value of {path} is too long: values must be at most {n} characters long.",
            [
                f"Shorten the offending {path} values to at most {n} characters.",
                "If long values are valid, raise the maxLength parameter in the shape.",
            ],
        )
    if component == SH.PatternConstraintComponent:
        pattern = _parameter_text(violation, SH.pattern)
        return (
            f"A value of {path} does not match the required pattern '{pattern}'.",
            [
                f"Rewrite the offending values so they match '{pattern}'.",
                "If the format is actually valid, fix the sh:pattern expression in the shape.",
            ],
        )
    range_components = {
        SH.MinInclusiveConstraintComponent: (SH.minInclusive, "at least"),
        SH.MaxInclusiveConstraintComponent: (SH.maxInclusive, "at most"),
        SH.MinExclusiveConstraintComponent: (SH.minExclusive, "greater than"),
        SH.MaxExclusiveConstraintComponent: (SH.maxExclusive, "less than"),
    }
    if component in range_components:
        parameter, phrase = range_components[component]
        bound = _parameter_text(violation, parameter)
        return (
            f"A value of {path} falls outside the allowed range: values must be "
            f"{phrase} {bound}.",
            [
                f"Correct the offending {path} values so they are {phrase} {bound}.",
                "If the range is wrong, adjust the range parameter in the shape.",
            ],
        )
    if component == SH.HasValueConstraintComponent:
        required = _parameter_text(violation, SH.hasValue)
        required_text = required if required.startswith("<") else f"{required}"
        return (
            f"A node is missing the required value {required_text} for {path}.",
            [
                f"Add the value {required_text} to {path} on every targeted node.",
                "If the fixed value is outdated, update the sh:hasValue parameter in the shape.",
            ],
        )
    if component == SH.InConstraintComponent:
        allowed = _parameter_text(violation, getattr(SH, "in"))
        return (
            f"A value of {path} is not among the allowed values [{allowed}].",
            [
                f"Replace the offending values with one of [{allowed}].",
                "If the enumeration is incomplete, extend the sh:in list in the shape.",
            ],
        )
    return (
        f"A node violates the {local_name(component)} constraint on {path}.",
        [
            "Inspect the shape definition to understand the requirement.",
            "Correct the data so the constraint holds, or revise the shape.",
        ],
    )


class TemplateGenerator:
    """Offline generator; ``delay_s`` simulates per-call generation latency."""

    name = MODEL_NAME
    english_only = True

    def __init__(self, delay_s: float = 0.0):
        self.delay_s = delay_s
        self.calls = 0

    def generate(
        self,
        violation: ConstraintViolation,
        tree: JustificationTree,
        context: DomainContext,
        language: str,
    ) -> Tuple[str, List[str]]:
        self.calls += 1
        if self.delay_s > 0:
            time.sleep(self.delay_s)
        return _render(violation)
