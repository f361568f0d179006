"""Prompt construction.

Prompts are deterministic functions of (violation, tree, context,
language); the exact wording is versioned here and pinned by golden-file
tests. Context sections appear in fixed order: focus node triples, shape
documentation, domain rules, similar cases.
"""

from __future__ import annotations

from typing import List, Tuple

from ..context import DomainContext
from ..justify import JustificationTree, tree_to_text
from ..shacl.model import ConstraintViolation

PROMPT_VERSION = "v1"

_LANGUAGE_NAMES = {
    "en": "English",
    "de": "German",
    "fr": "French",
    "es": "Spanish",
    "it": "Italian",
    "pt": "Portuguese",
    "nl": "Dutch",
    "ja": "Japanese",
    "zh": "Chinese",
    "ko": "Korean",
    "ru": "Russian",
    "ar": "Arabic",
    "hi": "Hindi",
}

_SIMILAR_CASE_EXAMPLES = 3


def _language_directive(language: str) -> str:
    name = _LANGUAGE_NAMES.get(language.lower().split("-")[0])
    if name:
        return f"Respond in the language with BCP-47 tag '{language}' ({name})."
    return f"Respond in the language with BCP-47 tag '{language}'."


def _violation_section(violation: ConstraintViolation) -> List[str]:
    return [
        "## Violation",
        f"- focus node: {violation.focus_node.n3()}",
        f"- source shape: {violation.source_shape.n3()}",
        f"- constraint component: {violation.constraint_component}",
        f"- property path: {violation.result_path.canonical() if violation.result_path else '(none)'}",
        f"- violating value: {violation.value.n3() if violation.value is not None else '(none)'}",
        f"- severity: {violation.severity}",
        f"- violation type: {violation.violation_type.value}",
        f"- message: {violation.message}",
    ]


def render_context_sections(context: DomainContext) -> List[str]:
    lines = ["## Context", "### Focus node triples"]
    if context.ontology_fragments:
        lines.extend(t.n3() for t in context.ontology_fragments)
        if context.fragments_truncated:
            lines.append("(fragment list truncated)")
    else:
        lines.append("(none)")
    lines.append("### Shape documentation")
    if context.shape_documentation:
        lines.extend(f"- {doc}" for doc in context.shape_documentation)
    else:
        lines.append("(none)")
    lines.append("### Domain rules")
    if context.domain_rules:
        for rule_iri, comment in context.domain_rules:
            lines.append(f"- <{rule_iri}>: {comment}" if comment else f"- <{rule_iri}>")
    else:
        lines.append("(none)")
    lines.append("### Similar cases")
    if context.similar_case_count:
        noun = "node fails" if context.similar_case_count == 1 else "nodes fail"
        line = f"{context.similar_case_count} other {noun} the same check."
        examples = context.similar_cases[:_SIMILAR_CASE_EXAMPLES]
        if examples:
            line += " Examples: " + ", ".join(t.n3() for t in examples)
        lines.append(line)
    else:
        lines.append("(none)")
    return lines


def build_prompts(
    violation: ConstraintViolation,
    tree: JustificationTree,
    context: DomainContext,
    language: str,
) -> Tuple[str, str]:
    """(explanation prompt, suggestion prompt) for one violation."""
    directive = _language_directive(language)
    header = [
        "You are an assistant who helps data stewards understand and repair "
        "RDF data validation failures.",
        directive,
        "",
    ]
    shared = (
        header
        + _violation_section(violation)
        + ["", "## Justification", tree_to_text(tree), ""]
        + render_context_sections(context)
        + [""]
    )
    explanation_task = [
        "## Task",
        "Explain why this violation occurred, focusing on the violation type "
        "rather than the specific data values involved, so the explanation "
        "generalizes to every occurrence of this violation class.",
        "Write for readers without SHACL expertise and avoid jargon.",
        directive,
    ]
    suggestion_task = [
        "## Task",
        "List actionable correction suggestions that would resolve this class "
        "of violation, generalizing from the specific instances shown.",
        "Keep each suggestion self-contained and format them as a numbered list.",
        directive,
    ]
    explanation_prompt = "\n".join(shared + explanation_task)
    suggestion_prompt = "\n".join(shared + suggestion_task)
    return explanation_prompt, suggestion_prompt
