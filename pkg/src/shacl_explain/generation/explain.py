"""KG-first explanation: look up by signature and language, generate and
store only on a miss. A generation failure stores nothing."""

from __future__ import annotations

import json
from typing import Union

from ..context import DomainContext
from ..justify import JustificationTree, tree_to_json
from ..kg import ExplanationRecord, ViolationKnowledgeGraph
from ..shacl.model import ConstraintViolation
from ..signature import make_signature
from .http_backend import HttpGenerator
from .template_backend import TemplateGenerator
from .types import ExplanationOutput, GeneratorConfig, GeneratorConfigError

Backend = Union[TemplateGenerator, HttpGenerator]


def make_backend(config: GeneratorConfig, inject_latency_ms: int = 0) -> Backend:
    if config.backend == "template":
        return TemplateGenerator(delay_s=inject_latency_ms / 1000.0)
    if config.backend == "http":
        return HttpGenerator(config)
    raise GeneratorConfigError(f"unknown generator backend {config.backend!r}")


def serialize_generation_input(
    violation: ConstraintViolation,
    tree: JustificationTree,
    context: DomainContext,
) -> str:
    payload = {
        "violation": violation.to_dict(),
        "justification_tree": tree_to_json(tree),
        "context": context.to_dict(),
    }
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


def explain(
    violation: ConstraintViolation,
    tree: JustificationTree,
    context: DomainContext,
    language: str,
    kg: ViolationKnowledgeGraph,
    backend: Backend,
) -> ExplanationOutput:
    signature = make_signature(violation)
    cached = kg.lookup(signature, language)
    if cached is not None:
        return ExplanationOutput(
            natural_language_text=cached.natural_language_text,
            correction_suggestions=list(cached.correction_suggestions),
            language=cached.language,
            provided_by_model=cached.provided_by_model,
            cache_hit=True,
            signature_hash=signature.hash,
        )
    text, suggestions = backend.generate(violation, tree, context, language)
    record = ExplanationRecord(
        signature=signature,
        language=language,
        natural_language_text=text,
        correction_suggestions=suggestions,
        provided_by_model=backend.name,
        input_payload=serialize_generation_input(violation, tree, context),
    )
    kg.store(record)
    return ExplanationOutput(
        natural_language_text=text,
        correction_suggestions=list(suggestions),
        language=language,
        provided_by_model=backend.name,
        cache_hit=False,
        signature_hash=signature.hash,
    )
