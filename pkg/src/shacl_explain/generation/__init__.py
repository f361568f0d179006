"""Explanation generation: prompts, backends, KG-first orchestration."""

from .explain import Backend, explain, make_backend, serialize_generation_input
from .http_backend import HttpGenerator, parse_suggestion_list
from .prompts import PROMPT_VERSION, build_prompts
from .template_backend import TemplateGenerator
from .types import (
    AuthError,
    ExplanationOutput,
    GenerationError,
    GeneratorConfig,
    GeneratorConfigError,
    ParseError,
)

__all__ = [
    "AuthError",
    "Backend",
    "ExplanationOutput",
    "GenerationError",
    "GeneratorConfig",
    "GeneratorConfigError",
    "HttpGenerator",
    "PROMPT_VERSION",
    "ParseError",
    "TemplateGenerator",
    "build_prompts",
    "explain",
    "make_backend",
    "parse_suggestion_list",
    "serialize_generation_input",
]
