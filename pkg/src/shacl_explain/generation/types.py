"""Generation-facing data types and errors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional


@dataclass
class ExplanationOutput:
    natural_language_text: str
    correction_suggestions: List[str]
    language: str
    provided_by_model: str
    cache_hit: bool
    signature_hash: str

    def to_dict(self) -> dict:
        return {
            "text": self.natural_language_text,
            "suggestions": list(self.correction_suggestions),
            "language": self.language,
            "model": self.provided_by_model,
            "cache_hit": self.cache_hit,
            "signature_hash": self.signature_hash,
        }


@dataclass
class GeneratorConfig:
    backend: str = "template"  # "template" | "http"
    endpoint: Optional[str] = None
    model: str = ""
    timeout_s: float = 30.0
    max_retries: int = 5
    retry_backoff_s: float = 1.0
    temperature: float = 0.0
    # Name of the environment variable holding the API credential. The
    # credential itself is read lazily and never logged.
    api_key_env: str = "LLM_API_KEY"


class GenerationError(Exception):
    """Backend failed after exhausting retries (or on a non-retryable status)."""


class AuthError(GenerationError):
    """The endpoint rejected the credential (401/403); never retried."""


class ParseError(GenerationError):
    """The endpoint's response body could not be interpreted."""

    def __init__(self, message: str, raw_body: str = ""):
        super().__init__(message)
        self.raw_body = raw_body


class GeneratorConfigError(ValueError):
    """The generator configuration is incomplete for the chosen backend."""
