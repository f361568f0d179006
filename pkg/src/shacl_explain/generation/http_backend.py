"""OpenAI-compatible chat-completion backend.

Two requests per violation: one for the explanation, one for the
suggestions (parsed from a numbered or bulleted list). Retries 429 and
5xx responses with exponential backoff; 401/403 fail immediately.
"""

from __future__ import annotations

import json
import os
import re
import time
from typing import List, Optional, Tuple

import httpx

from ..context import DomainContext
from ..justify import JustificationTree
from ..shacl.model import ConstraintViolation
from .prompts import build_prompts
from .types import AuthError, GenerationError, GeneratorConfig, GeneratorConfigError, ParseError

_RETRYABLE_STATUSES = {429, 500, 502, 503, 504}
_LIST_MARKER = re.compile(r"^\s*(?:\d+[.)]\s+|[-*•]\s+)")


def parse_suggestion_list(body: str) -> List[str]:
    """Split a completion into suggestion strings.

    Items start at enumeration markers (``1.``, ``2)``, ``-``, ``*``);
    continuation lines attach to the current item. Bodies without any
    marker become a single suggestion.
    """
    items: List[str] = []
    current: Optional[str] = None
    for line in body.splitlines():
        marker = _LIST_MARKER.match(line)
        if marker:
            if current is not None and current.strip():
                items.append(current.strip())
            current = line[marker.end():]
        elif current is not None:
            current += "\n" + line
    if current is not None and current.strip():
        items.append(current.strip())
    if items:
        return items
    stripped = body.strip()
    return [stripped] if stripped else []


class HttpGenerator:
    english_only = False

    def __init__(self, config: GeneratorConfig, client: Optional[httpx.Client] = None):
        if not config.endpoint:
            raise GeneratorConfigError("http backend requires an endpoint URL")
        api_key = os.environ.get(config.api_key_env, "")
        if not api_key:
            raise GeneratorConfigError(
                f"http backend requires a credential in ${config.api_key_env}"
            )
        self.config = config
        self.name = config.model or "unnamed-model"
        self.calls = 0
        self._api_key = api_key
        self._client = client or httpx.Client(timeout=config.timeout_s)

    def generate(
        self,
        violation: ConstraintViolation,
        tree: JustificationTree,
        context: DomainContext,
        language: str,
    ) -> Tuple[str, List[str]]:
        self.calls += 1
        explanation_prompt, suggestion_prompt = build_prompts(
            violation, tree, context, language
        )
        text = self._complete(explanation_prompt)
        raw_suggestions = self._complete(suggestion_prompt)
        return text, parse_suggestion_list(raw_suggestions)

    def _complete(self, prompt: str) -> str:
        request = {
            "model": self.config.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.config.temperature,
        }
        headers = {"Authorization": f"Bearer {self._api_key}"}
        last_error = "no attempts made"
        for attempt in range(self.config.max_retries + 1):
            try:
                response = self._client.post(
                    self.config.endpoint,
                    json=request,
                    headers=headers,
                    timeout=self.config.timeout_s,
                )
            except httpx.TimeoutException as exc:
                last_error = f"timeout: {exc}"
                response = None
            except httpx.TransportError as exc:
                last_error = f"transport error: {exc}"
                response = None
            if response is not None:
                if response.status_code in (401, 403):
                    raise AuthError(f"endpoint rejected credential (HTTP {response.status_code})")
                if response.status_code == 200:
                    return self._extract_content(response)
                if response.status_code not in _RETRYABLE_STATUSES:
                    raise GenerationError(
                        f"endpoint returned HTTP {response.status_code}: {response.text[:200]}"
                    )
                last_error = f"HTTP {response.status_code}"
            if attempt < self.config.max_retries:
                time.sleep(self.config.retry_backoff_s * (2 ** attempt))
        raise GenerationError(
            f"giving up after {self.config.max_retries} retries ({last_error})"
        )

    @staticmethod
    def _extract_content(response: httpx.Response) -> str:
        try:
            body = response.json()
        except (json.JSONDecodeError, ValueError):
            raise ParseError("response body is not valid JSON", raw_body=response.text)
        try:
            content = body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError):
            raise ParseError(
                "response JSON lacks choices[0].message.content", raw_body=response.text
            )
        if not isinstance(content, str):
            raise ParseError("completion content is not a string", raw_body=response.text)
        if not content.strip():
            raise ParseError("completion content is empty", raw_body=response.text)
        return content
