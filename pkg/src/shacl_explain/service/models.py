"""Pydantic request/response models for the validation service."""

from __future__ import annotations

from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator

from ..generation import GeneratorConfig
from ..kg import LANGUAGE_TAG_RE


def _check_languages(languages: List[str]) -> List[str]:
    for tag in languages:
        if not LANGUAGE_TAG_RE.match(tag.strip()):
            raise ValueError(f"invalid BCP-47 language tag {tag!r}")
    return languages


class GeneratorOptions(BaseModel):
    backend: Literal["template", "http"] = "template"
    model: str = ""
    endpoint: Optional[str] = None
    temperature: float = 0.0
    timeout_s: float = 30.0
    max_retries: int = Field(default=5, ge=0)
    retry_backoff_s: float = Field(default=1.0, ge=0.0)
    api_key_env: str = "LLM_API_KEY"

    def to_config(self) -> GeneratorConfig:
        return GeneratorConfig(
            backend=self.backend,
            endpoint=self.endpoint,
            model=self.model,
            timeout_s=self.timeout_s,
            max_retries=self.max_retries,
            retry_backoff_s=self.retry_backoff_s,
            temperature=self.temperature,
            api_key_env=self.api_key_env,
        )


class ValidateRequest(BaseModel):
    data: str = Field(description="Data graph as Turtle text")
    shapes: str = Field(description="Shapes graph as Turtle text")
    languages: List[str] = Field(default_factory=lambda: ["en"])
    generator: GeneratorOptions = Field(default_factory=GeneratorOptions)
    kg_path: Optional[str] = None
    no_explain: bool = False

    _languages_valid = field_validator("languages")(_check_languages)


class BenchmarkRequest(BaseModel):
    data: str
    shapes: str
    runs: int = Field(default=10, ge=1, le=1000)
    inject_latency_ms: int = Field(default=0, ge=0)
    languages: List[str] = Field(default_factory=lambda: ["en"])
    generator: GeneratorOptions = Field(default_factory=GeneratorOptions)
    kg_path: Optional[str] = None
    fresh_kg: bool = True
    no_explain: bool = False

    _languages_valid = field_validator("languages")(_check_languages)


class EvidenceTriple(BaseModel):
    subject: str
    predicate: str
    object: str


class TreeNode(BaseModel):
    kind: Literal["CONCLUSION", "PREMISE", "OBSERVATION", "INFERENCE"]
    statement: str
    evidence: List[EvidenceTriple]
    children: List["TreeNode"]


class Explanation(BaseModel):
    text: str
    suggestions: List[str]
    language: str
    model: str
    cache_hit: bool
    signature_hash: str


class ViolationEntry(BaseModel):
    focus_node: str
    source_shape: str
    constraint_component: str
    result_path: Optional[str]
    value: Optional[str]
    severity: str
    message: str
    violation_type: str
    constraint_parameters: Dict[str, Union[str, List[str]]]
    focus_node_types: List[str]
    justification_tree: Optional[TreeNode]
    explanation: Optional[Explanation]
    explanations: Optional[List[Explanation]] = None


class Timings(BaseModel):
    parse_ms: float
    validate_ms: float
    explain_ms: float
    total_ms: float


class RunStats(BaseModel):
    violation_count: int
    unique_signatures: int
    kg_lookups: int
    kg_hits: int
    kg_misses: int
    kg_hit_rate: float
    timings: Timings


class Report(BaseModel):
    conforms: bool
    violations: List[ViolationEntry]
    stats: RunStats
    warnings: List[str]
    generation_error: Optional[str] = None


class BenchmarkRow(BaseModel):
    run_index: int
    total_ms: float
    validate_ms: float
    explain_ms: float
    backend_calls: int
    kg_hits: int
    kg_misses: int


class BenchmarkResponse(BaseModel):
    rows: List[BenchmarkRow]


class KgStatsResponse(BaseModel):
    kg_path: str
    signatures: int
    records: int
    lookups: int
    hits: int
    misses: int
    hit_rate: float


class HealthResponse(BaseModel):
    status: str
    version: str


TreeNode.model_rebuild()
