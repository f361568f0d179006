"""End-to-end runs: parse, validate, justify, retrieve, explain, report.

A validation run executes exactly: parse graphs -> parse shapes ->
validate -> per violation: build tree -> assemble context -> explain
(KG-first) -> report. The KG is saved once per run by the caller that owns
persistence.

The benchmark repeats full runs against one KG (deleted up front unless
pre-warmed) and reports per-run timings and backend-call counts.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from .context import RetrievalCaps, assemble_context
from .generation import (
    Backend,
    GenerationError,
    GeneratorConfig,
    GeneratorConfigError,
    explain,
    make_backend,
)
from .justify import build_justification_tree, tree_to_json
from .kg import LANGUAGE_TAG_RE, ViolationKnowledgeGraph
from .rdf import parse_turtle
from .shacl import parse_shapes, validate
from .signature import make_signature

BENCHMARK_CSV_HEADER = "run_index,total_ms,validate_ms,explain_ms,backend_calls,kg_hits,kg_misses"


@dataclass
class RunMeta:
    backend_calls: int = 0
    kg_lookups: int = 0
    kg_hits: int = 0
    kg_misses: int = 0


def _ms(seconds: float) -> float:
    return round(seconds * 1000.0, 3)


def run_validation(
    data_text: str,
    shapes_text: str,
    *,
    languages: Sequence[str] = ("en",),
    generator: Optional[GeneratorConfig] = None,
    backend: Optional[Backend] = None,
    kg: Optional[ViolationKnowledgeGraph] = None,
    no_explain: bool = False,
    caps: Optional[RetrievalCaps] = None,
) -> Tuple[dict, RunMeta]:
    """One full pipeline run. Returns (report dict, run metadata).

    Parse and shape errors propagate to the caller; generation errors are
    recorded in the report (completed violations keep their explanations).
    """
    kg = kg if kg is not None else ViolationKnowledgeGraph()
    languages = [lang.strip().lower() for lang in languages if lang.strip()] or ["en"]
    for language in languages:
        if not LANGUAGE_TAG_RE.match(language):
            raise ValueError(f"invalid language tag {language!r}")
    total_start = time.perf_counter()

    parse_start = time.perf_counter()
    data = parse_turtle(data_text)
    shapes = parse_turtle(shapes_text)
    model = parse_shapes(shapes)
    parse_ms = _ms(time.perf_counter() - parse_start)

    validate_start = time.perf_counter()
    violations = validate(data, model)
    validate_ms = _ms(time.perf_counter() - validate_start)

    warnings = list(model.warnings)
    generation_error: Optional[str] = None
    entries: List[dict] = []
    stats_before = kg.stats.snapshot()
    backend_calls_before = 0

    explain_start = time.perf_counter()
    if no_explain:
        entries = [
            {**v.to_dict(), "justification_tree": None,
             "explanation": None, "explanations": None}
            for v in violations
        ]
        explain_ms = 0.0
    else:
        failed = False
        if backend is None:
            try:
                backend = make_backend(generator or GeneratorConfig())
            except GeneratorConfigError as exc:
                generation_error = str(exc)
                failed = True
        if backend is not None:
            backend_calls_before = backend.calls
            if getattr(backend, "english_only", False):
                for language in languages:
                    if language.lower() != "en":
                        warnings.append(
                            f"template backend returns English text for requested "
                            f"language '{language}'"
                        )
        for violation in violations:
            entry = {**violation.to_dict(), "justification_tree": None,
                     "explanation": None, "explanations": None}
            if not failed:
                tree = build_justification_tree(violation, data, shapes)
                entry["justification_tree"] = tree_to_json(tree)
                context = assemble_context(data, shapes, violation, model, caps)
                outputs = []
                try:
                    for language in languages:
                        outputs.append(
                            explain(violation, tree, context, language, kg, backend)
                        )
                except (GenerationError, GeneratorConfigError) as exc:
                    generation_error = str(exc)
                    failed = True
                if outputs:
                    entry["explanation"] = outputs[0].to_dict()
                    entry["explanations"] = [o.to_dict() for o in outputs]
            entries.append(entry)
        explain_ms = _ms(time.perf_counter() - explain_start)

    delta = kg.stats.since(stats_before)
    meta = RunMeta(
        backend_calls=(backend.calls - backend_calls_before) if backend else 0,
        kg_lookups=delta.lookups,
        kg_hits=delta.hits,
        kg_misses=delta.misses,
    )
    unique_signatures = len({make_signature(v).hash for v in violations})
    report = {
        "conforms": not violations,
        "violations": entries,
        "stats": {
            "violation_count": len(violations),
            "unique_signatures": unique_signatures,
            "kg_lookups": meta.kg_lookups,
            "kg_hits": meta.kg_hits,
            "kg_misses": meta.kg_misses,
            "kg_hit_rate": delta.hit_rate,
            "timings": {
                "parse_ms": parse_ms,
                "validate_ms": validate_ms,
                "explain_ms": explain_ms,
                "total_ms": _ms(time.perf_counter() - total_start),
            },
        },
        "warnings": warnings,
        "generation_error": generation_error,
    }
    return report, meta


def run_benchmark(
    data_text: str,
    shapes_text: str,
    *,
    runs: int = 10,
    inject_latency_ms: int = 0,
    languages: Sequence[str] = ("en",),
    generator: Optional[GeneratorConfig] = None,
    kg_path: Optional[Union[str, Path]] = None,
    fresh_kg: bool = True,
    no_explain: bool = False,
) -> List[dict]:
    """N consecutive full runs; the KG persists across runs.

    With ``fresh_kg`` the KG file is deleted before run 1 only, isolating
    the first-run generation cost that later runs amortize away.
    """
    kg_file = Path(kg_path) if kg_path else None
    if kg_file and fresh_kg and kg_file.exists():
        kg_file.unlink()
    if kg_file and kg_file.exists():
        kg = ViolationKnowledgeGraph.load(kg_file)
    else:
        kg = ViolationKnowledgeGraph()

    rows: List[dict] = []
    for run_index in range(1, runs + 1):
        backend = None
        if not no_explain:
            backend = make_backend(generator or GeneratorConfig(), inject_latency_ms)
        report, meta = run_validation(
            data_text,
            shapes_text,
            languages=languages,
            backend=backend,
            kg=kg,
            no_explain=no_explain,
        )
        if kg_file:
            kg.save(kg_file)
        timings = report["stats"]["timings"]
        rows.append({
            "run_index": run_index,
            "total_ms": timings["total_ms"],
            "validate_ms": timings["validate_ms"],
            "explain_ms": timings["explain_ms"],
            "backend_calls": meta.backend_calls,
            "kg_hits": meta.kg_hits,
            "kg_misses": meta.kg_misses,
        })
    return rows


def benchmark_rows_to_csv(rows: List[dict]) -> str:
    lines = [BENCHMARK_CSV_HEADER]
    for row in rows:
        lines.append(
            f"{row['run_index']},{row['total_ms']},{row['validate_ms']},"
            f"{row['explain_ms']},{row['backend_calls']},{row['kg_hits']},"
            f"{row['kg_misses']}"
        )
    return "\n".join(lines) + "\n"
