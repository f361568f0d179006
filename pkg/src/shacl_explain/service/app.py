"""FastAPI service wrapping the validation pipeline.

The service owns the violation KGs: each KG file is loaded once, kept
resident, and saved after every mutating run, with a per-path lock
enforcing the single-writer discipline. Clients send graph contents (not
paths), so one long-running instance can serve many callers while they all
share the explanation cache.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Callable, Dict

from fastapi import FastAPI, HTTPException, Query

from .. import __version__
from ..kg import SchemaError, ViolationKnowledgeGraph
from ..pipeline import run_benchmark, run_validation
from ..rdf import TurtleSyntaxError
from ..shacl import ShapeParseError
from .models import (
    BenchmarkRequest,
    BenchmarkResponse,
    HealthResponse,
    KgStatsResponse,
    Report,
    ValidateRequest,
)

DEFAULT_KG_PATH = "data/validation_kg.ttl"


class KgRegistry:
    """Resident KGs keyed by file path, one lock per path."""

    def __init__(self):
        self._kgs: Dict[str, ViolationKnowledgeGraph] = {}
        self._locks: Dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def _lock_for(self, path: str) -> threading.Lock:
        with self._registry_lock:
            if path not in self._locks:
                self._locks[path] = threading.Lock()
            return self._locks[path]

    def _load(self, path: str) -> ViolationKnowledgeGraph:
        if path not in self._kgs:
            file = Path(path)
            if file.exists():
                self._kgs[path] = ViolationKnowledgeGraph.load(file)
            else:
                self._kgs[path] = ViolationKnowledgeGraph()
        return self._kgs[path]

    def run(self, path: str, fn: Callable[[ViolationKnowledgeGraph], object]) -> object:
        """Run ``fn`` against the KG for ``path`` and persist afterwards."""
        with self._lock_for(path):
            kg = self._load(path)
            result = fn(kg)
            kg.save(path)
            return result

    def peek(self, path: str) -> ViolationKnowledgeGraph:
        with self._lock_for(path):
            return self._load(path)

    def invalidate(self, path: str) -> None:
        # Only touches the map; callers may already hold the path lock.
        with self._registry_lock:
            self._kgs.pop(path, None)

    def exclusive(self, path: str) -> threading.Lock:
        return self._lock_for(path)


def _bad_request(kind: str, exc: Exception) -> HTTPException:
    detail = {"kind": kind, "message": str(exc)}
    if isinstance(exc, TurtleSyntaxError):
        detail["line"] = exc.line
        detail["column"] = exc.column
    return HTTPException(status_code=400, detail=detail)


def create_app(default_kg_path: str = DEFAULT_KG_PATH) -> FastAPI:
    app = FastAPI(
        title="shacl-explain",
        description="Explainable SHACL validation with cached multilingual explanations",
        version=__version__,
    )
    registry = KgRegistry()
    app.state.kg_registry = registry
    app.state.default_kg_path = default_kg_path

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/validate", response_model=Report)
    def validate_graphs(request: ValidateRequest) -> Report:
        kg_path = request.kg_path or app.state.default_kg_path

        def run(kg: ViolationKnowledgeGraph):
            return run_validation(
                request.data,
                request.shapes,
                languages=request.languages,
                generator=request.generator.to_config(),
                kg=kg,
                no_explain=request.no_explain,
            )

        try:
            report, _meta = registry.run(kg_path, run)
        except TurtleSyntaxError as exc:
            raise _bad_request("syntax_error", exc)
        except ShapeParseError as exc:
            raise _bad_request("shape_error", exc)
        except SchemaError as exc:
            raise _bad_request("kg_schema_error", exc)
        return Report.model_validate(report)

    @app.post("/benchmark", response_model=BenchmarkResponse)
    def benchmark(request: BenchmarkRequest) -> BenchmarkResponse:
        kg_path = request.kg_path or app.state.default_kg_path
        with registry.exclusive(kg_path):
            registry.invalidate(kg_path)
            try:
                rows = run_benchmark(
                    request.data,
                    request.shapes,
                    runs=request.runs,
                    inject_latency_ms=request.inject_latency_ms,
                    languages=request.languages,
                    generator=request.generator.to_config(),
                    kg_path=kg_path,
                    fresh_kg=request.fresh_kg,
                    no_explain=request.no_explain,
                )
            except TurtleSyntaxError as exc:
                raise _bad_request("syntax_error", exc)
            except ShapeParseError as exc:
                raise _bad_request("shape_error", exc)
        registry.invalidate(kg_path)
        return BenchmarkResponse.model_validate({"rows": rows})

    @app.get("/kg/stats", response_model=KgStatsResponse)
    def kg_stats(kg_path: str = Query(default="")) -> KgStatsResponse:
        path = kg_path or app.state.default_kg_path
        try:
            kg = registry.peek(path)
        except (TurtleSyntaxError, SchemaError) as exc:
            raise _bad_request("kg_schema_error", exc)
        return KgStatsResponse(
            kg_path=path,
            signatures=kg.signature_count(),
            records=kg.record_count(),
            lookups=kg.stats.lookups,
            hits=kg.stats.hits,
            misses=kg.stats.misses,
            hit_rate=kg.stats.hit_rate,
        )

    return app


app = create_app()
