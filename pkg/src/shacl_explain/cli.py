"""Command-line client for the validation service.

The CLI is a thin client: every command is a request against the HTTP API.
By default it mounts the service in-process (no daemon needed, state
persists through the KG file); pass ``--server`` to target a running
instance instead. ``serve`` starts one.

Exit codes: 0 conforming, 1 violations found, 2 parse/shape or usage
errors, 3 generation errors (the report is still written for completed
violations).
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path
from typing import List, Optional

import httpx

from .service.app import DEFAULT_KG_PATH, create_app

EXIT_CONFORMS = 0
EXIT_VIOLATIONS = 1
EXIT_INPUT_ERROR = 2
EXIT_GENERATION_ERROR = 3


class ServiceClient:
    """POST/GET against a remote server or an in-process app instance."""

    def __init__(self, server: Optional[str], kg_path: str):
        self._server = server
        self._kg_path = kg_path

    def request(self, method: str, path: str, payload: Optional[dict] = None) -> httpx.Response:
        if self._server:
            with httpx.Client(base_url=self._server, timeout=None) as client:
                return client.request(method, path, json=payload)
        app = create_app(default_kg_path=self._kg_path)

        async def go() -> httpx.Response:
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://shacl-explain.local", timeout=None
            ) as client:
                return await client.request(method, path, json=payload)

        return asyncio.run(go())


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read {path}: {exc}"))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT_ERROR


def _write_output(text: str, output: str) -> None:
    if output == "-":
        print(text)
    else:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        Path(output).write_text(text, encoding="utf-8")


def _generator_options(args: argparse.Namespace) -> dict:
    return {
        "backend": args.generator,
        "model": args.model or "",
        "endpoint": args.endpoint,
        "api_key_env": args.api_key_env,
    }


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", required=True, help="data graph Turtle file")
    parser.add_argument("--shapes", required=True, help="shapes graph Turtle file")
    parser.add_argument(
        "--language", action="append", default=None, metavar="TAG",
        help="BCP-47 explanation language; repeatable (default: en)",
    )
    parser.add_argument("--generator", choices=["template", "http"], default="template")
    parser.add_argument("--model", default=None, help="model name for the http backend")
    parser.add_argument("--endpoint", default=None, help="chat-completions URL for the http backend")
    parser.add_argument(
        "--api-key-env", default="LLM_API_KEY", metavar="VAR",
        help="environment variable holding the http backend credential",
    )
    parser.add_argument("--kg", default=DEFAULT_KG_PATH, help="violation KG Turtle file")
    parser.add_argument("--output", default="-", help="output file, or - for stdout")
    parser.add_argument("--no-explain", action="store_true", help="validation only")
    parser.add_argument(
        "--server", default=None, metavar="URL",
        help="use a running service instead of the in-process one",
    )


def _post(client: ServiceClient, path: str, payload: dict) -> httpx.Response:
    try:
        return client.request("POST", path, payload)
    except httpx.HTTPError as exc:
        raise SystemExit(_fail(f"service unreachable: {exc}"))


def _report_request_error(response: httpx.Response) -> int:
    try:
        detail = response.json().get("detail", response.text)
    except ValueError:
        detail = response.text
    if isinstance(detail, dict):
        message = detail.get("message", str(detail))
        where = ""
        if "line" in detail:
            where = f" (line {detail['line']}, column {detail.get('column', '?')})"
        return _fail(f"{detail.get('kind', 'request_error')}: {message}{where}")
    return _fail(str(detail))


def cmd_validate(args: argparse.Namespace) -> int:
    payload = {
        "data": _read_file(args.data),
        "shapes": _read_file(args.shapes),
        "languages": args.language or ["en"],
        "generator": _generator_options(args),
        "kg_path": args.kg,
        "no_explain": args.no_explain,
    }
    client = ServiceClient(args.server, kg_path=args.kg)
    response = _post(client, "/validate", payload)
    if response.status_code == 400:
        return _report_request_error(response)
    if response.status_code != 200:
        return _fail(f"unexpected service response {response.status_code}: {response.text[:200]}")
    report = response.json()
    _write_output(json.dumps(report, indent=2, ensure_ascii=False), args.output)
    if report.get("generation_error"):
        print(f"error: generation failed: {report['generation_error']}", file=sys.stderr)
        return EXIT_GENERATION_ERROR
    return EXIT_CONFORMS if report["conforms"] else EXIT_VIOLATIONS


def cmd_benchmark(args: argparse.Namespace) -> int:
    payload = {
        "data": _read_file(args.data),
        "shapes": _read_file(args.shapes),
        "runs": args.runs,
        "inject_latency_ms": args.inject_latency_ms,
        "languages": args.language or ["en"],
        "generator": _generator_options(args),
        "kg_path": args.kg,
        "fresh_kg": not args.no_fresh_kg,
        "no_explain": args.no_explain,
    }
    client = ServiceClient(args.server, kg_path=args.kg)
    response = _post(client, "/benchmark", payload)
    if response.status_code == 400:
        return _report_request_error(response)
    if response.status_code != 200:
        return _fail(f"unexpected service response {response.status_code}: {response.text[:200]}")
    rows = response.json()["rows"]
    from .pipeline import benchmark_rows_to_csv

    _write_output(benchmark_rows_to_csv(rows).rstrip("\n"), args.output)
    return EXIT_CONFORMS


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run(create_app(default_kg_path=args.kg), host=args.host, port=args.port)
    return EXIT_CONFORMS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shacl-explain",
        description="Validate RDF data against SHACL shapes and explain every violation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="validate and explain")
    _add_common_options(validate)
    validate.set_defaults(func=cmd_validate)

    benchmark = sub.add_parser("benchmark", help="repeated runs, CSV timings")
    _add_common_options(benchmark)
    benchmark.add_argument("--runs", type=int, default=10)
    benchmark.add_argument("--inject-latency-ms", type=int, default=0, metavar="MS",
                           help="artificial per-call latency for the template backend")
    benchmark.add_argument("--no-fresh-kg", action="store_true",
                           help="keep the existing KG instead of starting empty")
    benchmark.set_defaults(func=cmd_benchmark)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8032)
    serve.add_argument("--kg", default=DEFAULT_KG_PATH)
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
