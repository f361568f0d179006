import json
import socket
import threading
import time

import httpx
import pytest

from conftest import MISSING_NAME_DATA, MISSING_NAME_SHAPES, PREFIXES

from shacl_explain.cli import main
from shacl_explain.pipeline import BENCHMARK_CSV_HEADER

CONFORMING_DATA = PREFIXES + 'ex:resource1 a ex:Person ; ex:hasName "One" .'

TWO_SIGNATURE_SHAPES = PREFIXES + """
ex:PersonShape a sh:NodeShape ; sh:targetClass ex:Person ;
    sh:property ex:NameShape ; sh:property ex:AgeShape .
ex:NameShape sh:path ex:hasName ; sh:minCount 1 .
ex:AgeShape sh:path ex:hasAge ; sh:minInclusive 0 .
"""

FOUR_VIOLATION_DATA = PREFIXES + """
ex:a a ex:Person ; ex:hasAge "-1"^^xsd:integer .
ex:b a ex:Person ; ex:hasAge "-2"^^xsd:integer .
"""


@pytest.fixture
def workspace(tmp_path):
    files = {
        "conforming": tmp_path / "conforming.ttl",
        "violating": tmp_path / "violating.ttl",
        "four": tmp_path / "four.ttl",
        "shapes": tmp_path / "shapes.ttl",
        "two_sig_shapes": tmp_path / "two_sig_shapes.ttl",
        "kg": tmp_path / "kg.ttl",
        "out": tmp_path / "report.json",
    }
    files["conforming"].write_text(CONFORMING_DATA)
    files["violating"].write_text(MISSING_NAME_DATA)
    files["four"].write_text(FOUR_VIOLATION_DATA)
    files["shapes"].write_text(MISSING_NAME_SHAPES)
    files["two_sig_shapes"].write_text(TWO_SIGNATURE_SHAPES)
    return files


def validate_args(files, data_key="violating", shapes_key="shapes", **extra):
    args = [
        "validate",
        "--data", str(files[data_key]),
        "--shapes", str(files[shapes_key]),
        "--kg", str(files["kg"]),
        "--output", str(files["out"]),
    ]
    for key, value in extra.items():
        flag = "--" + key.replace("_", "-")
        if value is True:
            args.append(flag)
        elif isinstance(value, list):
            for item in value:
                args.extend([flag, item])
        else:
            args.extend([flag, str(value)])
    return args


def test_conforming_exit_zero(workspace, capsys):
    code = main(validate_args(workspace, data_key="conforming", output="-"))
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["conforms"] is True
    assert report["violations"] == []


def test_violations_exit_one_and_report_file(workspace):
    code = main(validate_args(workspace))
    assert code == 1
    report = json.loads(workspace["out"].read_text())
    assert report["conforms"] is False
    assert len(report["violations"]) == 2
    assert workspace["kg"].exists()


def test_four_violations_two_signatures_two_generations(workspace):
    code = main(validate_args(workspace, data_key="four", shapes_key="two_sig_shapes"))
    assert code == 1
    report = json.loads(workspace["out"].read_text())
    assert report["stats"]["violation_count"] == 4
    assert report["stats"]["unique_signatures"] == 2
    assert report["stats"]["kg_misses"] == 2  # one generation per signature
    explanations = [v["explanation"] for v in report["violations"]]
    assert len(explanations) == 4
    assert sum(not e["cache_hit"] for e in explanations) == 2


def test_repeat_command_all_cache_hits(workspace):
    main(validate_args(workspace, data_key="four", shapes_key="two_sig_shapes"))
    code = main(validate_args(workspace, data_key="four", shapes_key="two_sig_shapes"))
    assert code == 1
    report = json.loads(workspace["out"].read_text())
    assert report["stats"]["kg_misses"] == 0
    assert report["stats"]["kg_hit_rate"] == 1.0
    assert all(v["explanation"]["cache_hit"] for v in report["violations"])


def test_parse_error_exit_two(workspace, tmp_path, capsys):
    bad = tmp_path / "bad.ttl"
    bad.write_text("definitely not turtle @@@")
    code = main([
        "validate",
        "--data", str(bad),
        "--shapes", str(workspace["shapes"]),
        "--kg", str(workspace["kg"]),
    ])
    assert code == 2
    assert "syntax_error" in capsys.readouterr().err


def test_missing_file_exit_two(workspace, capsys):
    code = main([
        "validate", "--data", "/nonexistent/nowhere.ttl",
        "--shapes", str(workspace["shapes"]),
    ])
    assert code == 2
    assert "cannot read" in capsys.readouterr().err


def test_generation_error_exit_three(workspace, monkeypatch, capsys):
    monkeypatch.delenv("MISSING_KEY_VAR", raising=False)
    code = main(validate_args(
        workspace, generator="http", endpoint="http://127.0.0.1:1/v1",
        api_key_env="MISSING_KEY_VAR",
    ))
    assert code == 3
    report = json.loads(workspace["out"].read_text())
    assert report["generation_error"]
    assert "generation failed" in capsys.readouterr().err


def test_multiple_languages(workspace):
    code = main(validate_args(workspace, language=["en", "de"]))
    assert code == 1
    report = json.loads(workspace["out"].read_text())
    entry = report["violations"][0]
    assert [e["language"] for e in entry["explanations"]] == ["en", "de"]
    assert any("template backend returns English" in w for w in report["warnings"])


def test_no_explain_flag(workspace):
    code = main(validate_args(workspace, no_explain=True))
    assert code == 1
    report = json.loads(workspace["out"].read_text())
    assert report["violations"][0]["explanation"] is None


def test_benchmark_csv(workspace, tmp_path):
    csv_path = tmp_path / "bench.csv"
    code = main([
        "benchmark",
        "--data", str(workspace["four"]),
        "--shapes", str(workspace["two_sig_shapes"]),
        "--kg", str(workspace["kg"]),
        "--runs", "3",
        "--inject-latency-ms", "20",
        "--output", str(csv_path),
    ])
    assert code == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == BENCHMARK_CSV_HEADER
    assert len(lines) == 4
    first = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert first["backend_calls"] == "2"
    assert float(first["explain_ms"]) >= 40.0
    later = dict(zip(lines[0].split(","), lines[3].split(",")))
    assert later["backend_calls"] == "0"


def test_benchmark_no_explain_baseline(workspace, capsys):
    code = main([
        "benchmark",
        "--data", str(workspace["violating"]),
        "--shapes", str(workspace["shapes"]),
        "--kg", str(workspace["kg"]),
        "--runs", "2",
        "--no-explain",
        "--output", "-",
    ])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    for line in lines[1:]:
        assert line.split(",")[3] == "0.0"


def test_usage_error_missing_required(workspace):
    with pytest.raises(SystemExit) as err:
        main(["validate", "--data", str(workspace["violating"])])
    assert err.value.code == 2


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def test_cli_against_running_server(workspace, tmp_path):
    import uvicorn

    from shacl_explain.service.app import create_app

    port = _free_port()
    config = uvicorn.Config(
        create_app(default_kg_path=str(tmp_path / "server_kg.ttl")),
        host="127.0.0.1", port=port, log_level="error",
    )
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{port}"
    for _ in range(100):
        try:
            if httpx.get(base + "/health", timeout=1).status_code == 200:
                break
        except httpx.HTTPError:
            time.sleep(0.05)
    else:
        pytest.fail("server did not start")
    try:
        code = main(validate_args(workspace, server=base))
        assert code == 1
        report = json.loads(workspace["out"].read_text())
        assert report["conforms"] is False
    finally:
        server.should_exit = True
        thread.join(timeout=5)
