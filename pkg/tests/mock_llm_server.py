"""Scriptable OpenAI-style chat-completion server for backend tests."""

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer


def completion_body(content: str) -> str:
    return json.dumps({"choices": [{"message": {"content": content}}]})


class MockCompletionServer:
    """Serves scripted (status, body) responses in order, then defaults to 200s."""

    def __init__(self, default_content: str = "default completion"):
        self.script = []
        self.requests = []
        self.default_content = default_content
        self._lock = threading.Lock()
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                length = int(self.headers.get("Content-Length", 0))
                raw = self.rfile.read(length).decode("utf-8")
                with outer._lock:
                    try:
                        outer.requests.append({
                            "path": self.path,
                            "body": json.loads(raw),
                            "auth": self.headers.get("Authorization", ""),
                        })
                    except json.JSONDecodeError:
                        outer.requests.append({"path": self.path, "body": raw})
                    if outer.script:
                        status, body = outer.script.pop(0)
                    else:
                        status, body = 200, completion_body(outer.default_content)
                payload = body.encode("utf-8")
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(payload)))
                self.end_headers()
                self.wfile.write(payload)

            def log_message(self, *args):
                pass

        self._server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)

    @property
    def url(self) -> str:
        host, port = self._server.server_address
        return f"http://{host}:{port}/v1/chat/completions"

    def __enter__(self):
        self._thread.start()
        return self

    def __exit__(self, *exc):
        self._server.shutdown()
        self._server.server_close()
