"""Local HTTP API: POST /api/v1/<command> with the CLI's JSON parameters.

Responses use the envelope {"ok": true, "result": ...} or
{"ok": false, "error": {code, message, location}}.  Handlers are the pure
functions from polystair.commands, so CLI and server payloads agree.
GET /api/v1/health answers {"ok": true}.  The server also serves the static
explorer bundle from a directory given at startup (if any).
"""

from __future__ import annotations

import json
import mimetypes
import os
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .commands import dispatch
from .wire import WireError

API_PREFIX = "/api/v1/"


def _error_body(code: str, message: str, location: str = "") -> bytes:
    return json.dumps(
        {"ok": False, "error": {"code": code, "message": message, "location": location}}
    ).encode()


class ApiHandler(BaseHTTPRequestHandler):
    static_root: str | None = None

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: int, body: bytes, content_type="application/json"):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self):
        self._send(204, b"")

    def do_GET(self):
        if self.path == API_PREFIX + "health":
            self._send(200, json.dumps({"ok": True}).encode())
            return
        if self.path.startswith(API_PREFIX):
            self._send(404, _error_body("unknown", f"no such endpoint {self.path}"))
            return
        self._serve_static()

    def do_POST(self):
        if not self.path.startswith(API_PREFIX):
            self._send(404, _error_body("unknown", f"no such endpoint {self.path}"))
            return
        command = self.path[len(API_PREFIX) :]
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b"{}"
        try:
            params = json.loads(raw.decode() or "{}")
            if not isinstance(params, dict):
                raise WireError("request body must be a JSON object", "body")
        except json.JSONDecodeError as exc:
            self._send(400, _error_body("validation", f"malformed JSON: {exc}", "body"))
            return
        try:
            result = dispatch(command, params)
        except KeyError:
            self._send(404, _error_body("unknown", f"no such command {command!r}"))
            return
        except WireError as exc:
            self._send(400, _error_body("validation", str(exc), exc.location))
            return
        except Exception as exc:  # pragma: no cover - defensive
            self._send(500, _error_body("internal", str(exc)))
            return
        body = json.dumps(
            {"ok": True, "result": result}, separators=(",", ":"), sort_keys=True
        ).encode()
        self._send(200, body)

    def _serve_static(self):
        root = self.static_root
        if root is None:
            self._send(404, _error_body("unknown", "no static bundle configured"))
            return
        rel = self.path.lstrip("/") or "index.html"
        target = os.path.normpath(os.path.join(root, rel))
        if not target.startswith(os.path.abspath(root)):
            self._send(403, _error_body("forbidden", "path escapes bundle root"))
            return
        if os.path.isdir(target):
            target = os.path.join(target, "index.html")
        if not os.path.isfile(target):
            self._send(404, _error_body("unknown", f"no such file {rel}"))
            return
        ctype = mimetypes.guess_type(target)[0] or "application/octet-stream"
        with open(target, "rb") as fh:
            self._send(200, fh.read(), content_type=ctype)


def make_server(port: int, static_root: str | None = None) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (ApiHandler,), {"static_root": static_root})
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def run_server(port: int, static_root: str | None = None) -> None:
    if static_root is None:
        bundled = os.path.join(os.path.dirname(__file__), "..", "..", "frontend", "dist")
        if os.path.isdir(bundled):
            static_root = os.path.abspath(bundled)
    srv = make_server(port, static_root)
    print(f"serving on http://127.0.0.1:{port}{API_PREFIX}  (Ctrl-C stops)")
    try:
        srv.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        srv.server_close()
