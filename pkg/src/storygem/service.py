"""Minimal HTTP facade over the pipeline.

Endpoints (JSON in, JSON or SVG out):

    GET  /api/health            readiness probe
    POST /api/layout            {"text": ..., "params": {...}} -> layout JSON
    POST /api/render            same body -> SVG
    GET  /api/render?text=...   query-param variant (format=svg)
    GET  /                      static web UI when a bundle is present

The embedding table and font metrics load once at startup and are shared
read-only; each request owns its pipeline intermediates, so identical bodies
(same seed) produce identical response bodies. Per-stage timings travel in the
X-Storygem-Timings header to keep bodies deterministic. Request texts are
capped at 1 MiB; handler sockets time out after 30 s.
"""

from __future__ import annotations

import json
import os
from dataclasses import replace
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import render as render_mod
from .embeddings import EmbeddingTable, load_vectors
from .pipeline import ConfigError, PipelineError, RunConfig, run_pipeline

MAX_TEXT_BYTES = 1 << 20
REQUEST_TIMEOUT_S = 30

# the parameter subset clients may override per request
REQUEST_PARAMS = {
    "max_words": int,
    "k": int,
    "weighting": str,
    "container": str,
    "optimize_font": bool,
    "rotation_step": float,
    "hyphenate": bool,
    "seed": int,
}

CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
    ".json": "application/json",
    ".map": "application/json",
    ".png": "image/png",
    ".ico": "image/x-icon",
}


class RequestError(Exception):
    def __init__(self, status: int, stage: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.stage = stage
        self.detail = detail


class App:
    """Startup state shared across request handlers (read-only)."""

    def __init__(self, config: RunConfig, ui_dir: str | Path | None = None):
        self.config = config
        self.table: EmbeddingTable | None = None
        ui = ui_dir or os.environ.get("STORYGEM_UI_DIR") or "frontend/dist"
        path = Path(ui)
        self.ui_dir = path.resolve() if path.is_dir() else None

    def load(self) -> None:
        self.table = load_vectors(self.config.embedding_path, None)

    def health_payload(self) -> dict:
        return {
            "status": "ok",
            "embedding_loaded": self.table is not None,
            "dimension": self.table.dimension if self.table else 0,
        }

    def build_config(self, params: dict) -> RunConfig:
        unknown = set(params) - set(REQUEST_PARAMS)
        if unknown:
            raise RequestError(400, "validation", f"unknown params: {sorted(unknown)}")
        clean = {}
        for key, value in params.items():
            want = REQUEST_PARAMS[key]
            if want is bool:
                if not isinstance(value, bool):
                    raise RequestError(400, "validation", f"{key}: expected boolean")
            elif isinstance(value, bool) or not isinstance(value, (int, float, str)):
                raise RequestError(400, "validation", f"{key}: bad type")
            try:
                clean[key] = want(value)
            except (TypeError, ValueError):
                raise RequestError(400, "validation", f"{key}: expected {want.__name__}") from None
        if clean.get("container") not in (None, "circle", "square"):
            raise RequestError(400, "validation", "container: must be circle or square")
        try:
            return replace(self.config, **clean).validated(
                need_input=False, need_output=False
            )
        except ConfigError as exc:
            raise RequestError(400, "validation", str(exc)) from exc

    def layout(self, body: dict):
        if not isinstance(body, dict):
            raise RequestError(400, "validation", "request body must be a JSON object")
        text = body.get("text", "")
        if not isinstance(text, str) or not text.strip():
            raise RequestError(400, "validation", "text: required and non-empty")
        if len(text.encode("utf-8")) > MAX_TEXT_BYTES:
            raise RequestError(400, "validation", "text: larger than 1 MiB")
        params = body.get("params") or {}
        if not isinstance(params, dict):
            raise RequestError(400, "validation", "params: must be an object")
        config = self.build_config(params)
        try:
            return run_pipeline(text, config, table=self.table)
        except PipelineError as exc:
            raise RequestError(422, exc.stage, str(exc.cause)) from exc


class Handler(BaseHTTPRequestHandler):
    timeout = REQUEST_TIMEOUT_S
    protocol_version = "HTTP/1.1"
    app: App  # set by make_server

    # --- plumbing -----------------------------------------------------------

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _cors(self):
        self.send_header("Access-Control-Allow-Origin", "*")

    def _send(self, status: int, content_type: str, body: bytes, extra=None):
        self.send_response(status)
        self._cors()
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        for key, value in (extra or {}).items():
            self.send_header(key, value)
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload: dict, extra=None):
        self._send(status, "application/json",
                   json.dumps(payload, ensure_ascii=False).encode("utf-8"), extra)

    def _send_error_json(self, exc: RequestError):
        self._send_json(exc.status,
                        {"error": "request failed", "stage": exc.stage,
                         "detail": exc.detail})

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length > MAX_TEXT_BYTES + 65536:
            # drain what the client is sending so the 400 can be delivered
            remaining = min(length, 64 << 20)
            while remaining > 0:
                chunk = self.rfile.read(min(remaining, 1 << 16))
                if not chunk:
                    break
                remaining -= len(chunk)
            raise RequestError(400, "validation", "text: larger than 1 MiB")
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise RequestError(400, "validation", "empty request body")
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise RequestError(400, "validation", f"invalid JSON: {exc}") from exc

    # --- routes -------------------------------------------------------------

    def do_OPTIONS(self):
        self.send_response(204)
        self._cors()
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        parsed = urlparse(self.path)
        try:
            if parsed.path == "/api/health":
                self._send_json(200, self.app.health_payload())
            elif parsed.path == "/api/render":
                query = parse_qs(parsed.query)
                body = self._body_from_query(query)
                self._render(body, query.get("format", ["svg"])[0])
            else:
                self._static(parsed.path)
        except RequestError as exc:
            self._send_error_json(exc)

    def do_POST(self):
        parsed = urlparse(self.path)
        try:
            if parsed.path == "/api/layout":
                result = self.app.layout(self._read_body())
                self._send(200, "application/json",
                           (result.doc.to_json() + "\n").encode("utf-8"),
                           {"X-Storygem-Timings": json.dumps(result.timings)})
            elif parsed.path == "/api/render":
                query = parse_qs(parsed.query)
                self._render(self._read_body(), query.get("format", ["svg"])[0])
            else:
                raise RequestError(404, "routing", f"no such endpoint: {parsed.path}")
        except RequestError as exc:
            self._send_error_json(exc)

    def _body_from_query(self, query: dict) -> dict:
        if "text" not in query:
            raise RequestError(400, "validation", "text: required")
        params = {}
        for key, caster in REQUEST_PARAMS.items():
            if key in query:
                raw = query[key][0]
                if caster is bool:
                    params[key] = raw.lower() in ("1", "true", "yes", "on")
                else:
                    try:
                        params[key] = caster(raw)
                    except ValueError:
                        raise RequestError(400, "validation",
                                           f"{key}: expected {caster.__name__}") from None
        return {"text": query["text"][0], "params": params}

    def _render(self, body: dict, fmt: str):
        if fmt not in ("svg",):
            raise RequestError(400, "validation", f"format: unsupported {fmt!r}")
        result = self.app.layout(body)
        svg = render_mod.to_svg(result.doc)
        self._send(200, "image/svg+xml", svg,
                   {"X-Storygem-Timings": json.dumps(result.timings)})

    def _static(self, path: str):
        root = self.app.ui_dir
        if root is None:
            raise RequestError(404, "routing",
                               "no UI bundle available (build frontend/ first)")
        rel = path.lstrip("/") or "index.html"
        target = (root / rel).resolve()
        if root not in target.parents and target != root:
            raise RequestError(404, "routing", "not found")
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            raise RequestError(404, "routing", f"not found: {path}")
        ctype = CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self._send(200, ctype, target.read_bytes())


def make_server(config: RunConfig, host: str = "127.0.0.1", port: int = 8080,
                ui_dir: str | Path | None = None) -> ThreadingHTTPServer:
    """Build the server with the embedding table preloaded. port=0 picks an
    ephemeral port (the tests use this)."""
    app = App(config, ui_dir=ui_dir)
    app.load()
    handler = type("BoundHandler", (Handler,), {"app": app})
    return ThreadingHTTPServer((host, port), handler)


def serve(config: RunConfig, host: str = "127.0.0.1", port: int = 8080) -> int:
    server = make_server(config, host, port)
    app: App = server.RequestHandlerClass.app
    ui = app.ui_dir or "none"
    print(f"storygem service on http://{host}:{server.server_address[1]} "
          f"(vectors: {config.embedding_path}, ui: {ui})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0
