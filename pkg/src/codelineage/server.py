"""Read-only HTTP service over exported genealogy views plus static UI assets."""

from __future__ import annotations

import json
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional
from urllib.parse import parse_qs, urlparse

from .corpus import LABEL_SLOTS
from .errors import UnknownSpecimen
from .genealogy import Genealogy, lineage_of, lineage_view_to_json, load_genealogy_json

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "application/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json; charset=utf-8",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
}

_SAFE_ID = re.compile(r"^[A-Za-z0-9_.-]+$")


class ViewServer:
    """Serves the exported JSON verbatim; lineage is computed on demand."""

    def __init__(self, export_dir: str | Path, ui_dir: Optional[str | Path] = None):
        self.export_dir = Path(export_dir)
        self.ui_dir = Path(ui_dir) if ui_dir else None
        self.genealogy: Genealogy = load_genealogy_json(self.export_dir / "genealogy.json")

    def api_response(self, path: str, query: dict) -> tuple[int, bytes]:
        if path == "/api/genealogy":
            return 200, (self.export_dir / "genealogy.json").read_bytes()
        if path == "/api/metrics":
            metrics = self.export_dir / "metrics_yearly.json"
            if not metrics.is_file():
                return 404, b'{"error": "no metrics export"}'
            return 200, metrics.read_bytes()
        m = re.match(r"^/api/category/([A-Za-z]+)$", path)
        if m:
            slot = m.group(1)
            if slot not in LABEL_SLOTS:
                return 404, b'{"error": "unknown label slot"}'
            f = self.export_dir / f"category_{slot}.json"
            if not f.is_file():
                return 404, b'{"error": "category view not exported"}'
            return 200, f.read_bytes()
        m = re.match(r"^/api/lineage/([^/]+)$", path)
        if m:
            specimen_id = m.group(1)
            if not _SAFE_ID.match(specimen_id):
                return 400, b'{"error": "bad specimen id"}'
            raw_depth = query.get("depth", ["10"])[0]
            try:
                depth = int(raw_depth)
                if depth < 1:
                    raise ValueError
            except ValueError:
                return 400, b'{"error": "malformed depth"}'
            try:
                view = lineage_of(self.genealogy, specimen_id, depth)
            except UnknownSpecimen:
                return 404, b'{"error": "unknown specimen"}'
            body = json.dumps(lineage_view_to_json(view), sort_keys=True).encode()
            return 200, body
        return 404, b'{"error": "not found"}'

    def static_response(self, path: str) -> Optional[tuple[int, str, bytes]]:
        if self.ui_dir is None:
            return None
        rel = path.lstrip("/") or "index.html"
        target = (self.ui_dir / rel).resolve()
        try:
            target.relative_to(self.ui_dir.resolve())
        except ValueError:
            return None
        if not target.is_file():
            return None
        ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        return 200, ctype, target.read_bytes()


def make_handler(server: ViewServer):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):  # quiet by default
            pass

        def do_GET(self):
            parsed = urlparse(self.path)
            if parsed.path.startswith("/api/"):
                status, body = server.api_response(parsed.path, parse_qs(parsed.query))
                self._send(status, "application/json; charset=utf-8", body)
                return
            static = server.static_response(parsed.path)
            if static is not None:
                self._send(*static)
                return
            self._send(404, "application/json; charset=utf-8", b'{"error": "not found"}')

        def _send(self, status: int, ctype: str, body: bytes):
            self.send_response(status)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

    return Handler


def serve(
    export_dir: str | Path,
    port: int = 8080,
    ui_dir: Optional[str | Path] = None,
    block: bool = True,
) -> ThreadingHTTPServer:
    """Start the HTTP service; with block=False returns the running server."""
    view_server = ViewServer(export_dir, ui_dir)
    httpd = ThreadingHTTPServer(("127.0.0.1", port), make_handler(view_server))
    if block:
        httpd.serve_forever()
    else:
        thread = threading.Thread(target=httpd.serve_forever, daemon=True)
        thread.start()
    return httpd
