"""HTTP API for the dashboard: submit analyses, poll status, fetch the
report and per-slice view graphs.

Jobs run on a small FIFO worker pool (analysis is CPU-bound; two workers
cover the single-user case). The store is in memory: restarting the
service forgets finished jobs.
"""

from __future__ import annotations

import json
import queue
import threading
import urllib.parse
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional

from .datasets import default_identifiers, default_libraries
from .errors import SliceToolError
from .pipeline import Analysis, analyze_source
from .report import export_slice_json, report_json
from .slicer import SliceOptions

MAX_BODY_BYTES = 1 << 20
WORKER_COUNT = 2


class BindError(SliceToolError):
    pass


@dataclass
class Job:
    id: str
    status: str = "pending"  # pending -> running -> done | error
    program_name: str = ""
    text: str = ""
    options: SliceOptions = field(default_factory=SliceOptions)
    analysis: Optional[Analysis] = None
    error_message: Optional[str] = None


def parse_options(raw: Optional[dict]) -> SliceOptions:
    """Options from a request body; raises ValueError on anything off."""
    raw = raw or {}
    if not isinstance(raw, dict):
        raise ValueError("options must be an object")
    allowed = {"include_control", "max_nodes", "time_budget_secs", "risk_filter"}
    unknown = set(raw) - allowed
    if unknown:
        raise ValueError(f"unknown options: {sorted(unknown)}")
    include_control = raw.get("include_control", True)
    if not isinstance(include_control, bool):
        raise ValueError("include_control must be a boolean")
    max_nodes = raw.get("max_nodes")
    if max_nodes is not None and (not isinstance(max_nodes, int)
                                  or isinstance(max_nodes, bool) or max_nodes < 1):
        raise ValueError("max_nodes must be a positive integer")
    budget = raw.get("time_budget_secs")
    if budget is not None and (not isinstance(budget, (int, float))
                               or isinstance(budget, bool) or budget < 0):
        raise ValueError("time_budget_secs must be a non-negative number")
    risk_filter = raw.get("risk_filter")
    if risk_filter is not None:
        if (not isinstance(risk_filter, list) or not risk_filter
                or not all(isinstance(t, int) and not isinstance(t, bool)
                           for t in risk_filter)):
            raise ValueError("risk_filter must be a non-empty list of integers")
        risk_filter = frozenset(risk_filter)
    return SliceOptions(include_control=include_control, max_nodes=max_nodes,
                        time_budget=budget, risk_filter=risk_filter)


class JobStore:
    def __init__(self):
        self._lock = threading.Lock()
        self._jobs: dict[str, Job] = {}
        self._counter = 0

    def create(self, program_name: str, text: str, options: SliceOptions) -> Job:
        with self._lock:
            self._counter += 1
            job = Job(id=f"a{self._counter}", program_name=program_name,
                      text=text, options=options)
            self._jobs[job.id] = job
            return job

    def get(self, job_id: str) -> Optional[Job]:
        with self._lock:
            return self._jobs.get(job_id)

    def transition(self, job: Job, status: str, analysis=None, error=None):
        with self._lock:
            job.status = status
            job.analysis = analysis
            job.error_message = error


class ApiServer:
    """Owns the HTTP listener, the job store, and the worker pool."""

    def __init__(self, port: int = 0, corpus_dir: Optional[Path] = None,
                 identifiers=None, libraries=None):
        self.corpus_dir = corpus_dir
        self.identifiers = identifiers if identifiers is not None else default_identifiers()
        self.libraries = libraries if libraries is not None else default_libraries()
        self.store = JobStore()
        self.queue: "queue.Queue[str]" = queue.Queue()
        self._workers: list[threading.Thread] = []
        self._shutdown = threading.Event()
        handler = _make_handler(self)
        try:
            self.httpd = ThreadingHTTPServer(("127.0.0.1", port), handler)
        except OSError as exc:
            raise BindError(f"cannot bind port {port}: {exc}") from exc
        self.port = self.httpd.server_address[1]

    # -- job execution ----------------------------------------------------

    def submit(self, program_name: str, text: str, options: SliceOptions) -> Job:
        job = self.store.create(program_name, text, options)
        self.queue.put(job.id)
        return job

    def _worker_loop(self):
        while not self._shutdown.is_set():
            try:
                job_id = self.queue.get(timeout=0.1)
            except queue.Empty:
                continue
            job = self.store.get(job_id)
            if job is None:
                continue
            self.store.transition(job, "running")
            try:
                analysis = analyze_source(job.text, job.program_name, job.options,
                                          self.identifiers, self.libraries)
                self.store.transition(job, "done", analysis=analysis)
            except Exception as exc:
                self.store.transition(job, "error", error=str(exc))

    # -- lifecycle ----------------------------------------------------------

    def start(self):
        for _ in range(WORKER_COUNT):
            worker = threading.Thread(target=self._worker_loop, daemon=True)
            worker.start()
            self._workers.append(worker)
        self._server_thread = threading.Thread(target=self.httpd.serve_forever,
                                               daemon=True)
        self._server_thread.start()

    def stop(self):
        self._shutdown.set()
        self.httpd.shutdown()
        self.httpd.server_close()

    def serve_forever(self):
        for _ in range(WORKER_COUNT):
            worker = threading.Thread(target=self._worker_loop, daemon=True)
            worker.start()
            self._workers.append(worker)
        self.httpd.serve_forever()

    # -- corpus -------------------------------------------------------------

    def corpus_programs(self) -> list[str]:
        if self.corpus_dir is None or not self.corpus_dir.is_dir():
            return []
        return sorted(p.name for p in self.corpus_dir.glob("*.slir"))

    def corpus_text(self, name: str) -> Optional[str]:
        if self.corpus_dir is None or "/" in name or "\\" in name or ".." in name:
            return None
        path = self.corpus_dir / name
        if not path.is_file():
            return None
        return path.read_text("utf-8")


def _make_handler(api: ApiServer):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # keep test output quiet
            pass

        def _respond(self, status: int, body: str,
                     content_type: str = "application/json"):
            payload = body.encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(payload)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.end_headers()
            self.wfile.write(payload)

        def _json(self, status: int, document: dict):
            self._respond(status, json.dumps(document, sort_keys=True) + "\n")

        def do_OPTIONS(self):
            self._respond(204, "")

        def do_GET(self):
            parsed = urllib.parse.urlparse(self.path)
            parts = [p for p in parsed.path.split("/") if p]
            query = urllib.parse.parse_qs(parsed.query)
            if parts == ["api", "health"]:
                self._json(200, {"status": "ok"})
            elif parts == ["api", "programs"]:
                self._json(200, {"programs": api.corpus_programs()})
            elif parts == ["api", "datasets"]:
                self._json(200, _datasets_document(api))
            elif len(parts) == 3 and parts[:2] == ["api", "analyses"]:
                self._get_report(parts[2])
            elif len(parts) == 5 and parts[:2] == ["api", "analyses"] and parts[3] == "slices":
                self._get_slice(parts[2], parts[4], query)
            else:
                self._json(404, {"error": "not found"})

        def _get_report(self, job_id: str):
            job = api.store.get(job_id)
            if job is None:
                self._json(404, {"error": f"unknown analysis {job_id}"})
            elif job.status == "error":
                self._json(200, {"status": "error", "error_message": job.error_message})
            elif job.status != "done":
                self._json(200, {"status": job.status})
            else:
                self._respond(200, report_json(job.analysis.report))

        def _get_slice(self, job_id: str, slice_id: str, query):
            job = api.store.get(job_id)
            if job is None:
                self._json(404, {"error": f"unknown analysis {job_id}"})
                return
            if job.status == "error":
                self._json(409, {"error": "analysis failed",
                                 "error_message": job.error_message})
                return
            if job.status != "done":
                self._json(409, {"error": "analysis not finished",
                                 "status": job.status})
                return
            view_name = query.get("view", ["jimple"])[0]
            if view_name not in ("jimple", "java"):
                self._json(400, {"error": f"unknown view {view_name!r}"})
                return
            try:
                result = job.analysis.result_by_id(int(slice_id))
            except ValueError:
                result = None
            if result is None:
                self._json(404, {"error": f"unknown slice {slice_id}"})
                return
            view = result.jimple if view_name == "jimple" else result.java
            self._respond(200, export_slice_json(view))

        def do_POST(self):
            parsed = urllib.parse.urlparse(self.path)
            parts = [p for p in parsed.path.split("/") if p]
            if parts != ["api", "analyses"]:
                self._json(404, {"error": "not found"})
                return
            length = int(self.headers.get("Content-Length", "0"))
            if length > MAX_BODY_BYTES:
                self._json(413, {"error": "request body too large"})
                return
            try:
                body = json.loads(self.rfile.read(length) or b"{}")
            except json.JSONDecodeError:
                self._json(400, {"error": "request body is not valid JSON"})
                return
            if not isinstance(body, dict):
                self._json(400, {"error": "request body must be an object"})
                return
            try:
                options = parse_options(body.get("options"))
            except ValueError as exc:
                self._json(400, {"error": str(exc)})
                return
            if "corpus" in body:
                name = body["corpus"]
                text = api.corpus_text(name) if isinstance(name, str) else None
                if text is None:
                    self._json(404, {"error": f"unknown corpus program {name!r}"})
                    return
                program_name = name
            elif "program" in body:
                if not isinstance(body["program"], str) or not body["program"].strip():
                    self._json(400, {"error": "program must be non-empty SLIR text"})
                    return
                text = body["program"]
                program_name = body.get("name", "uploaded.slir")
            else:
                self._json(400, {"error": "body needs `program` text or a `corpus` name"})
                return
            job = api.submit(program_name, text, options)
            self._json(202, {"id": job.id, "status": job.status})

    return Handler


def _datasets_document(api: ApiServer) -> dict:
    identifiers = [{
        "signature": e.signature.render() if e.class_prefix is None
        else f"<{e.class_prefix}.*: {e.signature.return_type} "
             f"{e.signature.method_name}({','.join(e.signature.param_types)})>",
        "category": e.data_category,
        "risk": e.risk,
    } for e in api.identifiers]
    libraries = [{
        "prefix": e.package_prefix,
        "category": e.category,
        **({"strength": e.pseudo_strength} if e.pseudo_strength else {}),
    } for e in api.libraries.entries]
    return {
        "identifiers": identifiers,
        "libraries": libraries,
        "category_map": api.libraries.category_map,
    }


def serve(port: int, corpus_dir: Path):
    """Blocking entry point used by the CLI."""
    server = ApiServer(port=port, corpus_dir=corpus_dir)
    print(f"slicetool API listening on http://127.0.0.1:{server.port}/api/health")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.stop()
