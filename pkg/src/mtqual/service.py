"""HTTP annotation service: serves rating tasks to judges, collects ratings.

Endpoints (JSON unless noted):

* ``GET /api/tasks/next?judge=J``  next task J has not finished, else 204
* ``POST /api/ratings``            one rating; 201 on accept, 400 with a
                                   field-level message on bad input, 404
                                   for an unknown task
* ``GET /api/progress``            per-judge completion fractions
* ``GET /api/export``              ratings CSV (the same schema the
                                   correlation tooling reads)

System identities are hidden behind blind labels ("A", "B", ...) that are
a deterministic pseudo-random permutation per task, derived from a salt
persisted in the data directory, so repeated fetches of a task show
identical labels and the server can unblind submissions later.

Ratings persist to an append-only newline-delimited JSON log.  Every
accepted write is flushed and fsynced before the 201 goes out, and a
partial trailing line (a crash mid-write) is ignored on replay, so acked
ratings survive crashes.  Resubmitting the same (judge, segment, system,
parameter) appends a new record; export compacts to the latest one.  One
serve process owns the log; exports only read.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import secrets
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Mapping
from urllib.parse import parse_qs, urlparse

from .corpus import EvaluationSet
from .errors import IngestionError
from .human import (
    PARAMETER_LABELS,
    SCALE_LABELS,
    HumanRating,
    write_ratings_csv,
)

DATA_DIR_ENV = "MTQUAL_DATA_DIR"
DEFAULT_DATA_DIR = "mtqual_data"

PARAMETER_COUNT = 10


def resolve_data_dir(data_dir: str | Path | None = None) -> Path:
    """Explicit argument, else the MTQUAL_DATA_DIR variable, else ./mtqual_data."""
    if data_dir is not None:
        return Path(data_dir)
    return Path(os.environ.get(DATA_DIR_ENV, DEFAULT_DATA_DIR))


class RatingsStore:
    """Append-only NDJSON rating log with upsert-on-read compaction."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def append(self, record: Mapping) -> None:
        line = (json.dumps(record, sort_keys=True) + "\n").encode("utf-8")
        with self._lock:
            with open(self.path, "a+b") as handle:
                size = handle.seek(0, os.SEEK_END)
                if size:
                    handle.seek(size - 1)
                    if handle.read(1) != b"\n":
                        # A torn tail from a crash mid-write was never
                        # acknowledged; drop it so this record starts a
                        # fresh line instead of gluing onto the fragment.
                        handle.seek(0)
                        head = handle.read(size)
                        handle.truncate(head.rfind(b"\n") + 1)
                handle.write(line)
                handle.flush()
                os.fsync(handle.fileno())

    def records(self) -> list[dict]:
        """Replay the log; a partial final line (crash mid-write) is dropped."""
        if not self.path.exists():
            return []
        text = self.path.read_text(encoding="utf-8")
        out: list[dict] = []
        lines = text.split("\n")
        for lineno, line in enumerate(lines):
            if not line:
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError:
                if lineno == len(lines) - 1:
                    continue  # torn trailing write
                raise IngestionError(
                    f"{self.path}: corrupt record on line {lineno + 1}"
                ) from None
        return out

    def compacted(self) -> list[dict]:
        """Latest record per (judge, document, segment, system, parameter)."""
        latest: dict[tuple, dict] = {}
        for record in self.records():
            key = (
                record["judge_id"],
                record["document"],
                record["segment_index"],
                record["system_id"],
                record["parameter"],
            )
            latest[key] = record
        return [latest[key] for key in sorted(latest, key=repr)]

    def to_ratings(self) -> list[HumanRating]:
        return [
            HumanRating(
                judge_id=r["judge_id"],
                system_id=r["system_id"],
                document=r["document"],
                segment_index=r["segment_index"],
                parameter=r["parameter"],
                rating=r["rating"],
            )
            for r in self.compacted()
        ]


@dataclass(frozen=True)
class ValidationFailure(Exception):
    """Rejected submission: which field and why."""

    field: str
    message: str
    status: int = 400


class AnnotationService:
    """Task scheduling, blind labels, validation, and persistence."""

    def __init__(self, eval_set: EvaluationSet, data_dir: str | Path | None = None):
        self.eval_set = eval_set
        self.data_dir = resolve_data_dir(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.store = RatingsStore(self.data_dir / "ratings.ndjson")
        self._salt = self._load_salt()
        # One task per segment, documents in manifest order.
        self.tasks: list[tuple[str, int]] = [
            (doc, index)
            for doc in eval_set.documents
            for index in range(eval_set.segment_count(doc))
        ]

    def _load_salt(self) -> str:
        salt_path = self.data_dir / "blind_salt.txt"
        if salt_path.exists():
            return salt_path.read_text(encoding="utf-8").strip()
        salt = secrets.token_hex(16)
        salt_path.write_text(salt + "\n", encoding="utf-8")
        return salt

    @staticmethod
    def task_id(document: str, index: int) -> str:
        return f"{document}:{index}"

    def _parse_task_id(self, task_id: str) -> tuple[str, int]:
        doc, _, raw_index = task_id.rpartition(":")
        if not doc or not raw_index.isdigit():
            raise ValidationFailure("task_id", f"malformed task id {task_id!r}", 404)
        index = int(raw_index)
        if doc not in self.eval_set.references or index >= self.eval_set.segment_count(doc):
            raise ValidationFailure("task_id", f"unknown task {task_id!r}", 404)
        return doc, index

    def blind_labels(self, task_id: str) -> dict[str, str]:
        """Stable per-task map of blind label -> system id."""
        systems = list(self.eval_set.system_ids)
        seed = hashlib.sha256((self._salt + ":" + task_id).encode("utf-8")).hexdigest()
        random.Random(seed).shuffle(systems)
        return {chr(ord("A") + i): system for i, system in enumerate(systems)}

    def unblind(self, task_id: str, label: str) -> str:
        labels = self.blind_labels(task_id)
        if label not in labels:
            raise ValidationFailure(
                "label", f"unknown blind label {label!r} for task {task_id!r}"
            )
        return labels[label]

    def task_payload(self, document: str, index: int) -> dict:
        task_id = self.task_id(document, index)
        labels = self.blind_labels(task_id)
        sources = self.eval_set.sources.get(document)
        return {
            "task_id": task_id,
            "segment_ref": {"document": document, "index": index},
            "source": sources[index] if sources else None,
            "candidates": {
                label: " ".join(self.eval_set.systems[system][document][index].tokens)
                for label, system in labels.items()
            },
            "parameters": [
                {"parameter": p, "label": PARAMETER_LABELS[p]}
                for p in sorted(PARAMETER_LABELS)
            ],
            "scale": [
                {"rating": r, "label": SCALE_LABELS[r]} for r in sorted(SCALE_LABELS)
            ],
        }

    def _completed_pairs(self) -> dict[tuple[str, str, int], set[tuple[str, int]]]:
        """(judge, doc, segment) -> rated (system, parameter) pairs."""
        done: dict[tuple[str, str, int], set[tuple[str, int]]] = {}
        for record in self.store.records():
            key = (record["judge_id"], record["document"], record["segment_index"])
            done.setdefault(key, set()).add(
                (record["system_id"], record["parameter"])
            )
        return done

    def _is_complete(
        self,
        judge: str,
        document: str,
        index: int,
        done: Mapping[tuple[str, str, int], set],
    ) -> bool:
        pairs = done.get((judge, document, index), set())
        return len(pairs) >= len(self.eval_set.system_ids) * PARAMETER_COUNT

    def next_task(self, judge: str) -> dict | None:
        if not judge:
            raise ValidationFailure("judge", "judge query parameter is required")
        done = self._completed_pairs()
        for document, index in self.tasks:
            if not self._is_complete(judge, document, index, done):
                return self.task_payload(document, index)
        return None

    def progress(self) -> dict:
        done = self._completed_pairs()
        judges = sorted({judge for judge, _, _ in done})
        total = len(self.tasks)
        report = {}
        for judge in judges:
            completed = sum(
                1 for document, index in self.tasks
                if self._is_complete(judge, document, index, done)
            )
            report[judge] = {
                "completed": completed,
                "total": total,
                "fraction": completed / total if total else 0.0,
            }
        return {"total_tasks": total, "judges": report}

    def submit(self, payload) -> dict:
        """Validate one submission and persist it; returns the stored record."""
        if not isinstance(payload, Mapping):
            raise ValidationFailure("body", "expected a JSON object")
        task_id = payload.get("task_id")
        if not isinstance(task_id, str) or not task_id:
            raise ValidationFailure("task_id", "task_id is required")
        document, index = self._parse_task_id(task_id)
        judge = payload.get("judge_id")
        if not isinstance(judge, str) or not judge.strip():
            raise ValidationFailure("judge_id", "judge_id must be a non-empty string")
        label = payload.get("label")
        if not isinstance(label, str):
            raise ValidationFailure("label", "label (blind system letter) is required")
        system = self.unblind(task_id, label)
        parameter = payload.get("parameter")
        if not isinstance(parameter, int) or isinstance(parameter, bool) or parameter not in PARAMETER_LABELS:
            raise ValidationFailure("parameter", "parameter must be an integer in 1..10")
        rating = payload.get("rating")
        if not isinstance(rating, int) or isinstance(rating, bool) or rating not in SCALE_LABELS:
            raise ValidationFailure("rating", "rating must be an integer in 1..5")
        record = {
            "judge_id": judge.strip(),
            "system_id": system,
            "document": document,
            "segment_index": index,
            "parameter": parameter,
            "rating": rating,
        }
        self.store.append(record)
        return record

    def export_csv(self) -> str:
        return write_ratings_csv(self.store.to_ratings())


_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json; charset=utf-8",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
}


class _Handler(BaseHTTPRequestHandler):
    service: AnnotationService
    static_dir: Path | None = None
    quiet: bool = True

    def log_message(self, format, *args):  # noqa: A002 - stdlib signature
        if not self.quiet:
            super().log_message(format, *args)

    def _send_json(self, status: int, payload) -> None:
        body = json.dumps(payload, sort_keys=True).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_text(self, status: int, text: str, content_type: str) -> None:
        body = text.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self) -> None:  # noqa: N802 - stdlib naming
        url = urlparse(self.path)
        if url.path == "/api/tasks/next":
            judge = parse_qs(url.query).get("judge", [""])[0]
            try:
                task = self.service.next_task(judge)
            except ValidationFailure as failure:
                self._send_json(
                    failure.status,
                    {"field": failure.field, "message": failure.message},
                )
                return
            if task is None:
                self.send_response(204)
                self.end_headers()
                return
            self._send_json(200, task)
            return
        if url.path == "/api/progress":
            self._send_json(200, self.service.progress())
            return
        if url.path == "/api/export":
            self._send_text(200, self.service.export_csv(), "text/csv; charset=utf-8")
            return
        self._serve_static(url.path)

    def do_POST(self) -> None:  # noqa: N802 - stdlib naming
        url = urlparse(self.path)
        if url.path != "/api/ratings":
            self._send_json(404, {"field": "path", "message": f"no route {url.path}"})
            return
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length)
        try:
            payload = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError):
            self._send_json(400, {"field": "body", "message": "body must be JSON"})
            return
        try:
            record = self.service.submit(payload)
        except ValidationFailure as failure:
            self._send_json(
                failure.status, {"field": failure.field, "message": failure.message}
            )
            return
        self._send_json(201, {"status": "created", "record": record})

    def _serve_static(self, path: str) -> None:
        if self.static_dir is None:
            if path == "/":
                self._send_text(
                    200,
                    "<!-- mtqual annotation API -->\n"
                    "<p>API endpoints: /api/tasks/next, /api/ratings, "
                    "/api/progress, /api/export</p>\n",
                    "text/html; charset=utf-8",
                )
                return
            self._send_json(404, {"field": "path", "message": f"no route {path}"})
            return
        root = self.static_dir.resolve()
        rel = path.lstrip("/") or "index.html"
        target = (root / rel).resolve()
        if root != target and root not in target.parents:
            self._send_json(404, {"field": "path", "message": "not found"})
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_json(404, {"field": "path", "message": f"no route {path}"})
            return
        content_type = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def serve_annotation(
    eval_set: EvaluationSet,
    data_dir: str | Path | None = None,
    host: str = "127.0.0.1",
    port: int = 8765,
    static_dir: str | Path | None = None,
    quiet: bool = True,
) -> ThreadingHTTPServer:
    """Build a ready-to-run HTTP server; caller decides when to serve_forever().

    The returned server exposes the underlying :class:`AnnotationService`
    as ``server.service``.  Port 0 picks a free port (handy for tests).
    """
    service = AnnotationService(eval_set, data_dir)
    handler = type(
        "BoundHandler",
        (_Handler,),
        {
            "service": service,
            "static_dir": Path(static_dir) if static_dir else None,
            "quiet": quiet,
        },
    )
    server = ThreadingHTTPServer((host, port), handler)
    server.service = service  # type: ignore[attr-defined]
    return server
