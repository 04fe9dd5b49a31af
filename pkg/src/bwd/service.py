"""HTTP API for the interactive elicitation loop.

Sessions live as JSON files in a data directory; every mutation bumps a
revision counter and mutations carrying a stale revision are rejected with a
409 so two browser tabs cannot silently overwrite each other. Workflow-order
violations (asking for results before solving, judging before a reference set
exists) return 422. The built web UI, when present, is hosted at ``/``.
"""

from __future__ import annotations

import threading
import time
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .consistency import ThresholdTable, build_report, revision_ranges
from .model import ValidationError
from .session import Session, WorkflowError, ingest_matrix
from . import cli as _workflow


class SessionStore:
    """File-backed store serializing mutations per session id."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()
        self._counter = 0

    def _lock(self, sid: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(sid, threading.Lock())

    def path(self, sid: str) -> Path:
        if not sid.replace("-", "").isalnum():
            raise KeyError(sid)
        return self.directory / f"{sid}.json"

    def create(self) -> tuple[str, Session]:
        with self._guard:
            self._counter += 1
            sid = f"s{int(time.time())}-{self._counter}"
        session = Session()
        session.save(self.path(sid))
        return sid, session

    def load(self, sid: str) -> Session:
        p = self.path(sid)
        if not p.exists():
            raise KeyError(sid)
        return Session.load(p)

    def mutate(self, sid: str, fn) -> Any:
        """Run fn(session) under the session lock and persist the result."""
        with self._lock(sid):
            session = self.load(sid)
            out = fn(session)
            session.save(self.path(sid))
            return out


def _require_revision(session: Session, body: dict) -> None:
    given = body.get("revision")
    if given is not None and int(given) != session.revision:
        raise HTTPException(
            status_code=409,
            detail=f"stale revision {given}, current is {session.revision}",
        )


def create_app(
    data_dir: str | Path,
    ui_dir: str | Path | None = None,
    solve_budget: float = 30.0,
) -> FastAPI:
    app = FastAPI(title="bwd elicitation service")
    store = SessionStore(data_dir)
    pending: dict[str, threading.Thread] = {}

    @app.exception_handler(WorkflowError)
    async def workflow_handler(request: Request, exc: WorkflowError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(ValidationError)
    async def validation_handler(request: Request, exc: ValidationError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(KeyError)
    async def missing_handler(request: Request, exc: KeyError):
        return JSONResponse(status_code=404, content={"detail": "unknown session"})

    # -- sessions -----------------------------------------------------------

    @app.post("/sessions", status_code=201)
    async def create_session(body: dict):
        sid, session = store.create()

        def setup(session: Session) -> dict:
            if "matrix_csv" in body:
                import tempfile

                with tempfile.NamedTemporaryFile(
                    "w", suffix=".csv", delete=False
                ) as fh:
                    fh.write(body["matrix_csv"])
                    tmp = fh.name
                try:
                    matrix = ingest_matrix(tmp)
                finally:
                    Path(tmp).unlink(missing_ok=True)
                session.set_matrix(matrix)
            elif "matrix" in body:
                block = body["matrix"]
                import numpy as np

                from .model import Criterion, PerformanceMatrix

                criteria = tuple(
                    Criterion(
                        c["name"],
                        c["lower"],
                        c["upper"],
                        c.get("direction", "benefit"),
                    )
                    for c in block["criteria"]
                )
                session.set_matrix(
                    PerformanceMatrix(
                        tuple(block["ids"]),
                        np.array(block["levels"], dtype=float),
                        criteria,
                    )
                )
            else:
                raise ValidationError("body needs 'matrix' or 'matrix_csv'")
            session.set_segments(body.get("segments", 2))
            if "thresholds" in body:
                session.set_thresholds(
                    ThresholdTable(
                        {(row[0], row[1]): row[2] for row in body["thresholds"]}
                    )
                )
            revision = session.bump()
            return {"id": sid, "revision": revision}

        return store.mutate(sid, setup)

    @app.get("/sessions/{sid}")
    async def get_session(sid: str):
        return store.load(sid).doc

    # -- reference set ------------------------------------------------------

    @app.post("/sessions/{sid}/refset")
    async def run_refset(sid: str, body: dict | None = None):
        body = body or {}

        def run(session: Session) -> dict:
            _require_revision(session, body)
            from .model import build_grid
            from .refset import (
                InfeasibleSelection,
                augment_selection,
                coverage_array,
                dominance_pairs,
                select_reference_set,
            )

            matrix = session.matrix()
            if "segments" in body:
                session.set_segments(body["segments"])
            grid = build_grid(matrix, session.segments())
            cov = coverage_array(matrix, grid)
            dom = dominance_pairs(matrix)
            forbidden = [matrix.index_of(a) for a in body.get("forbid", [])]
            result = select_reference_set(
                cov, dom, body.get("coverage", 1), forbidden
            )
            if isinstance(result, InfeasibleSelection):
                return {
                    "feasible": False,
                    "report": {
                        "message": result.message,
                        "pigeonhole_cells": list(result.pigeonhole_cells),
                        "conflict_cells": list(result.conflict_cells),
                    },
                    "revision": session.revision,
                }
            if body.get("add"):
                result = augment_selection(
                    matrix, result, [matrix.index_of(a) for a in body["add"]]
                )
            ids = [matrix.ids[i] for i in result.indices]
            session.set_reference(ids)
            session.doc["refset_options"] = {
                "coverage": body.get("coverage", 1),
                "forbid": body.get("forbid", []),
                "add": body.get("add", []),
            }
            session.cache_drop_stale()
            revision = session.bump()
            return {"feasible": True, "reference": ids, "revision": revision}

        return store.mutate(sid, run)

    # -- comparisons --------------------------------------------------------

    @app.put("/sessions/{sid}/comparisons")
    async def put_comparisons(sid: str, body: dict):
        def run(session: Session) -> dict:
            _require_revision(session, body)
            matrix = session.matrix()
            if "reference" not in session.doc:
                raise WorkflowError("select a reference set before judging")
            for key in ("best", "worst", "bo", "ow"):
                if key not in body:
                    raise ValidationError(f"comparisons body needs {key!r}")
            session.set_comparisons(
                body["best"], body["worst"], body["bo"], body["ow"]
            )
            # Validates scale bounds and membership before accepting.
            session.comparison_set(matrix)
            session.cache_drop_stale()
            revision = session.bump()
            return {"revision": revision}

        return store.mutate(sid, run)

    # -- consistency --------------------------------------------------------

    @app.get("/sessions/{sid}/consistency")
    async def get_consistency(sid: str):
        session = store.load(sid)
        matrix = session.matrix()
        comparisons = session.comparison_set(matrix)
        if not comparisons.is_real_valued:
            raise ValidationError(
                "consistency analysis needs real-valued judgments"
            )
        table = session.thresholds()
        report = build_report(comparisons, table)
        ranges = revision_ranges(comparisons, table)
        ref_ids = session.reference_ids()
        return {
            "revision": session.revision,
            "reference": ref_ids,
            "or": report.or_value,
            "or_by_alt": list(report.or_by_alt),
            "violations": [[float(v) for v in row] for row in report.violations],
            "cr": report.cr_value,
            "cr_by_alt": list(report.cr_by_alt),
            "threshold": report.threshold,
            "or_verdict": report.or_verdict,
            "cr_verdict": report.cr_verdict,
            "threshold_known": ranges.threshold_known,
            "revision_ranges": [
                {
                    "vector": e.vector,
                    "id": matrix.ids[e.index],
                    "current": e.current,
                    "interval": list(e.interval) if e.interval else None,
                }
                for e in ranges.ranges
            ],
        }

    # -- solving and results --------------------------------------------

    def _compute_results(sid: str) -> None:
        def run(session: Session) -> None:
            _workflow._get_solve(session)
            _workflow._run_robust(session, skip_necessary=False)

        store.mutate(sid, run)

    @app.post("/sessions/{sid}/solve")
    async def solve(sid: str, body: dict | None = None):
        body = body or {}

        def check(session: Session) -> dict:
            _require_revision(session, body)
            session.cache_drop_stale()
            # Raises WorkflowError when judgments are missing.
            session.comparison_set(session.matrix())
            data = _workflow._get_solve(session)
            session.bump()
            return {"revision": session.revision, "xi_star": data["xi_star"],
                    "kind": data["kind"]}

        out = store.mutate(sid, check)

        worker = threading.Thread(target=_compute_results, args=(sid,), daemon=True)
        worker.start()
        worker.join(timeout=solve_budget)
        if worker.is_alive():
            pending[sid] = worker
            return JSONResponse(
                status_code=202,
                content={"location": f"/sessions/{sid}/results", **out},
            )
        pending.pop(sid, None)
        return out

    @app.get("/sessions/{sid}/results")
    async def results(sid: str):
        session = store.load(sid)
        inputs = session.inputs_stamp(
            "matrix", "segments", "reference", "comparisons"
        )
        solve_data = session.cache_get("solve", inputs)
        robust_data = session.cache_get("robust", inputs)
        if solve_data is None or robust_data is None:
            worker = pending.get(sid)
            if worker is not None and worker.is_alive():
                return JSONResponse(
                    status_code=202,
                    content={"location": f"/sessions/{sid}/results"},
                )
            raise WorkflowError("no results yet; solve the session first")
        matrix = session.matrix()
        return {
            "revision": session.revision,
            "kind": solve_data["kind"],
            "xi_star": solve_data["xi_star"],
            "model": solve_data["model"],
            "values": solve_data["values"],
            "ranking": solve_data["ranking"],
            "rank_ranges": robust_data["ranges"],
            "U": robust_data["U"],
            "necessary": robust_data.get("necessary", []),
            "hasse": robust_data.get("hasse", []),
            "ids": list(matrix.ids),
        }

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:

        @app.get("/")
        async def index():
            return {"service": "bwd", "ui": "not built"}

    return app
