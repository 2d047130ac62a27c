"""HTTP interface over the engine: catalog, sessions, evaluation, gap,
what-if, and reports.

Stateless over the engine with a JSON-file session repository. Single
assessor, no authentication; binds to loopback by default. Response bodies
reuse the file formats verbatim, and machine-readable bodies are canonical
JSON so CLI output and endpoint bodies are byte-identical.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from starlette.exceptions import HTTPException as StarletteHTTPException

from .catalog import (
    Catalog,
    catalog_to_document,
    chain_to_document,
    load_catalog,
    trace,
)
from .engine import (
    AnswerSet,
    AssessmentProfile,
    apply_whatif,
    assess_maturity,
    gap_analysis,
)
from .errors import (
    MissingThresholdError,
    ParseError,
    RangeError,
    SecAssessError,
    TypeMismatchError,
    UnknownCatalogVersionError,
    UnknownIdError,
    UnknownQuestionError,
    VersionMismatchError,
)
from .reporting import assessment_data, canonical_json, gap_document, render_assessment
from .sessions import (
    CatalogRegistry,
    Session,
    completeness,
    create_session,
    import_answers,
    persist_session,
    restore_session,
    session_to_document,
)

DEFAULT_BIND = "127.0.0.1:8470"

# Exception class -> HTTP status. Codes come from the exceptions themselves.
_STATUS_BY_ERROR = [
    (UnknownQuestionError, 422),
    (UnknownIdError, 404),
    (UnknownCatalogVersionError, 409),
    (VersionMismatchError, 409),
    (TypeMismatchError, 422),
    (MissingThresholdError, 422),
    (RangeError, 422),
    (ParseError, 400),
]


def _http_status(exc: SecAssessError) -> int:
    for cls, status in _STATUS_BY_ERROR:
        if isinstance(exc, cls):
            return status
    return 500


def api_error_body(status: int, code: str, message: str, details=None) -> dict:
    return {"httpStatus": status, "code": code, "message": message, "details": details}


class SessionRepository:
    """One JSON file per session; mutations serialized per session id."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def lock(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.json"

    def save(self, session: Session) -> None:
        self._path(session.id).write_bytes(persist_session(session))

    def load(self, session_id: str) -> Session:
        path = self._path(session_id)
        if not path.exists():
            raise UnknownIdError(f"unknown session id {session_id!r}")
        return restore_session(path.read_bytes())

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))


def create_app(catalog: Catalog, sessions_dir: Path, static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="secassess", version="0.1.0", docs_url=None, redoc_url=None)
    repo = SessionRepository(sessions_dir)
    registry = CatalogRegistry(catalog)
    catalog_bytes = canonical_json(catalog_to_document(catalog))

    def json_response(doc, status: int = 200) -> Response:
        return Response(content=canonical_json(doc), status_code=status, media_type="application/json")

    @app.middleware("http")
    async def catalog_version_header(request: Request, call_next):
        response = await call_next(request)
        response.headers["X-Catalog-Version"] = catalog.version
        return response

    @app.exception_handler(SecAssessError)
    async def secassess_error(request: Request, exc: SecAssessError):
        status = _http_status(exc)
        return json_response(api_error_body(status, exc.api_code, str(exc)), status)

    @app.exception_handler(StarletteHTTPException)
    async def http_error(request: Request, exc: StarletteHTTPException):
        code = "unknown-id" if exc.status_code == 404 else "parse-error"
        return json_response(api_error_body(exc.status_code, code, str(exc.detail)), exc.status_code)

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return json_response(api_error_body(400, "parse-error", "invalid request body",
                                            details=[str(e) for e in exc.errors()]), 400)

    @app.exception_handler(Exception)
    async def unexpected_error(request: Request, exc: Exception):
        return json_response(api_error_body(500, "internal-error", str(exc)), 500)

    def load_session_checked(session_id: str) -> Session:
        session = repo.load(session_id)
        if session.catalog_version != catalog.version:
            raise VersionMismatchError(
                f"session pins catalog {session.catalog_version!r}, service runs {catalog.version!r}")
        return session

    # -- catalog ----------------------------------------------------------

    @app.get("/catalog")
    def get_catalog():
        return Response(content=catalog_bytes, media_type="application/json")

    @app.get("/catalog/trace/{metric_id}")
    def get_trace(metric_id: str):
        return json_response(chain_to_document(trace(catalog, metric_id)))

    # -- sessions ---------------------------------------------------------

    @app.post("/sessions", status_code=201)
    def post_session(body: dict | None = None):
        body = body or {}
        profile = AssessmentProfile.from_document(body.get("profile"))
        session = create_session(registry, catalog.version, profile, body.get("label", ""))
        repo.save(session)
        return json_response(session_to_document(session), 201)

    @app.get("/sessions")
    def list_sessions():
        summaries = []
        for session_id in repo.list_ids():
            session = repo.load(session_id)
            summaries.append({
                "id": session.id,
                "label": session.label,
                "catalogVersion": session.catalog_version,
                "createdAt": session.created_at.isoformat(),
                "updatedAt": session.updated_at.isoformat(),
                "answeredCount": len(session.answers),
            })
        return json_response({"sessions": summaries})

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return json_response(session_to_document(repo.load(session_id)))

    @app.patch("/sessions/{session_id}/answers")
    def patch_answers(session_id: str, body: dict):
        with repo.lock(session_id):
            session = load_session_checked(session_id)
            session = import_answers(catalog, session, body)
            repo.save(session)
        return json_response(session_to_document(session))

    @app.get("/sessions/{session_id}/completeness")
    def get_completeness(session_id: str):
        session = load_session_checked(session_id)
        result = completeness(catalog, session)
        return json_response({
            "perKi": {
                ki_id: {"answered": answered, "total": total}
                for ki_id, (answered, total) in sorted(result.per_ki.items())
            },
            "overall": result.overall,
        })

    @app.get("/sessions/{session_id}/evaluation")
    def get_evaluation(session_id: str):
        session = load_session_checked(session_id)
        assessment = assess_maturity(catalog, session.answers, session.profile)
        return json_response(assessment_data(catalog, assessment))

    @app.get("/sessions/{session_id}/gap")
    def get_gap(session_id: str, target: int | None = None):
        if target is None:
            raise RangeError("query parameter 'target' is required (1..5)")
        session = load_session_checked(session_id)
        report = gap_analysis(catalog, session.answers, session.profile, target)
        return json_response(gap_document(catalog, report))

    @app.post("/sessions/{session_id}/whatif")
    def post_whatif(session_id: str, body: dict):
        session = load_session_checked(session_id)
        overlay = AnswerSet.from_mapping(catalog, body.get("overlay", {}))
        merged = apply_whatif(catalog, session.answers, overlay)
        assessment = assess_maturity(catalog, merged, session.profile)
        return json_response(assessment_data(catalog, assessment))

    @app.get("/sessions/{session_id}/report")
    def get_report(session_id: str, format: str = "json"):
        if format not in ("json", "md", "markdown"):
            raise ParseError(f"unsupported report format {format!r}")
        session = load_session_checked(session_id)
        assessment = assess_maturity(catalog, session.answers, session.profile)
        payload = render_assessment(catalog, assessment, session, format)
        media = "application/json" if format == "json" else "text/markdown; charset=utf-8"
        return Response(content=payload, media_type=media)

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


@dataclass(frozen=True)
class ServiceConfig:
    catalog_path: Path | None = None  # None -> shipped catalog
    sessions_dir: Path = Path("sessions")
    bind: str = DEFAULT_BIND
    static_dir: Path | None = None


def build_app(config: ServiceConfig) -> FastAPI:
    if config.catalog_path is None:
        from .catalog import load_shipped_catalog

        catalog = load_shipped_catalog()
    else:
        catalog = load_catalog(Path(config.catalog_path).read_bytes())
    return create_app(catalog, Path(config.sessions_dir), config.static_dir)


def serve(config: ServiceConfig) -> None:
    """Run the service until interrupted; catalog failures abort startup."""
    import uvicorn

    app = build_app(config)
    host, _, port = config.bind.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
