"""Assessment session lifecycle: answers with evidence notes, audit trail,
completeness tracking, and JSON persistence.

A session pins one catalog version. Mutation helpers return new Session
values; the audit trail is append-only and never pruned.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone

from .catalog import Catalog
from .engine import Answer, AnswerSet, AssessmentProfile, check_answer
from .errors import ParseError, UnknownCatalogVersionError, VersionMismatchError

SESSION_FORMAT_VERSION = 1


def _utcnow() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


@dataclass(frozen=True)
class AuditEntry:
    question_id: str
    value: str | int
    evidence_note: str | None
    previous: dict | None  # superseded answer, if any
    at: datetime


@dataclass(frozen=True)
class Session:
    id: str
    catalog_version: str
    profile: AssessmentProfile
    answers: AnswerSet
    label: str
    created_at: datetime
    updated_at: datetime
    audit: tuple[AuditEntry, ...] = ()


@dataclass(frozen=True)
class Completeness:
    per_ki: dict[str, tuple[int, int]]
    overall: float


class CatalogRegistry:
    """Resolves catalog versions for session creation and restore."""

    def __init__(self, *catalogs: Catalog):
        self._by_version: dict[str, Catalog] = {}
        for catalog in catalogs:
            self.register(catalog)

    def register(self, catalog: Catalog) -> None:
        self._by_version[catalog.version] = catalog

    def get(self, version: str) -> Catalog:
        catalog = self._by_version.get(version)
        if catalog is None:
            raise UnknownCatalogVersionError(f"no catalog registered for version {version!r}")
        return catalog


def create_session(
    registry: CatalogRegistry,
    catalog_version: str,
    profile: AssessmentProfile | None = None,
    label: str = "",
    at: datetime | None = None,
) -> Session:
    """New empty session pinned to a resolvable catalog version."""
    registry.get(catalog_version)
    now = at or _utcnow()
    return Session(
        id=uuid.uuid4().hex,
        catalog_version=catalog_version,
        profile=profile or AssessmentProfile(),
        answers=AnswerSet(),
        label=label,
        created_at=now,
        updated_at=now,
    )


def record_answer(
    catalog: Catalog,
    session: Session,
    question_id: str,
    answer: Answer,
    at: datetime | None = None,
) -> Session:
    """Upsert one answer; the superseded value (if any) goes to the audit trail."""
    check_answer(catalog, question_id, answer)
    now = at or _utcnow()
    now = max(now, session.updated_at)
    previous = session.answers.get(question_id)
    entry = AuditEntry(
        question_id=question_id,
        value=answer.value,
        evidence_note=answer.evidence_note,
        previous=None if previous is None else previous.to_document(),
        at=now,
    )
    entries = dict(session.answers.entries)
    entries[question_id] = answer
    return replace(
        session,
        answers=AnswerSet(entries),
        updated_at=now,
        audit=session.audit + (entry,),
    )


def import_answers(
    catalog: Catalog,
    session: Session,
    raw: dict,
    at: datetime | None = None,
) -> Session:
    """Record a flat question-id -> answer map, in sorted id order."""
    for question_id in sorted(raw):
        answer = Answer.parse(raw[question_id], question_id)
        session = record_answer(catalog, session, question_id, answer, at=at)
    return session


def completeness(catalog: Catalog, session: Session) -> Completeness:
    """Answered/total per indicator over the questionnaire (derived count
    questions are supplemental and not counted); detail-pending indicators
    report total 0 and stay out of the overall fraction."""
    per_ki: dict[str, tuple[int, int]] = {}
    answered_sum = total_sum = 0
    for ki in catalog.key_indicators:
        answered = total = 0
        for goal_id in ki.goal_ids:
            for question in catalog.questions_of_goal(goal_id):
                if question.derived:
                    continue
                total += 1
                if session.answers.get(question.id) is not None:
                    answered += 1
        per_ki[ki.id] = (answered, total)
        answered_sum += answered
        total_sum += total
    overall = answered_sum / total_sum if total_sum else 0.0
    return Completeness(per_ki=per_ki, overall=overall)


# ---------------------------------------------------------------------------
# Persistence


def session_to_document(session: Session) -> dict:
    return {
        "formatVersion": SESSION_FORMAT_VERSION,
        "id": session.id,
        "catalogVersion": session.catalog_version,
        "profile": session.profile.to_document(),
        "answers": session.answers.to_document(),
        "audit": [
            {
                "questionId": e.question_id,
                "value": e.value,
                "evidenceNote": e.evidence_note,
                "previous": e.previous,
                "at": e.at.isoformat(),
            }
            for e in session.audit
        ],
        "label": session.label,
        "createdAt": session.created_at.isoformat(),
        "updatedAt": session.updated_at.isoformat(),
    }


def persist_session(session: Session) -> bytes:
    text = json.dumps(session_to_document(session), indent=2, ensure_ascii=False, sort_keys=True)
    return (text + "\n").encode("utf-8")


def _parse_timestamp(raw, path: str) -> datetime:
    try:
        return datetime.fromisoformat(raw)
    except (TypeError, ValueError):
        raise ParseError(f"invalid timestamp at {path}: {raw!r}") from None


def restore_session(data: bytes | str, registry: CatalogRegistry | None = None) -> Session:
    """Inverse of persist_session; checks format and catalog versions."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"session file is not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("session document must be a JSON object")
    fmt = doc.get("formatVersion")
    if fmt != SESSION_FORMAT_VERSION:
        raise VersionMismatchError(
            f"session format version {fmt!r} not supported (expected {SESSION_FORMAT_VERSION})")
    for key in ("id", "catalogVersion", "answers", "audit", "createdAt", "updatedAt"):
        if key not in doc:
            raise ParseError(f"missing key '{key}' in session document")
    catalog_version = doc["catalogVersion"]
    if registry is not None:
        registry.get(catalog_version)
    answers = AnswerSet({
        qid: Answer.parse(raw, qid) for qid, raw in doc["answers"].items()
    })
    audit = tuple(
        AuditEntry(
            question_id=e["questionId"],
            value=e["value"],
            evidence_note=e.get("evidenceNote"),
            previous=e.get("previous"),
            at=_parse_timestamp(e.get("at"), "audit[].at"),
        )
        for e in doc["audit"]
    )
    return Session(
        id=doc["id"],
        catalog_version=catalog_version,
        profile=AssessmentProfile.from_document(doc.get("profile")),
        answers=answers,
        label=doc.get("label", ""),
        created_at=_parse_timestamp(doc["createdAt"], "createdAt"),
        updated_at=_parse_timestamp(doc["updatedAt"], "updatedAt"),
        audit=audit,
    )
