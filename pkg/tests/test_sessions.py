from __future__ import annotations

from datetime import datetime, timedelta, timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import favorable_raw
from secassess.engine import Answer, AssessmentProfile
from secassess.errors import (
    ParseError,
    TypeMismatchError,
    UnknownCatalogVersionError,
    UnknownQuestionError,
    VersionMismatchError,
)
from secassess.sessions import (
    CatalogRegistry,
    completeness,
    create_session,
    import_answers,
    persist_session,
    record_answer,
    restore_session,
)

T0 = datetime(2026, 1, 15, 12, 0, 0, tzinfo=timezone.utc)


@pytest.fixture
def registry(catalog):
    return CatalogRegistry(catalog)


def test_create_session_empty(catalog, registry):
    session = create_session(registry, catalog.version, label="trial")
    assert len(session.answers) == 0
    assert session.catalog_version == catalog.version
    assert session.updated_at >= session.created_at


def test_create_session_unknown_version(registry):
    with pytest.raises(UnknownCatalogVersionError):
        create_session(registry, "nope-9.9")


def test_create_session_unique_ids(catalog, registry):
    first = create_session(registry, catalog.version)
    second = create_session(registry, catalog.version)
    assert first.id != second.id


def test_record_answer_yes(catalog, registry):
    session = create_session(registry, catalog.version, at=T0)
    session = record_answer(catalog, session, "q-mon-audit-logging-1", Answer("Yes"), at=T0)
    assert session.answers.get("q-mon-audit-logging-1").value == "Yes"


def test_record_answer_count(catalog, registry):
    session = create_session(registry, catalog.version, at=T0)
    session = record_answer(
        catalog, session, "q-msg-secure-electronic-messaging-5", Answer(10), at=T0)
    assert session.answers.get("q-msg-secure-electronic-messaging-5").value == 10


def test_record_answer_type_mismatch(catalog, registry):
    session = create_session(registry, catalog.version)
    with pytest.raises(TypeMismatchError):
        record_answer(catalog, session, "q-mon-audit-logging-1", Answer(5))


def test_record_answer_unknown_question(catalog, registry):
    session = create_session(registry, catalog.version)
    with pytest.raises(UnknownQuestionError):
        record_answer(catalog, session, "q-missing", Answer("Yes"))


def test_record_answer_supersede_keeps_audit(catalog, registry):
    session = create_session(registry, catalog.version, at=T0)
    session = record_answer(catalog, session, "q-mon-audit-logging-1", Answer("No"), at=T0)
    session = record_answer(catalog, session, "q-mon-audit-logging-1",
                            Answer("Yes", "fixed after review"), at=T0 + timedelta(hours=1))
    assert session.answers.get("q-mon-audit-logging-1").value == "Yes"
    assert len(session.audit) == 2
    assert session.audit[1].previous == {"value": "No", "evidenceNote": None}
    assert session.updated_at == T0 + timedelta(hours=1)


def test_record_answer_upsert_idempotent_modulo_audit(catalog, registry):
    session = create_session(registry, catalog.version, at=T0)
    once = record_answer(catalog, session, "q-mon-audit-logging-1", Answer("Yes"), at=T0)
    twice = record_answer(catalog, once, "q-mon-audit-logging-1", Answer("Yes"), at=T0)
    assert once.answers == twice.answers
    assert len(twice.audit) == len(once.audit) + 1


def test_completeness_empty(catalog, registry):
    session = create_session(registry, catalog.version)
    assert completeness(catalog, session).overall == 0.0


def test_completeness_full_questionnaire(catalog, registry):
    session = create_session(registry, catalog.version, at=T0)
    questionnaire = {qid: raw for qid, raw in favorable_raw(catalog).items()
                     if not catalog.questions_by_id[qid].derived}
    assert len(questionnaire) == 45
    session = import_answers(catalog, session, questionnaire, at=T0)
    result = completeness(catalog, session)
    assert result.overall == 1.0
    assert result.per_ki["ki-access-control-policy-definition"] == (18, 18)
    assert result.per_ki["ki-message-ac-service-protocol"] == (16, 16)
    assert result.per_ki["ki-service-description-ac"] == (5, 5)
    assert result.per_ki["ki-infrastructure-ac-monitoring"] == (6, 6)


def test_completeness_half_answered_ki(catalog, registry):
    session = create_session(registry, catalog.version, at=T0)
    ki = catalog.kis_by_id["ki-access-control-policy-definition"]
    questionnaire = [q for g in ki.goal_ids for q in catalog.questions_of_goal(g)
                     if not q.derived]
    for question in questionnaire[:9]:
        session = record_answer(catalog, session, question.id, Answer("Yes"), at=T0)
    answered, total = completeness(catalog, session).per_ki[ki.id]
    assert (answered, total) == (9, 18)


def test_completeness_detail_pending_kis_total_zero(catalog, registry):
    session = create_session(registry, catalog.version)
    result = completeness(catalog, session)
    assert result.per_ki["ki-registry-ac"] == (0, 0)
    assert result.per_ki["ki-service-security-policy-ac"] == (0, 0)


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_completeness_monotone_under_new_answers(catalog, data):
    registry = CatalogRegistry(catalog)
    session = create_session(registry, catalog.version, at=T0)
    questionnaire = [q for q in catalog.questions if not q.derived]
    picks = data.draw(st.lists(st.sampled_from(questionnaire), max_size=12))
    before = completeness(catalog, session)
    for question in picks:
        answer = Answer("Yes") if question.answer_kind.value == "yes-no" else Answer(1)
        session = record_answer(catalog, session, question.id, answer, at=T0)
        after = completeness(catalog, session)
        assert after.overall >= before.overall
        for ki_id, (answered, total) in before.per_ki.items():
            assert after.per_ki[ki_id][0] >= answered
            assert after.per_ki[ki_id][1] == total
        before = after


def test_persist_restore_round_trip(catalog, registry):
    session = create_session(registry, catalog.version, AssessmentProfile(
        thresholds={"m-msg-weak-authentication": 5.0}), label="audit 2026", at=T0)
    session = record_answer(catalog, session, "q-mon-audit-logging-1",
                            Answer("Yes", "see SIEM config"), at=T0)
    session = record_answer(catalog, session, "q-mon-audit-logging-1", Answer("No"),
                            at=T0 + timedelta(minutes=5))
    data = persist_session(session)
    restored = restore_session(data, registry)
    assert restored == session
    assert persist_session(restored) == data


def test_restore_truncated_stream(registry):
    with pytest.raises(ParseError):
        restore_session(b'{"formatVersion": 1, "id": "x"', registry)


def test_restore_unknown_catalog_version(catalog, registry):
    session = create_session(registry, catalog.version, at=T0)
    data = persist_session(session).decode("utf-8").replace(catalog.version, "gone-0.0.1")
    with pytest.raises(UnknownCatalogVersionError):
        restore_session(data, registry)


def test_restore_wrong_format_version(catalog, registry):
    session = create_session(registry, catalog.version, at=T0)
    data = persist_session(session).decode("utf-8").replace('"formatVersion": 1', '"formatVersion": 99')
    with pytest.raises(VersionMismatchError):
        restore_session(data, registry)
