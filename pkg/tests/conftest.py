from __future__ import annotations

from datetime import datetime, timezone

import pytest

from secassess.catalog import AnswerKind, load_shipped_catalog
from secassess.engine import AnswerSet, AssessmentProfile
from secassess.sessions import Session

# Count questions of the shipped catalog with an all-favorable assignment:
# zero incidents, full inventories, everything aligned/covered, nothing weak.
FAVORABLE_COUNTS = {
    "q-msg-secure-electronic-messaging-3": 0,    # incidents
    "q-msg-secure-electronic-messaging-5": 10,   # services in inventory
    "q-msg-secure-electronic-messaging-6": 0,    # weak authentication
    "q-msg-network-connection-control-2": 10,
    "q-msg-network-connection-control-3": 10,
    "q-msg-network-connection-control-5": 10,
    "q-msg-network-connection-control-6": 10,
    "q-msg-network-routing-control-3": 10,
    "q-msg-network-routing-control-4": 10,
    "q-acpd-classification-guidelines-apps-total": 10,
    "q-acpd-classification-guidelines-apps-classified": 10,
    "q-acpd-classification-guidelines-apps-critical": 0,
    "q-acpd-information-labeling-apps-total": 10,
    "q-acpd-information-labeling-apps-protected": 10,
    "q-acpd-network-services-policy-services-total": 10,
    "q-acpd-network-services-policy-services-covered": 10,
    "q-sd-information-access-restriction-functions-modified": 10,
    "q-sd-information-access-restriction-functions-uncontrolled": 0,
    "q-sd-source-code-access-services-total": 10,
    "q-sd-source-code-access-services-managed": 10,
}

DETAILED_KI_IDS = [
    "ki-access-control-policy-definition",
    "ki-message-ac-service-protocol",
    "ki-service-description-ac",
    "ki-infrastructure-ac-monitoring",
]


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # expose each phase's report so fixtures can see the test outcome
    outcome = yield
    report = outcome.get_result()
    setattr(item, "rep_" + report.when, report)


@pytest.fixture(scope="session")
def catalog():
    return load_shipped_catalog()


def favorable_raw(catalog) -> dict:
    """Yes to every yes/no question; counts so every ratio is fully favorable."""
    raw = {qid: "Yes" for qid, q in catalog.questions_by_id.items()
           if q.answer_kind is AnswerKind.YES_NO}
    raw.update(FAVORABLE_COUNTS)
    return raw


def unfavorable_raw(catalog) -> dict:
    """No everywhere; counts chosen so every numeric metric misses its target."""
    raw = {qid: "No" for qid, q in catalog.questions_by_id.items()
           if q.answer_kind is AnswerKind.YES_NO}
    for qid, q in catalog.questions_by_id.items():
        if q.answer_kind is not AnswerKind.COUNT:
            continue
        raw[qid] = 10  # denominators and unfavorable-lower numerators
    # higher-better numerators to zero, lower-better numerators to the maximum
    for qid in (
        "q-msg-network-connection-control-3",
        "q-msg-network-connection-control-6",
        "q-msg-network-routing-control-4",
        "q-acpd-classification-guidelines-apps-classified",
        "q-acpd-information-labeling-apps-protected",
        "q-acpd-network-services-policy-services-covered",
        "q-sd-source-code-access-services-managed",
    ):
        raw[qid] = 0
    return raw


@pytest.fixture
def oracle_answers(catalog) -> AnswerSet:
    return AnswerSet.from_mapping(catalog, favorable_raw(catalog))


@pytest.fixture
def fixed_session(catalog, oracle_answers) -> Session:
    """Deterministic session for golden-file rendering."""
    at = datetime(2026, 1, 15, 12, 0, 0, tzinfo=timezone.utc)
    return Session(
        id="golden-session-0001",
        catalog_version=catalog.version,
        profile=AssessmentProfile(),
        answers=oracle_answers,
        label="golden",
        created_at=at,
        updated_at=at,
    )


@pytest.fixture
def empty_fixed_session(catalog) -> Session:
    at = datetime(2026, 1, 15, 12, 0, 0, tzinfo=timezone.utc)
    return Session(
        id="golden-session-0000",
        catalog_version=catalog.version,
        profile=AssessmentProfile(),
        answers=AnswerSet(),
        label="golden-empty",
        created_at=at,
        updated_at=at,
    )
