from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from conftest import favorable_raw
from secassess.service import create_app

API_ERROR_KEYS = {"httpStatus", "code", "message", "details"}
PUBLISHED_CODES = {"unknown-id", "type-mismatch", "missing-threshold",
                   "version-mismatch", "parse-error", "range-error"}


@pytest.fixture
def client(catalog, tmp_path):
    app = create_app(catalog, tmp_path / "sessions")
    with TestClient(app, raise_server_exceptions=False) as test_client:
        yield test_client


def new_session(client, label="test") -> str:
    response = client.post("/sessions", json={"label": label})
    assert response.status_code == 201
    return response.json()["id"]


def assert_api_error(response, status, code):
    assert response.status_code == status
    body = response.json()
    assert set(body) == API_ERROR_KEYS
    assert body["httpStatus"] == status
    assert body["code"] == code
    assert code in PUBLISHED_CODES


# -- catalog endpoints ----------------------------------------------------------


def test_get_catalog(client, catalog):
    response = client.get("/catalog")
    assert response.status_code == 200
    doc = response.json()
    assert doc["version"] == catalog.version
    assert len(doc["goals"]) == 45
    assert response.headers["X-Catalog-Version"] == catalog.version


def test_get_trace(client):
    response = client.get("/catalog/trace/m-msg-weak-authentication")
    assert response.status_code == 200
    assert response.json()["goalName"] == "Secure electronic messaging"


def test_get_trace_unknown(client):
    assert_api_error(client.get("/catalog/trace/m-nope"), 404, "unknown-id")


# -- session lifecycle ------------------------------------------------------------


def test_post_and_get_session(client, catalog):
    session_id = new_session(client)
    response = client.get(f"/sessions/{session_id}")
    assert response.status_code == 200
    assert response.json()["catalogVersion"] == catalog.version


def test_list_sessions(client):
    first = new_session(client, "a")
    second = new_session(client, "b")
    ids = {s["id"] for s in client.get("/sessions").json()["sessions"]}
    assert {first, second} <= ids


def test_get_session_unknown(client):
    assert_api_error(client.get("/sessions/nope"), 404, "unknown-id")


def test_patch_answers(client):
    session_id = new_session(client)
    response = client.patch(f"/sessions/{session_id}/answers",
                            json={"q-mon-audit-logging-1": "Yes"})
    assert response.status_code == 200
    assert response.json()["answers"]["q-mon-audit-logging-1"]["value"] == "Yes"


def test_patch_type_mismatch(client):
    session_id = new_session(client)
    response = client.patch(f"/sessions/{session_id}/answers",
                            json={"q-mon-audit-logging-1": 5})
    assert_api_error(response, 422, "type-mismatch")


def test_patch_unknown_question(client):
    session_id = new_session(client)
    response = client.patch(f"/sessions/{session_id}/answers", json={"q-nope": "Yes"})
    assert_api_error(response, 422, "unknown-id")


def test_patch_idempotent_for_evaluation(client, catalog):
    session_id = new_session(client)
    body = dict(list(favorable_raw(catalog).items())[:10])
    client.patch(f"/sessions/{session_id}/answers", json=body)
    first = client.get(f"/sessions/{session_id}/evaluation").content
    client.patch(f"/sessions/{session_id}/answers", json=body)
    second = client.get(f"/sessions/{session_id}/evaluation").content
    assert first == second


def test_completeness_endpoint(client, catalog):
    session_id = new_session(client)
    client.patch(f"/sessions/{session_id}/answers", json={"q-mon-audit-logging-1": "Yes"})
    doc = client.get(f"/sessions/{session_id}/completeness").json()
    assert doc["perKi"]["ki-infrastructure-ac-monitoring"] == {"answered": 1, "total": 6}
    assert 0 < doc["overall"] < 1


# -- evaluation, gap, what-if, report ------------------------------------------------


def test_evaluation_fresh_session(client):
    session_id = new_session(client)
    doc = client.get(f"/sessions/{session_id}/evaluation").json()
    assert doc["summary"]["attainedLevel"] == 0


def test_evaluation_oracle_session(client, catalog):
    session_id = new_session(client)
    client.patch(f"/sessions/{session_id}/answers", json=favorable_raw(catalog))
    doc = client.get(f"/sessions/{session_id}/evaluation").json()
    level2 = next(s for s in doc["sections"] if s["level"] == 2)
    assert level2["score"] == 1.0
    assert all(ki["score"] == 1.0 for ki in level2["keyIndicators"]
               if not ki["detailPending"])


def test_evaluation_version_mismatch(client, catalog, tmp_path):
    session_id = new_session(client)
    path = tmp_path / "sessions" / f"{session_id}.json"
    doc = json.loads(path.read_text())
    doc["catalogVersion"] = "older-0.0.9"
    path.write_text(json.dumps(doc))
    assert_api_error(client.get(f"/sessions/{session_id}/evaluation"), 409, "version-mismatch")


def test_gap_endpoint(client, catalog):
    session_id = new_session(client)
    client.patch(f"/sessions/{session_id}/answers", json=favorable_raw(catalog))
    doc = client.get(f"/sessions/{session_id}/gap", params={"target": 2}).json()
    assert doc["empty"] is True
    doc3 = client.get(f"/sessions/{session_id}/gap", params={"target": 3}).json()
    assert len(doc3["items"]) == 4


def test_gap_requires_target(client):
    session_id = new_session(client)
    assert_api_error(client.get(f"/sessions/{session_id}/gap"), 422, "range-error")


def test_gap_target_out_of_range(client):
    session_id = new_session(client)
    response = client.get(f"/sessions/{session_id}/gap", params={"target": 0})
    assert_api_error(response, 422, "range-error")


def test_whatif_does_not_persist(client, catalog, tmp_path):
    session_id = new_session(client)
    client.patch(f"/sessions/{session_id}/answers", json={
        "q-msg-secure-electronic-messaging-6": 2,
        "q-msg-secure-electronic-messaging-5": 10,
    })
    before = (tmp_path / "sessions" / f"{session_id}.json").read_bytes()
    response = client.post(f"/sessions/{session_id}/whatif",
                           json={"overlay": {"q-msg-secure-electronic-messaging-6": 0}})
    assert response.status_code == 200

    def weak_auth_value(doc):
        for section in doc["sections"]:
            for ki in section["keyIndicators"]:
                for goal in ki["goals"]:
                    for metric in goal["metrics"]:
                        if metric["metricId"] == "m-msg-weak-authentication":
                            return metric["value"]
        raise AssertionError("metric row missing")

    assert weak_auth_value(response.json()) == {"kind": "percent", "value": 0.0}
    # session file untouched, baseline evaluation still shows 20%
    assert (tmp_path / "sessions" / f"{session_id}.json").read_bytes() == before
    baseline = client.get(f"/sessions/{session_id}/evaluation").json()
    assert weak_auth_value(baseline) == {"kind": "percent", "value": 20.0}


def test_whatif_empty_overlay_equals_evaluation(client, catalog):
    session_id = new_session(client)
    client.patch(f"/sessions/{session_id}/answers", json=favorable_raw(catalog))
    whatif = client.post(f"/sessions/{session_id}/whatif", json={"overlay": {}})
    evaluation = client.get(f"/sessions/{session_id}/evaluation")
    assert whatif.content == evaluation.content


def test_whatif_unknown_question(client):
    session_id = new_session(client)
    response = client.post(f"/sessions/{session_id}/whatif",
                           json={"overlay": {"q-nope": "Yes"}})
    assert_api_error(response, 422, "unknown-id")


def test_report_endpoint_both_formats(client, catalog):
    session_id = new_session(client)
    json_report = client.get(f"/sessions/{session_id}/report", params={"format": "json"})
    assert json_report.status_code == 200
    assert json_report.json()["header"]["catalogVersion"] == catalog.version
    md_report = client.get(f"/sessions/{session_id}/report", params={"format": "md"})
    assert md_report.status_code == 200
    assert md_report.text.startswith("# Security assessment report")


def test_report_bad_format(client):
    session_id = new_session(client)
    response = client.get(f"/sessions/{session_id}/report", params={"format": "pdf"})
    assert_api_error(response, 400, "parse-error")


def test_every_response_carries_catalog_version_header(client, catalog):
    session_id = new_session(client)
    for response in (
        client.get("/catalog"),
        client.get("/sessions"),
        client.get(f"/sessions/{session_id}/evaluation"),
        client.get("/catalog/trace/m-nope"),
    ):
        assert response.headers.get("X-Catalog-Version") == catalog.version
