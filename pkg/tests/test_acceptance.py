"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``)."""

from __future__ import annotations

import json
import random
import subprocess
import sys
import time
from importlib import resources
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from conftest import DETAILED_KI_IDS, favorable_raw
from oracle_eval import METRIC_ORACLES
from secassess.catalog import validate_catalog
from secassess.core import instantiate_template
from secassess.engine import (
    AnswerSet,
    AssessmentProfile,
    MetricValue,
    TargetStatus,
    ValueKind,
    apply_whatif,
    assess_maturity,
    evaluate_metric,
)
from secassess.reporting import render_assessment
from secassess.service import create_app
from test_engine_properties import favorable_flip, random_raw, scores_never_decrease, value_tuple


@pytest.fixture(autouse=True)
def announce(request):
    yield
    report = getattr(request.node, "rep_call", None)
    status = "PASS" if report is not None and report.passed else "FAIL"
    name = request.node.name.replace("test_", "", 1)
    print(f"\nACCEPTANCE {name}: {status}")


def test_catalog_census(catalog):
    started = time.monotonic()
    assert validate_catalog(catalog) == []
    assert len(catalog.levels) == 5
    assert len(catalog.domains) == 5
    assert len(catalog.key_indicators) == 18
    assert len(catalog.goals) == 45
    assert sum(1 for q in catalog.questions if not q.derived) == 45
    assert len(catalog.metrics) == 24
    for ki_id, expected in zip(DETAILED_KI_IDS, (10, 7, 4, 3)):
        ki = catalog.kis_by_id[ki_id]
        assert sum(len(catalog.goals_by_id[g].metric_ids) for g in ki.goal_ids) == expected
    assert time.monotonic() - started < 1.0


def test_template_fidelity(catalog):
    checked = 0
    for goal in catalog.goals:
        (ki,) = catalog.kis_by_goal_id[goal.id]
        rebuilt = instantiate_template(
            goal.control_kind, goal.name,
            catalog.levels_by_ordinal[ki.level], catalog.domains_by_id[ki.domain])
        assert rebuilt == goal.template, goal.id
        checked += 1
    assert checked == 45


def test_worked_metrics_from_detailed_indicator(catalog):
    answers = AnswerSet.from_mapping(catalog, {
        "q-msg-secure-electronic-messaging-1": "Yes",
        "q-msg-secure-electronic-messaging-2": "Yes",
        "q-msg-secure-electronic-messaging-3": 0,    # incidents
        "q-msg-secure-electronic-messaging-4": "Yes",
        "q-msg-secure-electronic-messaging-5": 10,   # inventory
        "q-msg-secure-electronic-messaging-6": 2,    # weak authentication
        "q-msg-network-connection-control-1": "Yes",
        "q-msg-network-connection-control-2": 10,
        "q-msg-network-connection-control-3": 9,     # access rights aligned
        "q-msg-network-connection-control-4": "Yes",  # gateway
        "q-msg-network-connection-control-5": 10,
        "q-msg-network-connection-control-6": 8,     # restricted per policy
        "q-msg-network-routing-control-1": "Yes",
        "q-msg-network-routing-control-2": "Yes",
        "q-msg-network-routing-control-3": 5,
        "q-msg-network-routing-control-4": 4,        # routing aligned
    })

    def value_of(metric_id):
        return evaluate_metric(catalog, catalog.metrics_by_id[metric_id], answers)

    assert value_of("m-msg-weak-authentication") == MetricValue.percent(20.0)
    assert value_of("m-msg-routing-aligned") == MetricValue.percent(80.0)
    assert value_of("m-msg-access-rights-aligned") == MetricValue.percent(90.0)
    assert value_of("m-msg-network-gateway") == MetricValue.boolean(True)
    assert value_of("m-msg-messages-restricted") == MetricValue.percent(80.0)
    assert value_of("m-msg-ac-incidents") == MetricValue.count(0)


def test_oracle_equivalence(catalog):
    rng = random.Random(7)
    sets_checked = 0
    for _ in range(1000):
        raw = random_raw(rng)
        answers = AnswerSet.from_mapping(catalog, raw)
        for metric in catalog.metrics:
            assert (value_tuple(evaluate_metric(catalog, metric, answers))
                    == METRIC_ORACLES[metric.id](raw)), metric.id
        sets_checked += 1
    assert sets_checked >= 1000


def test_property_suite(catalog, fixed_session):
    rng = random.Random(99)

    # percent range for consistent counts; overflow surfaced beyond it
    spec = catalog.metrics_by_id["m-msg-weak-authentication"]
    for _ in range(200):
        den = rng.randint(1, 50)
        num = rng.randint(0, den)
        value = evaluate_metric(catalog, spec, AnswerSet.from_mapping(catalog, {
            "q-msg-secure-electronic-messaging-6": num,
            "q-msg-secure-electronic-messaging-5": den,
        }))
        assert value.kind is ValueKind.PERCENT and 0.0 <= value.value <= 100.0

    # unmet -> met flips never decrease a score (all 24 shipped metrics)
    from conftest import unfavorable_raw
    base_raw = unfavorable_raw(catalog)
    base = assess_maturity(catalog, AnswerSet.from_mapping(catalog, base_raw))
    for metric in catalog.metrics:
        assert base.per_metric[metric.id].status is TargetStatus.UNMET
        flipped_raw = dict(base_raw)
        flipped_raw.update(favorable_flip(metric))
        flipped = assess_maturity(catalog, AnswerSet.from_mapping(catalog, flipped_raw))
        scores_never_decrease(base, flipped)

    # staged attainment monotone on random answer sets
    for _ in range(100):
        assessment = assess_maturity(catalog, AnswerSet.from_mapping(catalog, random_raw(rng)))
        flags = [assessment.per_level[lv].attained for lv in range(1, 6)]
        for later, earlier in zip(flags[1:], flags):
            assert not later or earlier

    # what-if identity and non-mutation
    base_set = AnswerSet.from_mapping(catalog, favorable_raw(catalog))
    snapshot = dict(base_set.entries)
    assert apply_whatif(catalog, base_set, AnswerSet()) == base_set
    overlay = AnswerSet.from_mapping(catalog, {"q-msg-secure-electronic-messaging-6": 3})
    merged = apply_whatif(catalog, base_set, overlay)
    assert merged != base_set and base_set.entries == snapshot

    # evaluation determinism
    assert (assess_maturity(catalog, base_set) == assess_maturity(catalog, base_set))

    # report byte-determinism against the checked-in golden
    golden = Path(__file__).parent / "golden" / "assessment_oracle.json"
    payload = render_assessment(
        catalog, assess_maturity(catalog, fixed_session.answers, fixed_session.profile),
        fixed_session, "json")
    assert payload == golden.read_bytes()


def test_end_to_end_cli(catalog, tmp_path):
    started = time.monotonic()
    cli = [sys.executable, "-m", "secassess.cli"]

    def run(*args, expect=0):
        result = subprocess.run(cli + [str(a) for a in args],
                                capture_output=True, text=True, cwd=tmp_path)
        assert result.returncode == expect, result.stdout + result.stderr
        return result

    shipped = tmp_path / "catalog.json"
    shipped.write_bytes(resources.files("secassess").joinpath("data")
                        .joinpath("soa-ac-catalog.json").read_bytes())
    run("catalog", "validate", shipped)

    session_path = tmp_path / "s1.json"
    run("session", "new", session_path, "--label", "acceptance")

    answers_path = tmp_path / "answers.json"
    answers_path.write_text(json.dumps(favorable_raw(catalog)))
    run("session", "import", session_path, "--answers", answers_path)

    run("evaluate", session_path)
    run("gap", session_path, "--target", "2", "--check")

    # perturbing one answer forces an unmet metric and exit code 4
    run("session", "answer", session_path,
        "--q", "q-msg-secure-electronic-messaging-6", "--value", "3")
    run("gap", session_path, "--target", "2", "--check", expect=4)

    assert time.monotonic() - started < 5.0


def test_service_contract(catalog, tmp_path):
    app = create_app(catalog, tmp_path / "sessions")
    with TestClient(app, raise_server_exceptions=False) as client:
        jsonschema = pytest.importorskip("jsonschema")
        catalog_schema = json.loads(resources.files("secassess").joinpath("data")
                                    .joinpath("catalog.schema.json").read_bytes())

        # 1 GET /catalog
        response = client.get("/catalog")
        assert response.status_code == 200
        jsonschema.validate(response.json(), catalog_schema)

        # 2 GET /catalog/trace/{metricId}
        chain = client.get("/catalog/trace/m-msg-weak-authentication").json()
        assert {"metricId", "questionIds", "goalId", "goalName", "keyIndicators"} <= set(chain)

        # 3 POST /sessions
        created = client.post("/sessions", json={"label": "contract"})
        assert created.status_code == 201
        session_doc = created.json()
        assert {"id", "catalogVersion", "profile", "answers", "audit",
                "label", "createdAt", "updatedAt"} <= set(session_doc)
        session_id = session_doc["id"]

        # 4 GET /sessions
        listing = client.get("/sessions").json()
        assert any(s["id"] == session_id for s in listing["sessions"])

        # 5 GET /sessions/{id}
        assert client.get(f"/sessions/{session_id}").json()["id"] == session_id

        # 6 PATCH /sessions/{id}/answers, idempotent for evaluation output
        body = favorable_raw(catalog)
        assert client.patch(f"/sessions/{session_id}/answers", json=body).status_code == 200
        first = client.get(f"/sessions/{session_id}/evaluation").content
        assert client.patch(f"/sessions/{session_id}/answers", json=body).status_code == 200
        second = client.get(f"/sessions/{session_id}/evaluation").content
        assert first == second

        # 7 GET /sessions/{id}/completeness
        comp = client.get(f"/sessions/{session_id}/completeness").json()
        assert comp["overall"] == 1.0

        # 8 GET /sessions/{id}/evaluation
        evaluation = json.loads(first)
        assert {"summary", "sections", "warnings"} == set(evaluation)

        # 9 GET /sessions/{id}/gap
        gap = client.get(f"/sessions/{session_id}/gap", params={"target": 2}).json()
        assert gap["empty"] is True

        # 10 POST /sessions/{id}/whatif: non-persistence checked by re-read
        stored_before = (tmp_path / "sessions" / f"{session_id}.json").read_bytes()
        whatif = client.post(f"/sessions/{session_id}/whatif", json={
            "overlay": {"q-msg-secure-electronic-messaging-6": 5}})
        assert whatif.status_code == 200
        assert (tmp_path / "sessions" / f"{session_id}.json").read_bytes() == stored_before

        # 11 GET /sessions/{id}/report
        report = client.get(f"/sessions/{session_id}/report", params={"format": "json"}).json()
        assert {"header", "data"} == set(report)

        # error bodies are ApiError documents
        bad = client.get("/sessions/missing")
        assert bad.status_code == 404
        assert set(bad.json()) == {"httpStatus", "code", "message", "details"}
