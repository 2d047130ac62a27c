"""Deterministic rendering of assessments and gap reports.

Same inputs produce byte-identical output: the report timestamp is the
session's last update, JSON is emitted with sorted keys, and percents are
formatted to one decimal (half-up) at render time only.
"""

from __future__ import annotations

import json
from decimal import ROUND_HALF_UP, Decimal

from .catalog import Catalog, TargetMode, chain_to_document, trace
from .engine import GapReport, MaturityAssessment, MetricResult, ValueKind
from .errors import VersionMismatchError
from .sessions import Session


def canonical_json(obj) -> bytes:
    text = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def _round(value: float, places: int) -> float:
    quantum = Decimal(1).scaleb(-places)
    return float(Decimal(str(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def _score(value: float | None) -> float | None:
    return None if value is None else _round(value, 4)


def metric_display(result: MetricResult) -> str:
    value = result.value
    if value.kind is ValueKind.BOOL:
        return "yes" if value.value else "no"
    if value.kind is ValueKind.COUNT:
        return str(value.value)
    if value.kind is ValueKind.PERCENT:
        return f"{_round(value.value, 1):.1f}%"
    if value.kind is ValueKind.FRACTION:
        return f"{_round(value.value * 100.0, 1):.1f}%"
    return f"n/a ({value.reason.value})"


def _value_document(result: MetricResult) -> dict:
    value = result.value
    doc: dict = {"kind": value.kind.value}
    if value.kind is ValueKind.PERCENT:
        doc["value"] = _round(value.value, 1)
    elif value.kind is ValueKind.FRACTION:
        doc["value"] = _round(value.value, 4)
    elif value.kind is ValueKind.NOT_COMPUTABLE:
        doc["value"] = None
        doc["reason"] = value.reason.value
    else:
        doc["value"] = value.value
    return doc


def _target_document(catalog: Catalog, metric_id: str, result: MetricResult) -> dict:
    target = catalog.metrics_by_id[metric_id].target
    return {
        "mode": target.mode.value,
        "unit": target.unit.value if target.unit else None,
        "threshold": result.threshold,
        "thresholdSource": result.threshold_source,
    }


def _conventions(catalog: Catalog, assessment: MaturityAssessment, session: Session) -> dict:
    profile = session.profile
    thresholds = []
    for metric in catalog.metrics:
        if metric.target.mode is TargetMode.BOOLEAN_TRUE:
            continue
        result = assessment.per_metric[metric.id]
        thresholds.append({
            "metricId": metric.id,
            "mode": metric.target.mode.value,
            "unit": metric.target.unit.value if metric.target.unit else None,
            "value": result.threshold,
            "source": result.threshold_source,
        })
    return {
        "attainmentModel": profile.attainment_model.value,
        "goalAttainmentThreshold": profile.goal_attainment_threshold,
        "levelAttainmentThreshold": profile.level_attainment_threshold,
        "aggregation": "goal and indicator scores are the weighted fraction of met "
                       "metrics among computed ones; level scores average indicator "
                       "scores; attainment is staged",
        "metricWeights": dict(sorted(profile.metric_weights.items())),
        "thresholds": thresholds,
    }


def assessment_header(catalog: Catalog, assessment: MaturityAssessment, session: Session) -> dict:
    return {
        "catalogVersion": assessment.catalog_version,
        "profileDigest": assessment.profile_digest,
        "sessionId": session.id,
        "sessionLabel": session.label,
        "generatedAt": session.updated_at.isoformat(),
        "conventions": _conventions(catalog, assessment, session),
    }


def assessment_data(catalog: Catalog, assessment: MaturityAssessment) -> dict:
    """The data section: summary, per-level sections, warnings. This is also
    the evaluation endpoint body."""
    sections = []
    for level in catalog.levels:
        level_result = assessment.per_level[level.ordinal]
        ki_blocks = []
        for ki in catalog.key_indicators:
            if ki.level != level.ordinal:
                continue
            ki_result = assessment.per_ki[ki.id]
            goal_blocks = []
            for goal_id in ki.goal_ids:
                goal = catalog.goals_by_id[goal_id]
                goal_result = assessment.per_goal[goal_id]
                metric_rows = []
                for metric_id in goal.metric_ids:
                    result = assessment.per_metric[metric_id]
                    metric_rows.append({
                        "metricId": metric_id,
                        "name": catalog.metrics_by_id[metric_id].name,
                        "value": _value_document(result),
                        "display": metric_display(result),
                        "target": _target_document(catalog, metric_id, result),
                        "status": result.status.value,
                        "chain": chain_to_document(trace(catalog, metric_id)),
                    })
                goal_blocks.append({
                    "goalId": goal.id,
                    "name": goal.name,
                    "status": goal_result.status.value,
                    "score": _score(goal_result.score),
                    "detailPending": goal.detail_pending,
                    "metrics": metric_rows,
                })
            ki_blocks.append({
                "kiId": ki.id,
                "name": ki.name,
                "domain": catalog.domains_by_id[ki.domain].name,
                "status": ki_result.status.value,
                "score": _score(ki_result.score),
                "detailPending": ki_result.detail_pending,
                "goals": goal_blocks,
            })
        sections.append({
            "level": level.ordinal,
            "name": level.name,
            "score": _score(level_result.score),
            "measurable": level_result.measurable,
            "satisfied": level_result.satisfied,
            "attained": level_result.attained,
            "keyIndicators": ki_blocks,
        })
    return {
        "summary": {
            "attainedLevel": assessment.attained_level,
            "levels": [
                {
                    "level": level.ordinal,
                    "name": level.name,
                    "score": _score(assessment.per_level[level.ordinal].score),
                    "attained": assessment.per_level[level.ordinal].attained,
                }
                for level in catalog.levels
            ],
        },
        "sections": sections,
        "warnings": [
            {"code": w.code, "metricId": w.metric_id, "message": w.message}
            for w in assessment.warnings
        ],
    }


def assessment_document(catalog: Catalog, assessment: MaturityAssessment, session: Session) -> dict:
    if assessment.catalog_version != session.catalog_version:
        raise VersionMismatchError(
            f"assessment pins catalog {assessment.catalog_version!r} but session pins "
            f"{session.catalog_version!r}")
    return {
        "header": assessment_header(catalog, assessment, session),
        "data": assessment_data(catalog, assessment),
    }


STATUS_LABELS = {
    "met": "met",
    "unmet": "UNMET",
    "achieved": "achieved",
    "not-achieved": "NOT achieved",
    "indeterminate": "indeterminate",
}


def _assessment_markdown(catalog: Catalog, assessment: MaturityAssessment, session: Session) -> str:
    doc = assessment_document(catalog, assessment, session)
    header = doc["header"]
    data = doc["data"]
    conventions = header["conventions"]
    lines = [
        "# Security assessment report",
        "",
        f"- Catalog version: {header['catalogVersion']}",
        f"- Session: {header['sessionId']}" + (f" ({header['sessionLabel']})" if header["sessionLabel"] else ""),
        f"- Generated at: {header['generatedAt']}",
        f"- Profile digest: {header['profileDigest']}",
        "",
        f"Conventions: {conventions['aggregation']}. "
        f"Goal threshold {conventions['goalAttainmentThreshold']:g}, "
        f"level threshold {conventions['levelAttainmentThreshold']:g}, "
        f"model {conventions['attainmentModel']}.",
        "",
        "## Summary",
        "",
        f"Attained maturity level: **{data['summary']['attainedLevel']}**",
        "",
        "| Level | Name | Score | Attained |",
        "| --- | --- | --- | --- |",
    ]
    for row in data["summary"]["levels"]:
        score = "-" if row["score"] is None else f"{row['score']:.4f}"
        lines.append(f"| {row['level']} | {row['name']} | {score} | {'yes' if row['attained'] else 'no'} |")
    for section in data["sections"]:
        lines += ["", f"## Level {section['level']} - {section['name']}", ""]
        score = "-" if section["score"] is None else f"{section['score']:.4f}"
        lines.append(f"Score: {score}; measurable: {'yes' if section['measurable'] else 'no'}; "
                     f"attained: {'yes' if section['attained'] else 'no'}")
        for ki in section["keyIndicators"]:
            lines += ["", f"### {ki['name']}", ""]
            ki_score = "-" if ki["score"] is None else f"{ki['score']:.4f}"
            lines.append(f"Domain: {ki['domain']}; status: {STATUS_LABELS[ki['status']]}; score: {ki_score}")
            if ki["detailPending"]:
                lines.append("Detail pending: no questions or metrics shipped for this indicator.")
                continue
            for goal in ki["goals"]:
                lines += ["", f"#### Goal: {goal['name']}", ""]
                if goal["detailPending"]:
                    lines.append("Detail pending: reported indeterminate.")
                    continue
                goal_score = "-" if goal["score"] is None else f"{goal['score']:.4f}"
                lines.append(f"Status: {STATUS_LABELS[goal['status']]}; score: {goal_score}")
                lines += ["", "| Metric | Value | Target | Status |", "| --- | --- | --- | --- |"]
                for metric in goal["metrics"]:
                    target = metric["target"]
                    if target["mode"] == "boolean-true":
                        target_text = "yes"
                    else:
                        direction = "<=" if target["mode"] == "lower-better" else ">="
                        unit = "%" if target["unit"] == "percent" else ""
                        target_text = f"{direction} {target['threshold']:g}{unit}"
                    lines.append(
                        f"| {metric['name']} | {metric['display']} | {target_text} | "
                        f"{STATUS_LABELS[metric['status']]} |")
    lines += ["", "## Warnings", ""]
    if data["warnings"]:
        for warning in data["warnings"]:
            lines.append(f"- {warning['code']}: {warning['message']}")
    else:
        lines.append("None.")
    return "\n".join(lines) + "\n"


def render_assessment(
    catalog: Catalog,
    assessment: MaturityAssessment,
    session: Session,
    fmt: str = "json",
) -> bytes:
    """Render an assessment as canonical JSON or markdown."""
    if fmt == "json":
        return canonical_json(assessment_document(catalog, assessment, session))
    if fmt == "markdown" or fmt == "md":
        return _assessment_markdown(catalog, assessment, session).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


# ---------------------------------------------------------------------------
# Gap reports


def gap_document(catalog: Catalog, report: GapReport) -> dict:
    return {
        "catalogVersion": report.catalog_version,
        "profileDigest": report.profile_digest,
        "targetLevel": report.target_level,
        "attainedLevel": report.attained_level,
        "empty": report.empty,
        "items": [
            {
                "kind": item.kind.value,
                "level": item.level,
                "kiId": item.ki_id,
                "kiName": catalog.kis_by_id[item.ki_id].name,
                "goalId": item.goal_id,
                "goalName": catalog.goals_by_id[item.goal_id].name if item.goal_id else None,
                "metricId": item.metric_id,
                "metricName": catalog.metrics_by_id[item.metric_id].name if item.metric_id else None,
                "detail": item.detail,
                "chain": item.chain,
            }
            for item in report.items
        ],
    }


def _gap_markdown(catalog: Catalog, report: GapReport) -> str:
    lines = [
        f"# Gap report - target level {report.target_level}",
        "",
        f"- Catalog version: {report.catalog_version}",
        f"- Profile digest: {report.profile_digest}",
        f"- Attained level: {report.attained_level}",
        "",
    ]
    if report.empty:
        lines += [f"Target level {report.target_level} attained: no unmet metrics and "
                  "nothing actionable left indeterminate in scope.", ""]
        return "\n".join(lines)
    lines += [
        "| Level | Key indicator | Goal | Metric | Kind | Detail |",
        "| --- | --- | --- | --- | --- | --- |",
    ]
    for item in report.items:
        ki_name = catalog.kis_by_id[item.ki_id].name
        goal_name = catalog.goals_by_id[item.goal_id].name if item.goal_id else "-"
        metric_name = catalog.metrics_by_id[item.metric_id].name if item.metric_id else "-"
        lines.append(
            f"| {item.level} | {ki_name} | {goal_name} | {metric_name} | "
            f"{item.kind.value} | {item.detail} |")
    lines.append("")
    return "\n".join(lines)


def render_gap(catalog: Catalog, report: GapReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return canonical_json(gap_document(catalog, report))
    if fmt == "markdown" or fmt == "md":
        return _gap_markdown(catalog, report).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")
