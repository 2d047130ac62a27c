"""Catalog file format, loading, validation, and the interpretation chain.

A catalog is a single UTF-8 JSON document with top-level keys ``version,
levels, domains, keyIndicators, goals, questions, metrics``. The shipped
content file ``data/soa-ac-catalog.json`` encodes the access-control
security viewpoint this package assesses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from .core import (
    MAX_LEVEL,
    MIN_LEVEL,
    TEMPLATE_COLUMNS,
    ControlKind,
    Goal,
    GoalSource,
    GqmTemplate,
    KeyIndicator,
    MaturityLevel,
    MeasurementObject,
    Purpose,
    SecurityDomain,
    classify_control,
    template_context,
)
from .errors import CatalogValidationError, ParseError, RangeError, UnknownIdError

SHIPPED_CATALOG_RESOURCE = "soa-ac-catalog.json"


class AnswerKind(str, Enum):
    YES_NO = "yes-no"
    COUNT = "count"


class QuestionRole(str, Enum):
    EVIDENCE = "evidence"
    NUMERATOR_SOURCE = "numerator-source"
    DENOMINATOR_SOURCE = "denominator-source"
    CHECKLIST_ITEM = "checklist-item"


class ExprKind(str, Enum):
    BOOLEAN_OF = "boolean-of"
    COUNT_OF = "count-of"
    RATIO_PERCENT = "ratio-percent"
    YES_FRACTION = "yes-fraction"


class TargetMode(str, Enum):
    BOOLEAN_TRUE = "boolean-true"
    LOWER_BETTER = "lower-better"
    HIGHER_BETTER = "higher-better"


class TargetUnit(str, Enum):
    COUNT = "count"
    PERCENT = "percent"


@dataclass(frozen=True)
class Question:
    id: str
    goal_id: str
    prompt: str
    answer_kind: AnswerKind
    role: QuestionRole
    # Derived questions supply counts for ratio metrics whose formula the
    # source tables imply but do not spell out; they are excluded from the
    # questionnaire census and completeness totals.
    derived: bool = False


@dataclass(frozen=True)
class MetricExpr:
    kind: ExprKind
    question_id: str | None = None
    numerator_question_id: str | None = None
    denominator_question_id: str | None = None
    question_ids: tuple[str, ...] = ()

    def referenced_questions(self) -> tuple[str, ...]:
        if self.kind in (ExprKind.BOOLEAN_OF, ExprKind.COUNT_OF):
            return (self.question_id,) if self.question_id else ()
        if self.kind is ExprKind.RATIO_PERCENT:
            return tuple(q for q in (self.numerator_question_id, self.denominator_question_id) if q)
        return self.question_ids


@dataclass(frozen=True)
class TargetSpec:
    mode: TargetMode
    default_threshold: float | None = None
    threshold_required: bool = False
    unit: TargetUnit | None = None


@dataclass(frozen=True)
class MetricSpec:
    id: str
    goal_id: str
    name: str
    formula: MetricExpr
    target: TargetSpec
    tags: tuple[str, ...] = ()


@dataclass(frozen=True)
class Violation:
    rule_id: str
    entity_id: str
    message: str


@dataclass(frozen=True)
class ChainLink:
    ki_id: str
    ki_name: str
    level: int
    level_name: str
    domain_id: str
    domain_name: str


@dataclass(frozen=True)
class InterpretationChain:
    """Bottom-up trace: metric -> question(s) -> goal -> KI(s) -> level -> domain."""

    metric_id: str
    metric_name: str
    question_ids: tuple[str, ...]
    goal_id: str
    goal_name: str
    kis: tuple[ChainLink, ...]


@dataclass(frozen=True)
class Catalog:
    version: str
    levels: tuple[MaturityLevel, ...]
    domains: tuple[SecurityDomain, ...]
    key_indicators: tuple[KeyIndicator, ...]
    goals: tuple[Goal, ...]
    questions: tuple[Question, ...]
    metrics: tuple[MetricSpec, ...]

    # Index maps, built once in __post_init__.
    levels_by_ordinal: dict[int, MaturityLevel] = field(default_factory=dict, compare=False)
    domains_by_id: dict[str, SecurityDomain] = field(default_factory=dict, compare=False)
    kis_by_id: dict[str, KeyIndicator] = field(default_factory=dict, compare=False)
    goals_by_id: dict[str, Goal] = field(default_factory=dict, compare=False)
    questions_by_id: dict[str, Question] = field(default_factory=dict, compare=False)
    metrics_by_id: dict[str, MetricSpec] = field(default_factory=dict, compare=False)
    kis_by_goal_id: dict[str, tuple[KeyIndicator, ...]] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        self.levels_by_ordinal.update({lv.ordinal: lv for lv in self.levels})
        self.domains_by_id.update({d.id: d for d in self.domains})
        self.kis_by_id.update({k.id: k for k in self.key_indicators})
        self.goals_by_id.update({g.id: g for g in self.goals})
        self.questions_by_id.update({q.id: q for q in self.questions})
        self.metrics_by_id.update({m.id: m for m in self.metrics})
        owners: dict[str, list[KeyIndicator]] = {}
        for ki in self.key_indicators:
            for gid in ki.goal_ids:
                owners.setdefault(gid, []).append(ki)
        self.kis_by_goal_id.update({gid: tuple(kis) for gid, kis in owners.items()})

    def questions_of_goal(self, goal_id: str) -> tuple[Question, ...]:
        goal = self.goals_by_id[goal_id]
        return tuple(self.questions_by_id[qid] for qid in goal.question_ids)

    def metrics_of_goal(self, goal_id: str) -> tuple[MetricSpec, ...]:
        goal = self.goals_by_id[goal_id]
        return tuple(self.metrics_by_id[mid] for mid in goal.metric_ids)

    def ki_is_detail_pending(self, ki: KeyIndicator) -> bool:
        """True when the indicator carries no measurable content at all."""
        if ki.goals_pending or not ki.goal_ids:
            return True
        return all(self.goals_by_id[gid].detail_pending for gid in ki.goal_ids)

    def detail_frontier(self) -> int:
        """Highest level ordinal with at least one detail-complete indicator; 0 if none."""
        frontier = 0
        for ki in self.key_indicators:
            if not self.ki_is_detail_pending(ki):
                frontier = max(frontier, ki.level)
        return frontier


# ---------------------------------------------------------------------------
# Parsing


def _require(mapping, key, path, expected=None):
    if not isinstance(mapping, dict) or key not in mapping:
        raise ParseError(f"missing key '{key}' at {path}")
    value = mapping[key]
    if expected is not None and not isinstance(value, expected):
        raise ParseError(f"key '{key}' at {path} has wrong type")
    return value


def _enum(cls, raw, path):
    try:
        return cls(raw)
    except ValueError:
        raise ParseError(f"invalid value {raw!r} at {path}; expected one of "
                         f"{[m.value for m in cls]}") from None


def _str_tuple(raw, path) -> tuple[str, ...]:
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise ParseError(f"expected a list of strings at {path}")
    return tuple(raw)


def _parse_template(raw, path) -> GqmTemplate:
    return GqmTemplate(
        analyze=_require(raw, "analyze", path, str),
        purpose=_enum(Purpose, _require(raw, "purpose", path, str), f"{path}.purpose"),
        quality_focus=_require(raw, "qualityFocus", path, str),
        viewpoint=_require(raw, "viewpoint", path, str),
        context=_require(raw, "context", path, str),
    )


def _parse_formula(raw, path) -> MetricExpr:
    kind = _enum(ExprKind, _require(raw, "kind", path, str), f"{path}.kind")
    if kind in (ExprKind.BOOLEAN_OF, ExprKind.COUNT_OF):
        return MetricExpr(kind=kind, question_id=_require(raw, "questionId", path, str))
    if kind is ExprKind.RATIO_PERCENT:
        return MetricExpr(
            kind=kind,
            numerator_question_id=_require(raw, "numeratorQuestionId", path, str),
            denominator_question_id=_require(raw, "denominatorQuestionId", path, str),
        )
    return MetricExpr(kind=kind, question_ids=_str_tuple(_require(raw, "questionIds", path, list), path))


def _parse_target(raw, path) -> TargetSpec:
    threshold = raw.get("defaultThreshold")
    if threshold is not None and not isinstance(threshold, (int, float)):
        raise ParseError(f"defaultThreshold at {path} must be a number or null")
    unit = raw.get("unit")
    return TargetSpec(
        mode=_enum(TargetMode, _require(raw, "mode", path, str), f"{path}.mode"),
        default_threshold=None if threshold is None else float(threshold),
        threshold_required=bool(raw.get("thresholdRequired", False)),
        unit=None if unit is None else _enum(TargetUnit, unit, f"{path}.unit"),
    )


def parse_catalog_document(doc: dict) -> Catalog:
    """Build a typed Catalog from a decoded JSON document (no validation)."""
    if not isinstance(doc, dict):
        raise ParseError("catalog document must be a JSON object")
    levels = tuple(
        MaturityLevel(
            ordinal=_require(raw, "ordinal", f"levels[{i}]", int),
            name=_require(raw, "name", f"levels[{i}]", str),
            synopsis=_require(raw, "synopsis", f"levels[{i}]", str),
        )
        for i, raw in enumerate(_require(doc, "levels", "$", list))
    )
    domains = tuple(
        SecurityDomain(
            id=_require(raw, "id", f"domains[{i}]", str),
            name=_require(raw, "name", f"domains[{i}]", str),
            related_soa_elements=_str_tuple(_require(raw, "relatedSoaElements", f"domains[{i}]", list), f"domains[{i}]"),
            requirements=_str_tuple(_require(raw, "requirements", f"domains[{i}]", list), f"domains[{i}]"),
        )
        for i, raw in enumerate(_require(doc, "domains", "$", list))
    )
    kis = tuple(
        KeyIndicator(
            id=_require(raw, "id", f"keyIndicators[{i}]", str),
            name=_require(raw, "name", f"keyIndicators[{i}]", str),
            level=_require(raw, "level", f"keyIndicators[{i}]", int),
            domain=_require(raw, "domain", f"keyIndicators[{i}]", str),
            goal_ids=_str_tuple(_require(raw, "goalIds", f"keyIndicators[{i}]", list), f"keyIndicators[{i}]"),
            goals_pending=bool(raw.get("goalsPending", False)),
            related_ki_id=raw.get("relatedKiId"),
        )
        for i, raw in enumerate(_require(doc, "keyIndicators", "$", list))
    )
    goals = tuple(
        Goal(
            id=_require(raw, "id", f"goals[{i}]", str),
            name=_require(raw, "name", f"goals[{i}]", str),
            source=_enum(GoalSource, _require(raw, "source", f"goals[{i}]", str), f"goals[{i}].source"),
            objective=_require(raw, "objective", f"goals[{i}]", str),
            control_kind=_enum(ControlKind, _require(raw, "controlKind", f"goals[{i}]", str), f"goals[{i}].controlKind"),
            template=_parse_template(_require(raw, "template", f"goals[{i}]", dict), f"goals[{i}].template"),
            question_ids=_str_tuple(_require(raw, "questionIds", f"goals[{i}]", list), f"goals[{i}]"),
            metric_ids=_str_tuple(_require(raw, "metricIds", f"goals[{i}]", list), f"goals[{i}]"),
            detail_pending=bool(raw.get("detailPending", False)),
            secondary_intent=raw.get("secondaryIntent"),
        )
        for i, raw in enumerate(_require(doc, "goals", "$", list))
    )
    questions = tuple(
        Question(
            id=_require(raw, "id", f"questions[{i}]", str),
            goal_id=_require(raw, "goalId", f"questions[{i}]", str),
            prompt=_require(raw, "prompt", f"questions[{i}]", str),
            answer_kind=_enum(AnswerKind, _require(raw, "answerKind", f"questions[{i}]", str), f"questions[{i}].answerKind"),
            role=_enum(QuestionRole, _require(raw, "role", f"questions[{i}]", str), f"questions[{i}].role"),
            derived=bool(raw.get("derived", False)),
        )
        for i, raw in enumerate(_require(doc, "questions", "$", list))
    )
    metrics = tuple(
        MetricSpec(
            id=_require(raw, "id", f"metrics[{i}]", str),
            goal_id=_require(raw, "goalId", f"metrics[{i}]", str),
            name=_require(raw, "name", f"metrics[{i}]", str),
            formula=_parse_formula(_require(raw, "formula", f"metrics[{i}]", dict), f"metrics[{i}].formula"),
            target=_parse_target(_require(raw, "target", f"metrics[{i}]", dict), f"metrics[{i}].target"),
            tags=_str_tuple(raw.get("tags", []), f"metrics[{i}].tags"),
        )
        for i, raw in enumerate(_require(doc, "metrics", "$", list))
    )
    return Catalog(
        version=_require(doc, "version", "$", str),
        levels=levels,
        domains=domains,
        key_indicators=kis,
        goals=goals,
        questions=questions,
        metrics=metrics,
    )


def load_catalog(source: bytes | str) -> Catalog:
    """Parse and validate a catalog document.

    Raises ParseError for malformed documents and CatalogValidationError
    when structural validation reports any violation.
    """
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"catalog is not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    catalog = parse_catalog_document(doc)
    violations = validate_catalog(catalog)
    if violations:
        raise CatalogValidationError(violations)
    return catalog


def load_shipped_catalog() -> Catalog:
    """Load the catalog content file bundled with the package."""
    data = resources.files("secassess").joinpath("data").joinpath(SHIPPED_CATALOG_RESOURCE).read_bytes()
    return load_catalog(data)


# ---------------------------------------------------------------------------
# Serialization


def catalog_to_document(c: Catalog) -> dict:
    return {
        "version": c.version,
        "levels": [
            {"ordinal": lv.ordinal, "name": lv.name, "synopsis": lv.synopsis} for lv in c.levels
        ],
        "domains": [
            {
                "id": d.id,
                "name": d.name,
                "relatedSoaElements": list(d.related_soa_elements),
                "requirements": list(d.requirements),
            }
            for d in c.domains
        ],
        "keyIndicators": [
            {
                "id": k.id,
                "name": k.name,
                "level": k.level,
                "domain": k.domain,
                "goalIds": list(k.goal_ids),
                "goalsPending": k.goals_pending,
                "relatedKiId": k.related_ki_id,
            }
            for k in c.key_indicators
        ],
        "goals": [
            {
                "id": g.id,
                "name": g.name,
                "source": g.source.value,
                "objective": g.objective,
                "controlKind": g.control_kind.value,
                "template": {
                    "analyze": g.template.analyze,
                    "purpose": g.template.purpose.value,
                    "qualityFocus": g.template.quality_focus,
                    "viewpoint": g.template.viewpoint,
                    "context": g.template.context,
                },
                "questionIds": list(g.question_ids),
                "metricIds": list(g.metric_ids),
                "detailPending": g.detail_pending,
                "secondaryIntent": g.secondary_intent,
            }
            for g in c.goals
        ],
        "questions": [
            {
                "id": q.id,
                "goalId": q.goal_id,
                "prompt": q.prompt,
                "answerKind": q.answer_kind.value,
                "role": q.role.value,
                "derived": q.derived,
            }
            for q in c.questions
        ],
        "metrics": [
            {
                "id": m.id,
                "goalId": m.goal_id,
                "name": m.name,
                "formula": _formula_to_doc(m.formula),
                "target": {
                    "mode": m.target.mode.value,
                    "defaultThreshold": m.target.default_threshold,
                    "thresholdRequired": m.target.threshold_required,
                    "unit": m.target.unit.value if m.target.unit else None,
                },
                "tags": list(m.tags),
            }
            for m in c.metrics
        ],
    }


def _formula_to_doc(f: MetricExpr) -> dict:
    if f.kind in (ExprKind.BOOLEAN_OF, ExprKind.COUNT_OF):
        return {"kind": f.kind.value, "questionId": f.question_id}
    if f.kind is ExprKind.RATIO_PERCENT:
        return {
            "kind": f.kind.value,
            "numeratorQuestionId": f.numerator_question_id,
            "denominatorQuestionId": f.denominator_question_id,
        }
    return {"kind": f.kind.value, "questionIds": list(f.question_ids)}


def save_catalog(c: Catalog) -> bytes:
    """Serialize a catalog to its canonical on-disk form."""
    text = json.dumps(catalog_to_document(c), indent=2, ensure_ascii=False, sort_keys=True)
    return (text + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Validation


def validate_catalog(c: Catalog) -> list[Violation]:
    """Check every structural invariant; returns violations sorted by (rule, entity)."""
    out: list[Violation] = []

    def bad(rule_id: str, entity_id: str, message: str):
        out.append(Violation(rule_id, entity_id, message))

    # Unique ids across every entity kind.
    seen: dict[str, str] = {}
    collections = [
        ("domain", [d.id for d in c.domains]),
        ("keyIndicator", [k.id for k in c.key_indicators]),
        ("goal", [g.id for g in c.goals]),
        ("question", [q.id for q in c.questions]),
        ("metric", [m.id for m in c.metrics]),
    ]
    for kind, ids in collections:
        for entity_id in ids:
            if entity_id in seen:
                bad("duplicate-id", entity_id, f"duplicate id {entity_id} ({seen[entity_id]} vs {kind})")
            else:
                seen[entity_id] = kind

    # Level ordinals: each in range, set exactly {1..5} with no repeats.
    ordinals = [lv.ordinal for lv in c.levels]
    for lv in c.levels:
        if not MIN_LEVEL <= lv.ordinal <= MAX_LEVEL:
            bad("level-range", str(lv.ordinal), f"level ordinal {lv.ordinal} outside {MIN_LEVEL}..{MAX_LEVEL}")
    if sorted(ordinals) != list(range(MIN_LEVEL, MAX_LEVEL + 1)):
        bad("level-set", "levels", f"level ordinals must be exactly {MIN_LEVEL}..{MAX_LEVEL} once each, got {sorted(ordinals)}")

    # Key indicator references and goal ownership.
    for ki in c.key_indicators:
        if ki.level not in c.levels_by_ordinal:
            bad("unresolved-reference", ki.id, f"unresolved level {ki.level}")
        if ki.domain not in c.domains_by_id:
            bad("unresolved-reference", ki.id, f"unresolved reference {ki.domain}")
        for gid in ki.goal_ids:
            if gid not in c.goals_by_id:
                bad("unresolved-reference", ki.id, f"unresolved reference {gid}")
        if not ki.goal_ids and not ki.goals_pending:
            bad("ki-goals", ki.id, "key indicator has no goals and is not flagged goalsPending")
        if ki.related_ki_id is not None and ki.related_ki_id not in c.kis_by_id:
            bad("unresolved-reference", ki.id, f"unresolved reference {ki.related_ki_id}")

    # Goals: template consistency, link integrity.
    for g in c.goals:
        expected = TEMPLATE_COLUMNS[classify_control(g.control_kind)]
        actual = (g.template.purpose, g.template.quality_focus, g.template.viewpoint)
        if actual != expected:
            bad("template-mismatch", g.id,
                f"template {tuple(str(x) for x in actual)} does not match the "
                f"{classify_control(g.control_kind).value} column for {g.control_kind.value}")
        if g.template.analyze != g.name:
            bad("template-mismatch", g.id, "template analyze field differs from goal name")
        if not g.template.context.strip():
            bad("template-context", g.id, "template context is empty")
        owners = c.kis_by_goal_id.get(g.id, ())
        if not owners:
            bad("orphan-goal", g.id, "goal not referenced by any key indicator")
        elif len(owners) == 1:
            ki = owners[0]
            level = c.levels_by_ordinal.get(ki.level)
            domain = c.domains_by_id.get(ki.domain)
            if level and domain and g.template.context != template_context(level, domain):
                bad("template-context", g.id,
                    f"context {g.template.context!r} does not name the owning indicator's level and domain")
        for qid in g.question_ids:
            q = c.questions_by_id.get(qid)
            if q is None:
                bad("unresolved-reference", g.id, f"unresolved reference {qid}")
            elif q.goal_id != g.id:
                bad("goal-question-link", g.id, f"question {qid} belongs to goal {q.goal_id}")
        for mid in g.metric_ids:
            m = c.metrics_by_id.get(mid)
            if m is None:
                bad("unresolved-reference", g.id, f"unresolved reference {mid}")
            elif m.goal_id != g.id:
                bad("goal-metric-link", g.id, f"metric {mid} belongs to goal {m.goal_id}")
        if g.detail_pending and (g.question_ids or g.metric_ids):
            bad("detail-pending", g.id, "detailPending goal must not carry questions or metrics")

    # Questions: resolvable owner, bidirectional link, role/kind compatibility.
    yes_fraction_members = {qid for m in c.metrics if m.formula.kind is ExprKind.YES_FRACTION
                            for qid in m.formula.question_ids}
    for q in c.questions:
        g = c.goals_by_id.get(q.goal_id)
        if g is None:
            bad("unresolved-reference", q.id, f"unresolved reference {q.goal_id}")
        elif q.id not in g.question_ids:
            bad("orphan-question", q.id, f"goal {g.id} does not list question {q.id}")
        if q.answer_kind is AnswerKind.COUNT and q.role not in (
            QuestionRole.NUMERATOR_SOURCE, QuestionRole.DENOMINATOR_SOURCE
        ):
            bad("question-role", q.id, "count questions may only be numerator or denominator sources")
        if q.role is QuestionRole.CHECKLIST_ITEM:
            if q.answer_kind is not AnswerKind.YES_NO:
                bad("question-role", q.id, "checklist items must be yes/no questions")
            elif q.id not in yes_fraction_members:
                bad("question-role", q.id, "checklist item feeds no yes-fraction metric")

    # Metrics: formula references resolve, stay inside the goal, types line up.
    for m in c.metrics:
        g = c.goals_by_id.get(m.goal_id)
        if g is None:
            bad("unresolved-reference", m.id, f"unresolved reference {m.goal_id}")
        elif m.id not in g.metric_ids:
            bad("orphan-metric", m.id, f"goal {g.id} does not list metric {m.id}")
        refs = m.formula.referenced_questions()
        ref_questions = []
        for qid in refs:
            q = c.questions_by_id.get(qid)
            if q is None:
                bad("unresolved-reference", m.id, f"unresolved reference {qid}")
                continue
            ref_questions.append(q)
            if q.goal_id != m.goal_id:
                bad("formula-scope", m.id, f"formula references question {qid} outside goal {m.goal_id}")
        kind = m.formula.kind
        if kind is ExprKind.BOOLEAN_OF:
            if any(q.answer_kind is not AnswerKind.YES_NO for q in ref_questions):
                bad("formula-kind", m.id, "boolean-of requires a yes/no question")
        elif kind is ExprKind.COUNT_OF:
            if any(q.answer_kind is not AnswerKind.COUNT for q in ref_questions):
                bad("formula-kind", m.id, "count-of requires a count question")
        elif kind is ExprKind.RATIO_PERCENT:
            if m.formula.numerator_question_id == m.formula.denominator_question_id:
                bad("formula-kind", m.id, "ratio-percent requires two distinct questions")
            if any(q.answer_kind is not AnswerKind.COUNT for q in ref_questions):
                bad("formula-kind", m.id, "ratio-percent requires count questions")
        elif kind is ExprKind.YES_FRACTION:
            if len(m.formula.question_ids) < 2:
                bad("formula-kind", m.id, "yes-fraction requires at least two questions")
            if any(q.answer_kind is not AnswerKind.YES_NO for q in ref_questions):
                bad("formula-kind", m.id, "yes-fraction requires yes/no questions")

        # Target modes and units must match the formula shape.
        t = m.target
        if kind is ExprKind.BOOLEAN_OF:
            if t.mode is not TargetMode.BOOLEAN_TRUE:
                bad("target-mode", m.id, "boolean metrics take the boolean-true target mode")
            if t.default_threshold is not None or t.unit is not None:
                bad("target-unit", m.id, "boolean-true targets carry no threshold or unit")
        else:
            if t.mode is TargetMode.BOOLEAN_TRUE:
                bad("target-mode", m.id, "numeric metrics need a lower-better or higher-better target")
            expected_unit = TargetUnit.COUNT if kind is ExprKind.COUNT_OF else TargetUnit.PERCENT
            if t.unit is not expected_unit:
                bad("target-unit", m.id, f"target unit must be {expected_unit.value} for {kind.value}")
            if t.default_threshold is None and not t.threshold_required:
                bad("target-threshold", m.id, "numeric target needs a default threshold or thresholdRequired")

    out.sort(key=lambda v: (v.rule_id, v.entity_id))
    return out


# ---------------------------------------------------------------------------
# Interpretation chain and scope


def trace(c: Catalog, metric_id: str) -> InterpretationChain:
    """Resolve a metric's bottom-up interpretation chain."""
    metric = c.metrics_by_id.get(metric_id)
    if metric is None:
        raise UnknownIdError(f"unknown metric id {metric_id!r}")
    goal = c.goals_by_id[metric.goal_id]
    links = []
    for ki in c.kis_by_goal_id.get(goal.id, ()):
        level = c.levels_by_ordinal[ki.level]
        domain = c.domains_by_id[ki.domain]
        links.append(ChainLink(
            ki_id=ki.id, ki_name=ki.name,
            level=level.ordinal, level_name=level.name,
            domain_id=domain.id, domain_name=domain.name,
        ))
    return InterpretationChain(
        metric_id=metric.id,
        metric_name=metric.name,
        question_ids=metric.formula.referenced_questions(),
        goal_id=goal.id,
        goal_name=goal.name,
        kis=tuple(links),
    )


def chain_to_document(chain: InterpretationChain) -> dict:
    return {
        "metricId": chain.metric_id,
        "metricName": chain.metric_name,
        "questionIds": list(chain.question_ids),
        "goalId": chain.goal_id,
        "goalName": chain.goal_name,
        "keyIndicators": [
            {
                "kiId": link.ki_id,
                "kiName": link.ki_name,
                "level": link.level,
                "levelName": link.level_name,
                "domainId": link.domain_id,
                "domainName": link.domain_name,
            }
            for link in chain.kis
        ],
    }


def list_scope(c: Catalog, max_level: int) -> list[KeyIndicator]:
    """All key indicators at levels <= max_level, ordered by (level, catalog order)."""
    if not isinstance(max_level, int) or not MIN_LEVEL <= max_level <= MAX_LEVEL:
        raise RangeError(f"maxLevel must be in {MIN_LEVEL}..{MAX_LEVEL}, got {max_level}")
    in_scope = [ki for ki in c.key_indicators if ki.level <= max_level]
    in_scope.sort(key=lambda ki: (ki.level, c.key_indicators.index(ki)))
    return in_scope
