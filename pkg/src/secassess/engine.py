"""Pure evaluation core.

Computes metric values from assessor answers, checks them against targets,
aggregates bottom-up into goal / key-indicator / level scores, determines
staged maturity attainment, and produces gap and what-if results. Everything
here is deterministic and side-effect free.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum

from .catalog import (
    AnswerKind,
    Catalog,
    ExprKind,
    MetricSpec,
    TargetMode,
    chain_to_document,
    trace,
)
from .core import MAX_LEVEL, MIN_LEVEL
from .errors import (
    MissingThresholdError,
    RangeError,
    TypeMismatchError,
    UnknownQuestionError,
)

YES = "Yes"
NO = "No"
UNKNOWN = "Unknown"
NOT_APPLICABLE = "NotApplicable"
YES_NO_VALUES = (YES, NO, UNKNOWN, NOT_APPLICABLE)


@dataclass(frozen=True)
class Answer:
    """One assessor response: a yes/no-style marker or a non-negative count."""

    value: str | int
    evidence_note: str | None = None

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, (str, int)):
            raise TypeMismatchError(f"answer value must be {'/'.join(YES_NO_VALUES)} or a count, got {self.value!r}")
        if isinstance(self.value, int) and self.value < 0:
            raise TypeMismatchError(f"count answers must be non-negative, got {self.value}")
        if isinstance(self.value, str) and self.value not in YES_NO_VALUES:
            raise TypeMismatchError(f"unknown answer marker {self.value!r}")

    @property
    def is_count(self) -> bool:
        return isinstance(self.value, int)

    @staticmethod
    def parse(raw, question_id: str = "?") -> "Answer":
        """Parse the wire form: a bare value or {"value": ..., "evidenceNote": ...}."""
        note = None
        if isinstance(raw, dict):
            if "value" not in raw:
                raise TypeMismatchError(f"answer object for {question_id} lacks a 'value' key")
            note = raw.get("evidenceNote")
            raw = raw["value"]
        if isinstance(raw, bool):
            raise TypeMismatchError(f"answer for {question_id} must be {'/'.join(YES_NO_VALUES)} or a count")
        if isinstance(raw, float) and raw.is_integer():
            raw = int(raw)
        return Answer(value=raw, evidence_note=note)

    def to_document(self) -> dict:
        return {"value": self.value, "evidenceNote": self.evidence_note}


@dataclass(frozen=True)
class AnswerSet:
    """Immutable map of question id -> Answer."""

    entries: dict[str, Answer] = field(default_factory=dict)

    def get(self, question_id: str) -> Answer | None:
        return self.entries.get(question_id)

    def __len__(self) -> int:
        return len(self.entries)

    @staticmethod
    def from_mapping(catalog: Catalog, raw: dict) -> "AnswerSet":
        """Build a type-checked answer set from wire-form values."""
        entries = {}
        for question_id, value in raw.items():
            answer = Answer.parse(value, question_id)
            check_answer(catalog, question_id, answer)
            entries[question_id] = answer
        return AnswerSet(entries)

    def to_document(self) -> dict:
        return {qid: a.to_document() for qid, a in sorted(self.entries.items())}


def check_answer(catalog: Catalog, question_id: str, answer: Answer) -> None:
    """Raise unless the answer exists in the catalog and matches its kind."""
    question = catalog.questions_by_id.get(question_id)
    if question is None:
        raise UnknownQuestionError(f"unknown question id {question_id!r}")
    if question.answer_kind is AnswerKind.COUNT and not answer.is_count:
        raise TypeMismatchError(f"question {question_id} takes a count, got {answer.value!r}")
    if question.answer_kind is AnswerKind.YES_NO and answer.is_count:
        raise TypeMismatchError(f"question {question_id} takes {'/'.join(YES_NO_VALUES)}, got a count")


def apply_whatif(catalog: Catalog, base: AnswerSet, overlay: AnswerSet) -> AnswerSet:
    """Return base with overlay entries substituted; base is unchanged."""
    for question_id, answer in overlay.entries.items():
        check_answer(catalog, question_id, answer)
    merged = dict(base.entries)
    merged.update(overlay.entries)
    return AnswerSet(merged)


# ---------------------------------------------------------------------------
# Metric values and targets


class NotComputableReason(str, Enum):
    MISSING_ANSWER = "missing-answer"
    ZERO_DENOMINATOR = "zero-denominator"
    NOT_APPLICABLE = "not-applicable"
    DETAIL_PENDING = "detail-pending"


class ValueKind(str, Enum):
    BOOL = "bool"
    COUNT = "count"
    PERCENT = "percent"
    FRACTION = "fraction"
    NOT_COMPUTABLE = "not-computable"


@dataclass(frozen=True)
class MetricValue:
    kind: ValueKind
    value: bool | int | float | None = None
    reason: NotComputableReason | None = None

    @staticmethod
    def boolean(flag: bool) -> "MetricValue":
        return MetricValue(ValueKind.BOOL, bool(flag))

    @staticmethod
    def count(n: int) -> "MetricValue":
        return MetricValue(ValueKind.COUNT, n)

    @staticmethod
    def percent(p: float) -> "MetricValue":
        return MetricValue(ValueKind.PERCENT, p)

    @staticmethod
    def fraction(f: float) -> "MetricValue":
        return MetricValue(ValueKind.FRACTION, f)

    @staticmethod
    def not_computable(reason: NotComputableReason) -> "MetricValue":
        return MetricValue(ValueKind.NOT_COMPUTABLE, None, reason)

    @property
    def computable(self) -> bool:
        return self.kind is not ValueKind.NOT_COMPUTABLE

    def to_document(self) -> dict:
        doc = {"kind": self.kind.value, "value": self.value}
        if self.reason is not None:
            doc["reason"] = self.reason.value
        return doc


class TargetStatus(str, Enum):
    MET = "met"
    UNMET = "unmet"
    INDETERMINATE = "indeterminate"


class GoalStatus(str, Enum):
    ACHIEVED = "achieved"
    NOT_ACHIEVED = "not-achieved"
    INDETERMINATE = "indeterminate"


class AttainmentModel(str, Enum):
    STAGED = "staged"


@dataclass(frozen=True)
class AssessmentProfile:
    """Organization-defined knobs: thresholds, weights, attainment cut-offs."""

    thresholds: dict[str, float] = field(default_factory=dict)
    metric_weights: dict[str, float] = field(default_factory=dict)
    goal_attainment_threshold: float = 1.0
    level_attainment_threshold: float = 0.8
    attainment_model: AttainmentModel = AttainmentModel.STAGED

    def __post_init__(self):
        if not 0 < self.goal_attainment_threshold <= 1:
            raise ValueError("goalAttainmentThreshold must be in (0, 1]")
        if not 0 < self.level_attainment_threshold <= 1:
            raise ValueError("levelAttainmentThreshold must be in (0, 1]")
        for metric_id, weight in self.metric_weights.items():
            if weight <= 0:
                raise ValueError(f"metric weight for {metric_id} must be positive")

    def weight(self, metric_id: str) -> float:
        return float(self.metric_weights.get(metric_id, 1.0))

    @staticmethod
    def from_document(doc: dict | None) -> "AssessmentProfile":
        doc = doc or {}
        return AssessmentProfile(
            thresholds={k: float(v) for k, v in doc.get("thresholds", {}).items()},
            metric_weights={k: float(v) for k, v in doc.get("metricWeights", {}).items()},
            goal_attainment_threshold=float(doc.get("goalAttainmentThreshold", 1.0)),
            level_attainment_threshold=float(doc.get("levelAttainmentThreshold", 0.8)),
            attainment_model=AttainmentModel(doc.get("attainmentModel", "staged")),
        )

    def to_document(self) -> dict:
        return {
            "thresholds": dict(sorted(self.thresholds.items())),
            "metricWeights": dict(sorted(self.metric_weights.items())),
            "goalAttainmentThreshold": self.goal_attainment_threshold,
            "levelAttainmentThreshold": self.level_attainment_threshold,
            "attainmentModel": self.attainment_model.value,
        }

    def digest(self) -> str:
        payload = json.dumps(self.to_document(), sort_keys=True).encode("utf-8")
        return hashlib.sha256(payload).hexdigest()[:12]


DEFAULT_PROFILE = AssessmentProfile()


# ---------------------------------------------------------------------------
# Metric evaluation


def evaluate_metric(catalog: Catalog, spec: MetricSpec, answers: AnswerSet) -> MetricValue:
    """Compute one metric; every failure mode is a NotComputable value."""
    formula = spec.formula
    if formula.kind is ExprKind.BOOLEAN_OF:
        answer = answers.get(formula.question_id)
        if answer is None or answer.value == UNKNOWN:
            return MetricValue.not_computable(NotComputableReason.MISSING_ANSWER)
        if answer.value == NOT_APPLICABLE:
            return MetricValue.not_computable(NotComputableReason.NOT_APPLICABLE)
        return MetricValue.boolean(answer.value == YES)

    if formula.kind is ExprKind.COUNT_OF:
        answer = answers.get(formula.question_id)
        if answer is None or not answer.is_count:
            return MetricValue.not_computable(NotComputableReason.MISSING_ANSWER)
        return MetricValue.count(int(answer.value))

    if formula.kind is ExprKind.RATIO_PERCENT:
        numerator = answers.get(formula.numerator_question_id)
        denominator = answers.get(formula.denominator_question_id)
        if (numerator is None or not numerator.is_count
                or denominator is None or not denominator.is_count):
            return MetricValue.not_computable(NotComputableReason.MISSING_ANSWER)
        if denominator.value == 0:
            return MetricValue.not_computable(NotComputableReason.ZERO_DENOMINATOR)
        return MetricValue.percent(100.0 * numerator.value / denominator.value)

    # yes-fraction: every item must be answered; NotApplicable items drop out
    # of both sides; Unknown or missing makes the metric not computable.
    yes = no = 0
    for question_id in formula.question_ids:
        answer = answers.get(question_id)
        if answer is None or answer.value == UNKNOWN or answer.is_count:
            return MetricValue.not_computable(NotComputableReason.MISSING_ANSWER)
        if answer.value == NOT_APPLICABLE:
            continue
        if answer.value == YES:
            yes += 1
        else:
            no += 1
    if yes + no == 0:
        return MetricValue.not_computable(NotComputableReason.NOT_APPLICABLE)
    return MetricValue.fraction(yes / (yes + no))


def resolve_threshold(spec: MetricSpec, profile: AssessmentProfile) -> float | None:
    """Profile override first, then the catalog default."""
    if spec.id in profile.thresholds:
        return float(profile.thresholds[spec.id])
    return spec.target.default_threshold


def check_target(value: MetricValue, spec: MetricSpec, profile: AssessmentProfile) -> TargetStatus:
    """Compare a metric value with its acceptance rule; inclusive bounds."""
    if not value.computable:
        return TargetStatus.INDETERMINATE
    target = spec.target
    if target.mode is TargetMode.BOOLEAN_TRUE:
        return TargetStatus.MET if value.value is True else TargetStatus.UNMET
    threshold = resolve_threshold(spec, profile)
    if threshold is None:
        raise MissingThresholdError(
            f"metric {spec.id} requires a threshold; none in profile and no catalog default")
    # Fractions are compared on the 0..100 scale.
    scalar = value.value * 100.0 if value.kind is ValueKind.FRACTION else value.value
    if target.mode is TargetMode.LOWER_BETTER:
        return TargetStatus.MET if scalar <= threshold else TargetStatus.UNMET
    return TargetStatus.MET if scalar >= threshold else TargetStatus.UNMET


# ---------------------------------------------------------------------------
# Aggregation


@dataclass(frozen=True)
class MetricResult:
    metric_id: str
    value: MetricValue
    status: TargetStatus
    threshold: float | None
    threshold_source: str | None  # "profile" | "default" | None


@dataclass(frozen=True)
class GoalResult:
    goal_id: str
    score: float | None
    status: GoalStatus
    met: int
    unmet: int
    indeterminate: int
    detail_pending: bool


@dataclass(frozen=True)
class KiResult:
    ki_id: str
    score: float | None
    status: GoalStatus
    detail_pending: bool


@dataclass(frozen=True)
class LevelResult:
    ordinal: int
    score: float | None
    measurable: bool
    # Individual result at this level (threshold met, nothing wholly unanswered).
    satisfied: bool
    # Staged flag: true iff every level up to this one is satisfied.
    attained: bool


@dataclass(frozen=True)
class Warning:
    code: str
    metric_id: str | None
    message: str


@dataclass(frozen=True)
class MaturityAssessment:
    catalog_version: str
    profile_digest: str
    per_metric: dict[str, MetricResult]
    per_goal: dict[str, GoalResult]
    per_ki: dict[str, KiResult]
    per_level: dict[int, LevelResult]
    attained_level: int
    warnings: tuple[Warning, ...]


def score_goal(
    catalog: Catalog,
    goal_id: str,
    metric_statuses: dict[str, TargetStatus],
    profile: AssessmentProfile,
) -> GoalResult:
    """Weighted Met fraction over computed metrics; Indeterminate ones are
    excluded from the ratio but block Achieved status."""
    goal = catalog.goals_by_id[goal_id]
    if goal.detail_pending or not goal.metric_ids:
        return GoalResult(goal_id, None, GoalStatus.INDETERMINATE, 0, 0, 0, True)
    met = unmet = indeterminate = 0
    met_weight = computed_weight = 0.0
    for metric_id in goal.metric_ids:
        status = metric_statuses[metric_id]
        weight = profile.weight(metric_id)
        if status is TargetStatus.INDETERMINATE:
            indeterminate += 1
            continue
        computed_weight += weight
        if status is TargetStatus.MET:
            met += 1
            met_weight += weight
        else:
            unmet += 1
    if computed_weight == 0:
        return GoalResult(goal_id, None, GoalStatus.INDETERMINATE, met, unmet, indeterminate, False)
    score = met_weight / computed_weight
    if score >= profile.goal_attainment_threshold and indeterminate == 0:
        status = GoalStatus.ACHIEVED
    else:
        status = GoalStatus.NOT_ACHIEVED
    return GoalResult(goal_id, score, status, met, unmet, indeterminate, False)


def _score_ki(
    catalog: Catalog,
    ki_id: str,
    metric_statuses: dict[str, TargetStatus],
    goal_results: dict[str, GoalResult],
    profile: AssessmentProfile,
) -> KiResult:
    """Metric-weighted mean of the indicator's goal scores: the weighted Met
    fraction over every computed metric owned by its goals."""
    ki = catalog.kis_by_id[ki_id]
    if catalog.ki_is_detail_pending(ki):
        return KiResult(ki_id, None, GoalStatus.INDETERMINATE, True)
    met_weight = computed_weight = 0.0
    any_indeterminate = False
    for goal_id in ki.goal_ids:
        goal = catalog.goals_by_id[goal_id]
        if goal.detail_pending:
            continue
        result = goal_results[goal_id]
        if result.status is GoalStatus.INDETERMINATE or result.indeterminate:
            any_indeterminate = True
        for metric_id in goal.metric_ids:
            status = metric_statuses[metric_id]
            if status is TargetStatus.INDETERMINATE:
                continue
            weight = profile.weight(metric_id)
            computed_weight += weight
            if status is TargetStatus.MET:
                met_weight += weight
    if computed_weight == 0:
        return KiResult(ki_id, None, GoalStatus.INDETERMINATE, False)
    score = met_weight / computed_weight
    if score >= profile.goal_attainment_threshold and not any_indeterminate:
        status = GoalStatus.ACHIEVED
    else:
        status = GoalStatus.NOT_ACHIEVED
    return KiResult(ki_id, score, status, False)


def assess_maturity(
    catalog: Catalog,
    answers: AnswerSet,
    profile: AssessmentProfile = DEFAULT_PROFILE,
) -> MaturityAssessment:
    """Evaluate every metric and aggregate bottom-up. Deterministic."""
    for question_id, answer in answers.entries.items():
        check_answer(catalog, question_id, answer)

    warnings: list[Warning] = []
    per_metric: dict[str, MetricResult] = {}
    for spec in catalog.metrics:
        value = evaluate_metric(catalog, spec, answers)
        status = check_target(value, spec, profile)
        if value.kind is ValueKind.PERCENT and value.value > 100.0:
            warnings.append(Warning(
                "numerator-exceeds-denominator", spec.id,
                f"metric {spec.id} computed {value.value:.1f}%: numerator exceeds denominator"))
        threshold = None
        source = None
        if spec.target.mode is not TargetMode.BOOLEAN_TRUE:
            threshold = resolve_threshold(spec, profile)
            source = "profile" if spec.id in profile.thresholds else "default"
        per_metric[spec.id] = MetricResult(spec.id, value, status, threshold, source)

    metric_statuses = {mid: r.status for mid, r in per_metric.items()}
    per_goal = {
        g.id: score_goal(catalog, g.id, metric_statuses, profile) for g in catalog.goals
    }
    per_ki = {
        ki.id: _score_ki(catalog, ki.id, metric_statuses, per_goal, profile)
        for ki in catalog.key_indicators
    }

    per_level: dict[int, LevelResult] = {}
    chain_ok = True
    for level in sorted(lv.ordinal for lv in catalog.levels):
        kis = [ki for ki in catalog.key_indicators if ki.level == level]
        complete = [ki for ki in kis if not catalog.ki_is_detail_pending(ki)]
        measurable = bool(complete)
        scores = [per_ki[ki.id].score for ki in complete if per_ki[ki.id].score is not None]
        score = sum(scores) / len(scores) if scores else None
        if measurable:
            wholly_indeterminate = any(
                per_ki[ki.id].status is GoalStatus.INDETERMINATE for ki in complete)
            satisfied = (score is not None
                         and score >= profile.level_attainment_threshold
                         and not wholly_indeterminate)
        else:
            # A level without measurable content cannot be demonstrated.
            satisfied = False
        chain_ok = chain_ok and satisfied
        per_level[level] = LevelResult(level, score, measurable, satisfied, chain_ok)

    attained_level = max((lv for lv, r in per_level.items() if r.attained), default=0)
    return MaturityAssessment(
        catalog_version=catalog.version,
        profile_digest=profile.digest(),
        per_metric=per_metric,
        per_goal=per_goal,
        per_ki=per_ki,
        per_level=per_level,
        attained_level=attained_level,
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# Gap analysis


class GapKind(str, Enum):
    UNMET_METRIC = "unmet-metric"
    INDETERMINATE_METRIC = "indeterminate-metric"
    INDETERMINATE_GOAL = "indeterminate-goal"
    INDETERMINATE_KI = "indeterminate-ki"


@dataclass(frozen=True)
class GapItem:
    kind: GapKind
    level: int
    ki_id: str
    goal_id: str | None
    metric_id: str | None
    detail: str
    chain: dict | None


@dataclass(frozen=True)
class GapReport:
    catalog_version: str
    profile_digest: str
    target_level: int
    attained_level: int
    items: tuple[GapItem, ...]

    @property
    def empty(self) -> bool:
        return not self.items


def gap_analysis(
    catalog: Catalog,
    answers: AnswerSet,
    profile: AssessmentProfile = DEFAULT_PROFILE,
    target_level: int = MAX_LEVEL,
) -> GapReport:
    """Everything blocking the target level, ordered by (level, KI, goal, metric).

    Detail-pending content at or below the catalog's measurement frontier is
    not an assessor gap and stays silent; levels beyond the frontier have no
    measurable content at all, so their indicators are listed as indeterminate.
    Within each indicator unmet rows sort before indeterminate rows.
    """
    if not isinstance(target_level, int) or not MIN_LEVEL <= target_level <= MAX_LEVEL:
        raise RangeError(f"target level must be in {MIN_LEVEL}..{MAX_LEVEL}, got {target_level}")
    assessment = assess_maturity(catalog, answers, profile)
    frontier = catalog.detail_frontier()
    items: list[GapItem] = []
    for level in range(MIN_LEVEL, target_level + 1):
        for ki in catalog.key_indicators:
            if ki.level != level:
                continue
            if catalog.ki_is_detail_pending(ki):
                if level > frontier:
                    items.append(GapItem(
                        GapKind.INDETERMINATE_KI, level, ki.id, None, None,
                        "no measurable detail shipped for this indicator", None))
                continue
            unmet_rows: list[GapItem] = []
            indeterminate_rows: list[GapItem] = []
            for goal_id in ki.goal_ids:
                goal = catalog.goals_by_id[goal_id]
                if goal.detail_pending:
                    continue
                goal_result = assessment.per_goal[goal_id]
                if goal_result.status is GoalStatus.INDETERMINATE:
                    indeterminate_rows.append(GapItem(
                        GapKind.INDETERMINATE_GOAL, level, ki.id, goal_id, None,
                        "no metric of this goal could be computed", None))
                    continue
                for metric_id in goal.metric_ids:
                    result = assessment.per_metric[metric_id]
                    chain = chain_to_document(trace(catalog, metric_id))
                    if result.status is TargetStatus.UNMET:
                        unmet_rows.append(GapItem(
                            GapKind.UNMET_METRIC, level, ki.id, goal_id, metric_id,
                            _unmet_detail(catalog.metrics_by_id[metric_id], result), chain))
                    elif result.status is TargetStatus.INDETERMINATE:
                        indeterminate_rows.append(GapItem(
                            GapKind.INDETERMINATE_METRIC, level, ki.id, goal_id, metric_id,
                            f"not computable: {result.value.reason.value}", chain))
            items.extend(unmet_rows)
            items.extend(indeterminate_rows)
    return GapReport(
        catalog_version=catalog.version,
        profile_digest=profile.digest(),
        target_level=target_level,
        attained_level=assessment.attained_level,
        items=tuple(items),
    )


def _unmet_detail(spec: MetricSpec, result: MetricResult) -> str:
    direction = "at most" if spec.target.mode is TargetMode.LOWER_BETTER else "at least"
    if spec.target.mode is TargetMode.BOOLEAN_TRUE:
        return "expected yes, got no"
    value = result.value.value
    if result.value.kind is ValueKind.FRACTION:
        value = value * 100.0
    unit = "%" if spec.target.unit is not None and spec.target.unit.value == "percent" else ""
    return f"value {value:g}{unit} misses target ({direction} {result.threshold:g}{unit})"
