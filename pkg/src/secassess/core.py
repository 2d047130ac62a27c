"""GQM vocabulary: maturity levels, security domains, key indicators, goals,
and the two structural mappings (control type -> measurement object ->
template column).

Everything here is immutable and content-free: the shipped table data lives
in the catalog module's data file.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class ControlKind(str, Enum):
    """ISO-style category of a security control."""

    POLICY_OR_PROCEDURE = "policy-or-procedure"
    PROCESS = "process"
    ORGANIZATIONAL_OR_TECHNICAL_RESOURCE = "organizational-or-technical-resource"


class MeasurementObject(str, Enum):
    """What a GQM goal measures."""

    PRODUCT = "product"
    PROCESS = "process"
    RESOURCE = "resource"


class Purpose(str, Enum):
    # "understanding" is unused by the shipped catalog but kept for future ones.
    IMPROVING = "improving"
    CONTROLLING = "controlling"
    UNDERSTANDING = "understanding"


class GoalSource(str, Enum):
    ISO27002 = "iso27002"
    LITERATURE = "literature"


# Control type -> measurement object. Total and injective on the three kinds.
CONTROL_KIND_TO_OBJECT: dict[ControlKind, MeasurementObject] = {
    ControlKind.POLICY_OR_PROCEDURE: MeasurementObject.PRODUCT,
    ControlKind.PROCESS: MeasurementObject.PROCESS,
    ControlKind.ORGANIZATIONAL_OR_TECHNICAL_RESOURCE: MeasurementObject.RESOURCE,
}

# Template column per measurement object: (purpose, quality focus, viewpoint).
TEMPLATE_COLUMNS: dict[MeasurementObject, tuple[Purpose, str, str]] = {
    MeasurementObject.PROCESS: (Purpose.IMPROVING, "Security capability", "Process owner"),
    MeasurementObject.RESOURCE: (Purpose.CONTROLLING, "Effectiveness", "Security Administrator"),
    MeasurementObject.PRODUCT: (Purpose.CONTROLLING, "Alignment & Consistency", "Business owner"),
}

MIN_LEVEL = 1
MAX_LEVEL = 5


@dataclass(frozen=True)
class MaturityLevel:
    ordinal: int
    name: str
    synopsis: str


@dataclass(frozen=True)
class SecurityDomain:
    id: str
    name: str
    related_soa_elements: tuple[str, ...]
    requirements: tuple[str, ...]


@dataclass(frozen=True)
class KeyIndicator:
    """A security capability criterion attached to one level and one domain."""

    id: str
    name: str
    level: int
    domain: str
    goal_ids: tuple[str, ...]
    # True for indicators the source material names without attaching goals.
    goals_pending: bool = False
    # Cross-reference to a near-duplicate indicator, when one exists.
    related_ki_id: str | None = None


@dataclass(frozen=True)
class GqmTemplate:
    analyze: str
    purpose: Purpose
    quality_focus: str
    viewpoint: str
    context: str


@dataclass(frozen=True)
class Goal:
    """A security control wrapped in a GQM template instance."""

    id: str
    name: str
    source: GoalSource
    objective: str
    control_kind: ControlKind
    template: GqmTemplate
    question_ids: tuple[str, ...] = ()
    metric_ids: tuple[str, ...] = ()
    # True for goals shipped without questions/metrics; scored Indeterminate.
    detail_pending: bool = False
    # Secondary measurement intent when the goal names two ("alignment", "control").
    secondary_intent: str | None = None


def classify_control(kind: ControlKind) -> MeasurementObject:
    """Map a control kind to its GQM measurement object."""
    return CONTROL_KIND_TO_OBJECT[ControlKind(kind)]


def template_context(level: MaturityLevel, domain: SecurityDomain) -> str:
    return f"level {level.name} / domain {domain.name}"


def instantiate_template(
    kind: ControlKind,
    goal_name: str,
    level: MaturityLevel,
    domain: SecurityDomain,
) -> GqmTemplate:
    """Build the measurement-goal template for a control of the given kind.

    The (purpose, quality focus, viewpoint) triple depends only on the kind;
    the goal name appears only in ``analyze``.
    """
    purpose, quality_focus, viewpoint = TEMPLATE_COLUMNS[classify_control(kind)]
    return GqmTemplate(
        analyze=goal_name,
        purpose=purpose,
        quality_focus=quality_focus,
        viewpoint=viewpoint,
        context=template_context(level, domain),
    )
