// Payload types mirroring the HTTP API documents. The console renders these
// verbatim and never derives scores of its own.

export type AnswerValue = "Yes" | "No" | "Unknown" | "NotApplicable" | number;

export interface AnswerDoc {
    value: AnswerValue;
    evidenceNote: string | null;
}

export interface MaturityLevelDoc {
    ordinal: number;
    name: string;
    synopsis: string;
}

export interface SecurityDomainDoc {
    id: string;
    name: string;
    relatedSoaElements: string[];
    requirements: string[];
}

export interface KeyIndicatorDoc {
    id: string;
    name: string;
    level: number;
    domain: string;
    goalIds: string[];
    goalsPending: boolean;
    relatedKiId: string | null;
}

export interface TemplateDoc {
    analyze: string;
    purpose: string;
    qualityFocus: string;
    viewpoint: string;
    context: string;
}

export interface GoalDoc {
    id: string;
    name: string;
    source: string;
    objective: string;
    controlKind: string;
    template: TemplateDoc;
    questionIds: string[];
    metricIds: string[];
    detailPending: boolean;
    secondaryIntent: string | null;
}

export interface QuestionDoc {
    id: string;
    goalId: string;
    prompt: string;
    answerKind: "yes-no" | "count";
    role: string;
    derived: boolean;
}

export interface CatalogDoc {
    version: string;
    levels: MaturityLevelDoc[];
    domains: SecurityDomainDoc[];
    keyIndicators: KeyIndicatorDoc[];
    goals: GoalDoc[];
    questions: QuestionDoc[];
    metrics: unknown[];
}

export interface SessionDoc {
    id: string;
    catalogVersion: string;
    label: string;
    answers: Record<string, AnswerDoc>;
    createdAt: string;
    updatedAt: string;
}

export interface SessionSummaryDoc {
    id: string;
    label: string;
    catalogVersion: string;
    createdAt: string;
    updatedAt: string;
    answeredCount: number;
}

export interface CompletenessDoc {
    perKi: Record<string, { answered: number; total: number }>;
    overall: number;
}

export interface ChainLinkDoc {
    kiId: string;
    kiName: string;
    level: number;
    levelName: string;
    domainId: string;
    domainName: string;
}

export interface ChainDoc {
    metricId: string;
    metricName: string;
    questionIds: string[];
    goalId: string;
    goalName: string;
    keyIndicators: ChainLinkDoc[];
}

export interface MetricRowDoc {
    metricId: string;
    name: string;
    value: { kind: string; value: boolean | number | null; reason?: string };
    display: string;
    target: { mode: string; unit: string | null; threshold: number | null; thresholdSource: string | null };
    status: "met" | "unmet" | "indeterminate";
    chain: ChainDoc;
}

export interface GoalBlockDoc {
    goalId: string;
    name: string;
    status: string;
    score: number | null;
    detailPending: boolean;
    metrics: MetricRowDoc[];
}

export interface KiBlockDoc {
    kiId: string;
    name: string;
    domain: string;
    status: string;
    score: number | null;
    detailPending: boolean;
    goals: GoalBlockDoc[];
}

export interface LevelSectionDoc {
    level: number;
    name: string;
    score: number | null;
    measurable: boolean;
    satisfied: boolean;
    attained: boolean;
    keyIndicators: KiBlockDoc[];
}

export interface EvaluationDoc {
    summary: {
        attainedLevel: number;
        levels: { level: number; name: string; score: number | null; attained: boolean }[];
    };
    sections: LevelSectionDoc[];
    warnings: { code: string; metricId: string | null; message: string }[];
}

export interface GapItemDoc {
    kind: string;
    level: number;
    kiId: string;
    kiName: string;
    goalId: string | null;
    goalName: string | null;
    metricId: string | null;
    metricName: string | null;
    detail: string;
    chain: ChainDoc | null;
}

export interface GapDoc {
    catalogVersion: string;
    profileDigest: string;
    targetLevel: number;
    attainedLevel: number;
    empty: boolean;
    items: GapItemDoc[];
}

export interface ApiErrorDoc {
    httpStatus: number;
    code: string;
    message: string;
    details: unknown;
}
