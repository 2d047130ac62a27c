// Questionnaire wizard: walks the catalog's questionnaire questions in
// (level, key indicator, goal, question) order, resumable at the first
// unanswered one. All persistence goes through PATCH; no scoring here.

import type { ApiClient } from "./api.js";
import type {
    AnswerValue,
    CatalogDoc,
    CompletenessDoc,
    QuestionDoc,
    SessionDoc,
} from "./types.js";
import { escapeAttr, escapeHtml } from "./dom.js";

export interface WizardState {
    order: QuestionDoc[];
    currentQuestionId: string | null;
    answeredCount: number;
    perKiProgress: Record<string, { answered: number; total: number }>;
    pendingAnswerDraft: AnswerValue | null;
    flaggedUnknown: string[];
}

/** Questionnaire questions (derived count questions excluded) in catalog order. */
export function questionnaireOrder(catalog: CatalogDoc): QuestionDoc[] {
    const questionById = new Map(catalog.questions.map((q) => [q.id, q]));
    const goalById = new Map(catalog.goals.map((g) => [g.id, g]));
    const ordered: QuestionDoc[] = [];
    const indicators = [...catalog.keyIndicators].sort((a, b) => a.level - b.level);
    for (const ki of indicators) {
        for (const goalId of ki.goalIds) {
            const goal = goalById.get(goalId);
            if (!goal) continue;
            for (const questionId of goal.questionIds) {
                const question = questionById.get(questionId);
                if (question && !question.derived) ordered.push(question);
            }
        }
    }
    return ordered;
}

export function firstUnanswered(
    order: QuestionDoc[],
    answers: SessionDoc["answers"],
): string | null {
    for (const question of order) {
        if (!(question.id in answers)) return question.id;
    }
    return null;
}

export function initWizard(
    catalog: CatalogDoc,
    session: SessionDoc,
    completeness: CompletenessDoc,
): WizardState {
    const order = questionnaireOrder(catalog);
    return {
        order,
        currentQuestionId: firstUnanswered(order, session.answers),
        answeredCount: order.filter((q) => q.id in session.answers).length,
        perKiProgress: completeness.perKi,
        pendingAnswerDraft: null,
        flaggedUnknown: order
            .filter((q) => session.answers[q.id]?.value === "Unknown")
            .map((q) => q.id),
    };
}

/** Client-side gate for the count field: non-negative integers only. */
export function validateCountInput(raw: string): number | null {
    if (!/^\d+$/.test(raw.trim())) return null;
    return Number(raw.trim());
}

/**
 * Record the answer for the current question and advance to the next
 * unanswered one. Refreshes session and completeness from the API.
 */
export async function wizardNext(
    api: ApiClient,
    sessionId: string,
    state: WizardState,
    answer: AnswerValue,
): Promise<WizardState> {
    if (state.currentQuestionId === null) return state;
    const questionId = state.currentQuestionId;
    const session = await api.patchAnswers(sessionId, { [questionId]: answer });
    const completeness = await api.getCompleteness(sessionId);
    const flagged = new Set(state.flaggedUnknown);
    if (answer === "Unknown") flagged.add(questionId);
    else flagged.delete(questionId);
    return {
        order: state.order,
        currentQuestionId: firstUnanswered(state.order, session.answers),
        answeredCount: state.order.filter((q) => q.id in session.answers).length,
        perKiProgress: completeness.perKi,
        pendingAnswerDraft: null,
        flaggedUnknown: [...flagged],
    };
}

const YES_NO_BUTTONS: AnswerValue[] = ["Yes", "No", "Unknown", "NotApplicable"];

export function renderQuestionCard(catalog: CatalogDoc, state: WizardState): string {
    if (state.currentQuestionId === null) {
        return `<div class="wizard-done" data-done="true">
  <p>All ${state.order.length} questions answered.</p>
  <p>Open the dashboard to see the assessment.</p>
</div>`;
    }
    const question = state.order.find((q) => q.id === state.currentQuestionId)!;
    const goal = catalog.goals.find((g) => g.id === question.goalId)!;
    const ki = catalog.keyIndicators.find((k) => k.goalIds.includes(goal.id))!;
    const step = state.order.indexOf(question) + 1;
    const input =
        question.answerKind === "yes-no"
            ? YES_NO_BUTTONS.map(
                  (value) =>
                      `<button class="answer-btn" data-answer="${escapeAttr(String(value))}">${escapeHtml(String(value))}</button>`,
              ).join("\n    ")
            : `<input type="number" min="0" step="1" id="count-input" class="count-input">
    <button class="answer-btn" data-answer="count">Record</button>`;
    return `<div class="wizard-card" data-question-id="${escapeAttr(question.id)}">
  <div class="wizard-progress">Question ${step} of ${state.order.length}</div>
  <div class="wizard-context">Level ${ki.level} &middot; ${escapeHtml(ki.name)} &middot; ${escapeHtml(goal.name)}</div>
  <p class="wizard-prompt">${escapeHtml(question.prompt)}</p>
  <div class="wizard-answers">
    ${input}
  </div>
  <textarea id="evidence-note" placeholder="Evidence note (optional)"></textarea>
</div>`;
}
