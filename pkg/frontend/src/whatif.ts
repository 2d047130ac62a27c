// What-if panel: substitute answers, preview via POST /whatif, never PATCH.
// Closing the panel drops the overlay; the stored session is untouched.

import type { ApiClient } from "./api.js";
import type { AnswerValue, EvaluationDoc, MetricRowDoc } from "./types.js";
import { escapeAttr, escapeHtml } from "./dom.js";

export interface WhatIfState {
    open: boolean;
    overlay: Record<string, AnswerValue>;
    result: EvaluationDoc | null;
}

export function openPanel(): WhatIfState {
    return { open: true, overlay: {}, result: null };
}

export function setOverlayEdit(state: WhatIfState, questionId: string, value: AnswerValue): WhatIfState {
    return { ...state, overlay: { ...state.overlay, [questionId]: value } };
}

export function clearOverlayEdit(state: WhatIfState, questionId: string): WhatIfState {
    const overlay = { ...state.overlay };
    delete overlay[questionId];
    return { ...state, overlay };
}

/** Preview the overlay through the non-persisting endpoint. */
export async function applyWhatIf(
    api: ApiClient,
    sessionId: string,
    state: WhatIfState,
): Promise<WhatIfState> {
    const result = await api.whatIf(sessionId, state.overlay);
    return { ...state, result };
}

/** Closing restores the baseline view without any network write. */
export function closePanel(): WhatIfState {
    return { open: false, overlay: {}, result: null };
}

function metricRows(evaluation: EvaluationDoc): Map<string, MetricRowDoc> {
    const rows = new Map<string, MetricRowDoc>();
    for (const section of evaluation.sections) {
        for (const ki of section.keyIndicators) {
            for (const goal of ki.goals) {
                for (const metric of goal.metrics) {
                    rows.set(metric.metricId, metric);
                }
            }
        }
    }
    return rows;
}

/** Baseline and overlay values side by side; deltas marked on changed rows. */
export function renderComparison(baseline: EvaluationDoc, overlay: EvaluationDoc): string {
    const base = metricRows(baseline);
    const next = metricRows(overlay);
    const rows: string[] = [];
    for (const [metricId, baseRow] of base) {
        const nextRow = next.get(metricId);
        if (!nextRow) continue;
        const changed = baseRow.display !== nextRow.display || baseRow.status !== nextRow.status;
        rows.push(`<tr class="${changed ? "changed" : "same"}" data-metric-id="${escapeAttr(metricId)}" data-baseline="${escapeAttr(baseRow.display)}" data-overlay="${escapeAttr(nextRow.display)}">
  <td>${escapeHtml(baseRow.name)}</td>
  <td>${escapeHtml(baseRow.display)} <span class="status">${escapeHtml(baseRow.status)}</span></td>
  <td>${escapeHtml(nextRow.display)} <span class="status">${escapeHtml(nextRow.status)}</span></td>
</tr>`);
    }
    return `<table class="whatif-table" data-baseline-attained="${baseline.summary.attainedLevel}" data-overlay-attained="${overlay.summary.attainedLevel}">
  <thead><tr><th>Metric</th><th>Baseline</th><th>What-if</th></tr></thead>
  <tbody>
${rows.join("\n")}
  </tbody>
</table>`;
}
