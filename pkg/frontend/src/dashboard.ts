// Dashboard rendering. Every number and status shown here is copied from the
// evaluation payload; data-* attributes carry the raw payload values so
// contract tests can assert the round trip byte for byte.

import type { CatalogDoc, EvaluationDoc, KiBlockDoc } from "./types.js";
import { escapeAttr, escapeHtml, payloadNumber } from "./dom.js";

function levelBar(level: { level: number; name: string; score: number | null; attained: boolean }): string {
    const width = level.score === null ? 0 : Math.round(level.score * 100);
    return `<div class="level-bar" data-level="${level.level}" data-score="${escapeAttr(payloadNumber(level.score))}" data-attained="${level.attained}">
  <span class="level-label">L${level.level} ${escapeHtml(level.name)}</span>
  <span class="bar"><span class="bar-fill" style="width:${width}%"></span></span>
  <span class="level-score">${payloadNumber(level.score)}</span>
</div>`;
}

function kiTile(ki: KiBlockDoc): string {
    const pending = ki.detailPending ? ` <span class="tag">detail pending</span>` : "";
    return `<div class="ki-tile status-${escapeAttr(ki.status)}" data-ki-id="${escapeAttr(ki.kiId)}" data-score="${escapeAttr(payloadNumber(ki.score))}" data-status="${escapeAttr(ki.status)}">
  <div class="ki-name">${escapeHtml(ki.name)}</div>
  <div class="ki-domain">${escapeHtml(ki.domain)}</div>
  <div class="ki-score">${payloadNumber(ki.score)}</div>${pending}
</div>`;
}

export function renderDashboard(evaluation: EvaluationDoc): string {
    const badge = `<div class="attained-badge" data-attained-level="${evaluation.summary.attainedLevel}">
  Attained level: <strong>${evaluation.summary.attainedLevel}</strong>
</div>`;
    const bars = evaluation.summary.levels.map(levelBar).join("\n");
    const tiles = evaluation.sections
        .flatMap((section) => section.keyIndicators)
        .map(kiTile)
        .join("\n");
    const warnings = evaluation.warnings.length
        ? `<ul class="warnings">${evaluation.warnings
              .map((w) => `<li>${escapeHtml(w.code)}: ${escapeHtml(w.message)}</li>`)
              .join("")}</ul>`
        : "";
    return `<div class="dashboard">
${badge}
<div class="level-bars">
${bars}
</div>
<div class="ki-tiles">
${tiles}
</div>
${warnings}
</div>`;
}

/** One key indicator with its goals, metric rows, and template context. */
export function renderKiDetail(catalog: CatalogDoc, ki: KiBlockDoc): string {
    const goalById = new Map(catalog.goals.map((g) => [g.id, g]));
    const goals = ki.goals
        .map((goal) => {
            const template = goalById.get(goal.goalId)?.template;
            const context = template
                ? `<div class="template-context">Purpose: ${escapeHtml(template.purpose)} &middot; Quality focus: ${escapeHtml(template.qualityFocus)} &middot; Viewpoint: ${escapeHtml(template.viewpoint)}</div>`
                : "";
            if (goal.detailPending) {
                return `<section class="goal-block" data-goal-id="${escapeAttr(goal.goalId)}">
  <h4>${escapeHtml(goal.name)}</h4>${context}
  <p class="pending">Detail pending; reported indeterminate.</p>
</section>`;
            }
            const rows = goal.metrics
                .map(
                    (metric) => `<tr data-metric-id="${escapeAttr(metric.metricId)}" data-display="${escapeAttr(metric.display)}" data-status="${escapeAttr(metric.status)}">
      <td>${escapeHtml(metric.name)}</td>
      <td class="metric-value">${escapeHtml(metric.display)}</td>
      <td class="metric-status status-${escapeAttr(metric.status)}">${escapeHtml(metric.status)}</td>
    </tr>`,
                )
                .join("\n");
            return `<section class="goal-block" data-goal-id="${escapeAttr(goal.goalId)}" data-score="${escapeAttr(payloadNumber(goal.score))}">
  <h4>${escapeHtml(goal.name)} <span class="goal-status">${escapeHtml(goal.status)}</span></h4>${context}
  <table class="metric-table">
    <thead><tr><th>Metric</th><th>Value</th><th>Status</th></tr></thead>
    <tbody>
${rows}
    </tbody>
  </table>
</section>`;
        })
        .join("\n");
    return `<div class="ki-detail" data-ki-id="${escapeAttr(ki.kiId)}">
  <h3>${escapeHtml(ki.name)} <span class="ki-score">${payloadNumber(ki.score)}</span></h3>
${goals}
</div>`;
}
