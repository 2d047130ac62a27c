// Gap explorer: every row expands into its interpretation chain
// (metric -> goal -> key indicator -> level -> domain).

import type { GapDoc, GapItemDoc } from "./types.js";
import { escapeAttr, escapeHtml } from "./dom.js";

function chainList(item: GapItemDoc): string {
    if (!item.chain) return `<p class="no-chain">No metric chain (indicator-level gap).</p>`;
    const links = item.chain.keyIndicators
        .map(
            (link) =>
                `<li>${escapeHtml(item.chain!.metricName)} &rarr; ${escapeHtml(item.chain!.goalName)} &rarr; ${escapeHtml(link.kiName)} &rarr; level ${link.level} (${escapeHtml(link.levelName)}) &rarr; ${escapeHtml(link.domainName)}</li>`,
        )
        .join("");
    return `<ul class="chain">${links}</ul>`;
}

function gapRow(item: GapItemDoc): string {
    const subject = item.metricName ?? item.goalName ?? item.kiName;
    return `<details class="gap-row kind-${escapeAttr(item.kind)}" data-kind="${escapeAttr(item.kind)}" data-ki-id="${escapeAttr(item.kiId)}">
  <summary>
    <span class="gap-level">L${item.level}</span>
    <span class="gap-subject">${escapeHtml(subject)}</span>
    <span class="gap-detail">${escapeHtml(item.detail)}</span>
  </summary>
  ${chainList(item)}
</details>`;
}

export function renderGapTree(gap: GapDoc): string {
    if (gap.empty) {
        return `<div class="gap-empty" data-target="${gap.targetLevel}">
  <p class="banner ok">Target level ${gap.targetLevel} attained: nothing blocking in scope.</p>
</div>`;
    }
    return `<div class="gap-tree" data-target="${gap.targetLevel}">
  <p class="banner warn">${gap.items.length} item(s) block level ${gap.targetLevel}.</p>
${gap.items.map(gapRow).join("\n")}
</div>`;
}
