// DOM wiring for the console: session picker, wizard, dashboard,
// gap explorer, what-if panel. All state flows through the API client.

import { ApiError, createApiClient } from "./api.js";
import { renderDashboard, renderKiDetail } from "./dashboard.js";
import { escapeHtml } from "./dom.js";
import { renderGapTree } from "./gap.js";
import type { AnswerValue, CatalogDoc, EvaluationDoc } from "./types.js";
import {
    initWizard,
    renderQuestionCard,
    validateCountInput,
    wizardNext,
    type WizardState,
} from "./wizard.js";
import {
    applyWhatIf,
    closePanel,
    openPanel,
    renderComparison,
    setOverlayEdit,
    type WhatIfState,
} from "./whatif.js";

const api = createApiClient("");

let catalog: CatalogDoc;
let sessionId: string | null = null;
let wizard: WizardState | null = null;
let whatIf: WhatIfState = closePanel();
let baseline: EvaluationDoc | null = null;

function el(id: string): HTMLElement {
    return document.getElementById(id)!;
}

function showError(error: unknown): void {
    const box = el("error-box");
    if (error instanceof ApiError) {
        box.textContent = JSON.stringify(error.body);
    } else {
        box.textContent = String(error);
    }
    box.classList.remove("hidden");
    setTimeout(() => box.classList.add("hidden"), 6000);
}

async function refreshSessions(): Promise<void> {
    const sessions = await api.listSessions();
    el("session-list").innerHTML = sessions
        .map(
            (s) =>
                `<li><button class="session-pick" data-id="${s.id}">${escapeHtml(s.label || s.id)} (${s.answeredCount} answers)</button></li>`,
        )
        .join("");
    document.querySelectorAll<HTMLButtonElement>(".session-pick").forEach((button) => {
        button.onclick = () => void openSession(button.dataset.id!);
    });
}

async function openSession(id: string): Promise<void> {
    sessionId = id;
    const [session, completeness] = await Promise.all([
        api.getSession(id),
        api.getCompleteness(id),
    ]);
    wizard = initWizard(catalog, session, completeness);
    el("workbench").classList.remove("hidden");
    renderWizard();
    await refreshDashboard();
}

function renderWizard(): void {
    if (!wizard) return;
    el("wizard").innerHTML = renderQuestionCard(catalog, wizard);
    el("wizard-count").textContent = `${wizard.answeredCount}/${wizard.order.length} answered`;
    document.querySelectorAll<HTMLButtonElement>(".answer-btn").forEach((button) => {
        button.onclick = () => void submitAnswer(button.dataset.answer!);
    });
}

async function submitAnswer(kind: string): Promise<void> {
    if (!wizard || !sessionId) return;
    let answer: AnswerValue;
    if (kind === "count") {
        const input = document.getElementById("count-input") as HTMLInputElement;
        const parsed = validateCountInput(input.value);
        if (parsed === null) {
            showError({ message: "counts must be non-negative integers" });
            return;
        }
        answer = parsed;
    } else {
        answer = kind as AnswerValue;
    }
    try {
        wizard = await wizardNext(api, sessionId, wizard, answer);
        renderWizard();
        await refreshDashboard();
    } catch (error) {
        showError(error);
    }
}

async function refreshDashboard(): Promise<void> {
    if (!sessionId) return;
    baseline = await api.getEvaluation(sessionId);
    el("dashboard").innerHTML = renderDashboard(baseline);
    const details = baseline.sections
        .flatMap((section) => section.keyIndicators)
        .filter((ki) => !ki.detailPending)
        .map((ki) => renderKiDetail(catalog, ki))
        .join("\n");
    el("ki-details").innerHTML = details;
}

async function runGap(): Promise<void> {
    if (!sessionId) return;
    const target = Number((el("gap-target") as HTMLInputElement).value);
    try {
        const gap = await api.getGap(sessionId, target);
        el("gap-view").innerHTML = renderGapTree(gap);
    } catch (error) {
        showError(error);
    }
}

function renderWhatIfPanel(): void {
    const panel = el("whatif-panel");
    if (!whatIf.open) {
        panel.classList.add("hidden");
        return;
    }
    panel.classList.remove("hidden");
    const edits = Object.entries(whatIf.overlay)
        .map(([qid, value]) => `<li>${escapeHtml(qid)} &rarr; ${escapeHtml(String(value))}</li>`)
        .join("");
    el("whatif-edits").innerHTML = edits || "<li>No overlay edits yet.</li>";
    el("whatif-result").innerHTML =
        whatIf.result && baseline ? renderComparison(baseline, whatIf.result) : "";
}

async function main(): Promise<void> {
    catalog = await api.getCatalog();
    el("catalog-version").textContent = catalog.version;
    await refreshSessions();

    el("session-create").onclick = async () => {
        const label = (el("session-label") as HTMLInputElement).value;
        try {
            const session = await api.createSession(label);
            await refreshSessions();
            await openSession(session.id);
        } catch (error) {
            showError(error);
        }
    };
    el("gap-run").onclick = () => void runGap();
    el("whatif-open").onclick = () => {
        whatIf = openPanel();
        renderWhatIfPanel();
    };
    el("whatif-close").onclick = () => {
        whatIf = closePanel();
        renderWhatIfPanel();
    };
    el("whatif-add").onclick = () => {
        const qid = (el("whatif-q") as HTMLInputElement).value.trim();
        const raw = (el("whatif-value") as HTMLInputElement).value.trim();
        if (!qid || !raw) return;
        const value: AnswerValue = /^\d+$/.test(raw) ? Number(raw) : (raw as AnswerValue);
        whatIf = setOverlayEdit(whatIf, qid, value);
        renderWhatIfPanel();
    };
    el("whatif-apply").onclick = async () => {
        if (!sessionId) return;
        try {
            whatIf = await applyWhatIf(api, sessionId, whatIf);
            renderWhatIfPanel();
        } catch (error) {
            showError(error);
        }
    };
}

void main().catch(showError);
