import { describe, expect, it } from "vitest";

import type { CatalogDoc, EvaluationDoc } from "../src/types.js";
import {
    applyWhatIf,
    clearOverlayEdit,
    closePanel,
    openPanel,
    renderComparison,
    setOverlayEdit,
} from "../src/whatif.js";
import { fakeApi, fixture } from "./helpers.js";

const catalog = fixture<CatalogDoc>("catalog.json");
const baseline = fixture<EvaluationDoc>("evaluation_oracle.json");
const overlayResult = fixture<EvaluationDoc>("whatif_weak3.json");

describe("what-if panel", () => {
    it("never issues PATCH requests through its whole lifecycle", async () => {
        const { api, calls } = fakeApi(catalog);
        let state = openPanel();
        state = setOverlayEdit(state, "q-msg-secure-electronic-messaging-6", 3);
        state = setOverlayEdit(state, "q-msg-network-routing-control-1", "No");
        state = clearOverlayEdit(state, "q-msg-network-routing-control-1");
        state = await applyWhatIf(api, "fake-session", state);
        expect(state.result).not.toBeNull();
        state = closePanel();
        expect(calls.whatIf).toBe(1);
        expect(calls.patchAnswers).toBe(0);
    });

    it("closing drops the overlay and preview without any network call", async () => {
        const { api, calls } = fakeApi(catalog);
        let state = setOverlayEdit(openPanel(), "q-msg-secure-electronic-messaging-6", 3);
        state = await applyWhatIf(api, "fake-session", state);
        const before = { ...calls };
        state = closePanel();
        expect(state).toEqual({ open: false, overlay: {}, result: null });
        expect(calls).toEqual(before);
    });

    it("overlay edits accumulate with later edits winning", () => {
        let state = openPanel();
        state = setOverlayEdit(state, "q", 1);
        state = setOverlayEdit(state, "q", 2);
        expect(state.overlay).toEqual({ q: 2 });
    });
});

describe("comparison rendering", () => {
    it("marks exactly the rows whose payload display changed", () => {
        const html = renderComparison(baseline, overlayResult);
        const changed = html
            .split("\n")
            .filter((line) => line.includes('class="changed"'));
        expect(changed.length).toBeGreaterThan(0);
        expect(changed.some((line) => line.includes("m-msg-weak-authentication"))).toBe(true);
        // both sides come verbatim from their payloads
        expect(html).toContain('data-baseline="0.0%"');
        expect(html).toContain('data-overlay="30.0%"');
    });

    it("keeps baseline and overlay attained levels side by side", () => {
        const html = renderComparison(baseline, overlayResult);
        expect(html).toContain(`data-baseline-attained="${baseline.summary.attainedLevel}"`);
        expect(html).toContain(`data-overlay-attained="${overlayResult.summary.attainedLevel}"`);
    });
});
