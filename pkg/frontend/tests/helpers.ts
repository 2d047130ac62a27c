import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { ApiClient } from "../src/api.js";
import type {
    AnswerValue,
    CatalogDoc,
    CompletenessDoc,
    EvaluationDoc,
    GapDoc,
    SessionDoc,
} from "../src/types.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixture<T>(name: string): T {
    return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")) as T;
}

export interface CallLog {
    patchAnswers: number;
    whatIf: number;
    getEvaluation: number;
    getCompleteness: number;
}

/** In-memory ApiClient double that records which endpoints were exercised. */
export function fakeApi(catalog: CatalogDoc): { api: ApiClient; calls: CallLog; answers: Record<string, AnswerValue> } {
    const calls: CallLog = { patchAnswers: 0, whatIf: 0, getEvaluation: 0, getCompleteness: 0 };
    const answers: Record<string, AnswerValue> = {};

    const sessionDoc = (): SessionDoc => ({
        id: "fake-session",
        catalogVersion: catalog.version,
        label: "fake",
        answers: Object.fromEntries(
            Object.entries(answers).map(([qid, value]) => [qid, { value, evidenceNote: null }]),
        ),
        createdAt: "2026-01-15T12:00:00+00:00",
        updatedAt: "2026-01-15T12:00:00+00:00",
    });

    const api: ApiClient = {
        getCatalog: async () => catalog,
        createSession: async () => sessionDoc(),
        listSessions: async () => [],
        getSession: async () => sessionDoc(),
        patchAnswers: async (_id, body) => {
            calls.patchAnswers += 1;
            Object.assign(answers, body);
            return sessionDoc();
        },
        getCompleteness: async () => {
            calls.getCompleteness += 1;
            return { perKi: {}, overall: 0 } as CompletenessDoc;
        },
        getEvaluation: async () => {
            calls.getEvaluation += 1;
            return fixture<EvaluationDoc>("evaluation_empty.json");
        },
        getGap: async () => fixture<GapDoc>("gap_target3.json"),
        whatIf: async () => {
            calls.whatIf += 1;
            return fixture<EvaluationDoc>("whatif_weak3.json");
        },
    };
    return { api, calls, answers };
}
