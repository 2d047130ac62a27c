// Thin fetch client. All console state comes through these calls; the UI
// surfaces ApiError bodies verbatim.

import type {
    AnswerValue,
    ApiErrorDoc,
    CatalogDoc,
    CompletenessDoc,
    EvaluationDoc,
    GapDoc,
    SessionDoc,
    SessionSummaryDoc,
} from "./types.js";

export class ApiError extends Error {
    readonly body: ApiErrorDoc;

    constructor(body: ApiErrorDoc) {
        super(body.message);
        this.body = body;
    }
}

export interface ApiClient {
    getCatalog(): Promise<CatalogDoc>;
    createSession(label: string): Promise<SessionDoc>;
    listSessions(): Promise<SessionSummaryDoc[]>;
    getSession(id: string): Promise<SessionDoc>;
    patchAnswers(id: string, answers: Record<string, AnswerValue>): Promise<SessionDoc>;
    getCompleteness(id: string): Promise<CompletenessDoc>;
    getEvaluation(id: string): Promise<EvaluationDoc>;
    getGap(id: string, target: number): Promise<GapDoc>;
    whatIf(id: string, overlay: Record<string, AnswerValue>): Promise<EvaluationDoc>;
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
    const response = await fetch(url, {
        headers: { "Content-Type": "application/json" },
        ...init,
    });
    const body = await response.json();
    if (!response.ok) {
        throw new ApiError(body as ApiErrorDoc);
    }
    return body as T;
}

export function createApiClient(baseUrl = ""): ApiClient {
    return {
        getCatalog: () => request(`${baseUrl}/catalog`),
        createSession: (label) =>
            request(`${baseUrl}/sessions`, { method: "POST", body: JSON.stringify({ label }) }),
        listSessions: async () => {
            const doc = await request<{ sessions: SessionSummaryDoc[] }>(`${baseUrl}/sessions`);
            return doc.sessions;
        },
        getSession: (id) => request(`${baseUrl}/sessions/${id}`),
        patchAnswers: (id, answers) =>
            request(`${baseUrl}/sessions/${id}/answers`, {
                method: "PATCH",
                body: JSON.stringify(answers),
            }),
        getCompleteness: (id) => request(`${baseUrl}/sessions/${id}/completeness`),
        getEvaluation: (id) => request(`${baseUrl}/sessions/${id}/evaluation`),
        getGap: (id, target) => request(`${baseUrl}/sessions/${id}/gap?target=${target}`),
        whatIf: (id, overlay) =>
            request(`${baseUrl}/sessions/${id}/whatif`, {
                method: "POST",
                body: JSON.stringify({ overlay }),
            }),
    };
}
