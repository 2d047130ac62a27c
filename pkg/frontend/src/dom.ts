export function escapeHtml(text: string): string {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}

export function escapeAttr(text: string): string {
    return escapeHtml(text).replace(/'/g, "&#39;");
}

/** Render a payload number exactly as received; never reformat scores. */
export function payloadNumber(value: number | null): string {
    return value === null ? "-" : String(value);
}
