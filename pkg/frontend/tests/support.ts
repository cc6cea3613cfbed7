/* Shared fetch stubbing helpers.
 *
 * Responses are plain objects exposing only the fields the client reads
 * (ok, status, statusText, json); bodies go through a JSON round-trip so
 * every call sees a fresh copy, as it would off the wire.
 */

export function jsonResponse(body: unknown, status = 200): Response {
    return {
        ok: status >= 200 && status < 300,
        status,
        statusText: '',
        json: async () => JSON.parse(JSON.stringify(body)) as unknown,
    } as unknown as Response;
}

export function textResponse(status: number, statusText: string): Response {
    return {
        ok: status >= 200 && status < 300,
        status,
        statusText,
        json: async () => {
            throw new SyntaxError('body is not JSON');
        },
    } as unknown as Response;
}

export interface LoggedRequest {
    path: string;
    body: unknown;
}

export function parseBody(init?: RequestInit): unknown {
    if (!init || typeof init.body !== 'string') {
        return null;
    }
    return JSON.parse(init.body) as unknown;
}
