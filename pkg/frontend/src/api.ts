/* Thin typed client for the solver service.
 *
 * Error contract: 2xx bodies are payloads, 422 is "solved but infeasible"
 * and still carries the least-violating candidate, anything else maps to
 * ApiError with the server's error code when one is present.
 */

import type {
    ErrorBody,
    FixtureIndex,
    ProblemPayload,
    ReportPayload,
    SolutionPayload,
    SwatchRowPayload,
} from './types';

export class ApiError extends Error {
    constructor(
        readonly status: number,
        readonly code: string,
        message: string,
    ) {
        super(message);
        this.name = 'ApiError';
    }
}

export type SolveOutcome =
    | { kind: 'solved'; solution: SolutionPayload }
    | { kind: 'infeasible'; solution: SolutionPayload; message: string };

async function errorFrom(res: Response): Promise<ApiError> {
    let code = `http_${res.status}`;
    let message = res.statusText || `request failed with ${res.status}`;
    try {
        const body = (await res.json()) as ErrorBody;
        if (body && body.error) {
            code = body.error.code;
            message = body.error.message;
        }
    } catch {
        // non-JSON error body; keep the status-derived message
    }
    return new ApiError(res.status, code, message);
}

export class ApiClient {
    constructor(readonly base: string = '') {}

    private async getJson<T>(path: string): Promise<T> {
        const res = await fetch(this.base + path);
        if (!res.ok) {
            throw await errorFrom(res);
        }
        return (await res.json()) as T;
    }

    private async postJson<T>(path: string, body: unknown): Promise<T> {
        const res = await fetch(this.base + path, {
            method: 'POST',
            headers: { 'content-type': 'application/json' },
            body: JSON.stringify(body),
        });
        if (!res.ok) {
            throw await errorFrom(res);
        }
        return (await res.json()) as T;
    }

    health(): Promise<{ status: string }> {
        return this.getJson('/healthz');
    }

    fixtures(): Promise<FixtureIndex> {
        return this.getJson('/api/fixtures');
    }

    async solve(problem: ProblemPayload, timeoutMs: number): Promise<SolveOutcome> {
        const res = await fetch(this.base + '/api/solve', {
            method: 'POST',
            headers: { 'content-type': 'application/json' },
            body: JSON.stringify({ ...problem, timeout_ms: timeoutMs }),
        });
        if (res.ok) {
            return { kind: 'solved', solution: (await res.json()) as SolutionPayload };
        }
        if (res.status === 422) {
            const body = (await res.json()) as ErrorBody;
            if (body.solution) {
                return {
                    kind: 'infeasible',
                    solution: body.solution,
                    message: body.error.message,
                };
            }
            throw new ApiError(422, body.error.code, body.error.message);
        }
        throw await errorFrom(res);
    }

    evaluate(problem: ProblemPayload, solution: SolutionPayload): Promise<ReportPayload> {
        return this.postJson('/api/evaluate', { problem, solution });
    }

    async preview(
        problem: ProblemPayload,
        alpha1: number[],
        alpha2: number[],
    ): Promise<SwatchRowPayload[]> {
        const body = await this.postJson<{ rows: SwatchRowPayload[] }>('/api/preview', {
            problem,
            alpha1,
            alpha2,
        });
        return body.rows;
    }
}
