/* Session state and its pure transitions.
 *
 * Two rules shape everything here: switching problems clears the shown
 * solution outright (never display results against mismatched inputs),
 * while tuning parameters only marks it stale (re-solving is an explicit
 * button press so runs stay reproducible).  One solve in flight at most.
 */

import type {
    FixtureProblemEntry,
    ProblemPayload,
    ReportPayload,
    SolutionPayload,
    SwatchRowPayload,
} from './types';
import type { SolveOutcome } from './api';

export const SLIDER_MIN = 0;
export const SLIDER_MAX = 0.3;

export type Phase = 'boot' | 'ready' | 'solving';

export interface TuningParams {
    delta: number;
    deltaWhite: number;
    seed: number;
}

export interface SessionState {
    problems: FixtureProblemEntry[];
    selectedName: string | null;
    params: TuningParams;
    /* result block, all from the last completed solve */
    solvedProblem: ProblemPayload | null;
    solution: SolutionPayload | null;
    report: ReportPayload | null;
    swatches: SwatchRowPayload[] | null;
    infeasible: boolean;
    stale: boolean;
    phase: Phase;
    banner: string | null;
    mirrorLights: boolean;
}

export function initialState(): SessionState {
    return {
        problems: [],
        selectedName: null,
        params: { delta: 0.1, deltaWhite: 0.085, seed: 42 },
        solvedProblem: null,
        solution: null,
        report: null,
        swatches: null,
        infeasible: false,
        stale: false,
        phase: 'boot',
        banner: null,
        mirrorLights: false,
    };
}

function clearResults(state: SessionState): SessionState {
    return {
        ...state,
        solvedProblem: null,
        solution: null,
        report: null,
        swatches: null,
        infeasible: false,
        stale: false,
    };
}

export function selectedProblem(state: SessionState): FixtureProblemEntry | null {
    return state.problems.find((p) => p.name === state.selectedName) ?? null;
}

export function withFixtures(
    state: SessionState,
    problems: FixtureProblemEntry[],
): SessionState {
    const next = { ...state, problems, phase: 'ready' as Phase, banner: null };
    const first = problems[0];
    return first ? selectProblem(next, first.name) : next;
}

export function selectProblem(state: SessionState, name: string): SessionState {
    const entry = state.problems.find((p) => p.name === name);
    if (!entry) {
        return state;
    }
    const params = entry.problem.params;
    return clearResults({
        ...state,
        selectedName: name,
        params: { delta: params.delta, deltaWhite: params.delta_white, seed: params.seed },
    });
}

function clampSlider(value: number): number {
    if (!Number.isFinite(value)) {
        return SLIDER_MIN;
    }
    return Math.min(SLIDER_MAX, Math.max(SLIDER_MIN, value));
}

export function tune(
    state: SessionState,
    patch: Partial<TuningParams>,
): SessionState {
    const params: TuningParams = {
        delta: patch.delta !== undefined ? clampSlider(patch.delta) : state.params.delta,
        deltaWhite:
            patch.deltaWhite !== undefined
                ? clampSlider(patch.deltaWhite)
                : state.params.deltaWhite,
        seed: patch.seed !== undefined ? Math.trunc(patch.seed) : state.params.seed,
    };
    return { ...state, params, stale: state.solution !== null };
}

export function toggleMirror(state: SessionState, on: boolean): SessionState {
    return { ...state, mirrorLights: on };
}

/** Problem payload to post for a solve: selected fixture + current tuning. */
export function problemForSolve(state: SessionState): ProblemPayload | null {
    const entry = selectedProblem(state);
    if (!entry) {
        return null;
    }
    const problem = JSON.parse(JSON.stringify(entry.problem)) as ProblemPayload;
    problem.params.delta = state.params.delta;
    problem.params.delta_white = state.params.deltaWhite;
    problem.params.seed = state.params.seed;
    return problem;
}

/** Null when a solve is already in flight (the single-solve guard). */
export function beginSolve(state: SessionState): SessionState | null {
    if (state.phase !== 'ready' || selectedProblem(state) === null) {
        return null;
    }
    return { ...state, phase: 'solving', banner: null };
}

export function solveDone(
    state: SessionState,
    problem: ProblemPayload,
    outcome: SolveOutcome,
    report: ReportPayload,
    swatches: SwatchRowPayload[],
): SessionState {
    return {
        ...state,
        phase: 'ready',
        solvedProblem: problem,
        solution: outcome.solution,
        report,
        swatches,
        infeasible: outcome.kind === 'infeasible',
        stale: false,
        banner: null,
    };
}

/** Keeps the previous results; failures are banners, not resets. */
export function solveFailed(state: SessionState, message: string): SessionState {
    return { ...state, phase: 'ready', banner: message };
}

export function withSwatches(
    state: SessionState,
    swatches: SwatchRowPayload[],
): SessionState {
    return { ...state, swatches };
}
