/* Wire-up: one state object, one render pass per transition.
 *
 * Exported as a boot function so tests can mount the console against an
 * intercepted fetch and a detached root element.
 */

import { ApiClient } from './api';
import {
    beginSolve,
    initialState,
    problemForSolve,
    selectProblem,
    solveDone,
    solveFailed,
    toggleMirror,
    tune,
    withFixtures,
    withSwatches,
    type SessionState,
} from './state';
import { buildShell, render, type Refs } from './ui';

export const SOLVE_TIMEOUT_MS = 120_000;

function describe(err: unknown): string {
    if (err instanceof Error) {
        return err.message;
    }
    return String(err);
}

export interface App {
    refs: Refs;
    state(): SessionState;
    /** Resolves when the in-flight solve (if any) has settled. */
    idle(): Promise<void>;
}

export async function boot(root: HTMLElement, client: ApiClient): Promise<App> {
    const refs = buildShell(root);
    let state = initialState();
    let pending: Promise<void> = Promise.resolve();

    const update = (next: SessionState): void => {
        state = next;
        render(refs, state);
    };

    const runSolve = (): void => {
        const begun = beginSolve(state);
        if (begun === null) {
            return;
        }
        const problem = problemForSolve(begun);
        if (problem === null) {
            return;
        }
        update(begun);
        pending = (async () => {
            try {
                const outcome = await client.solve(problem, SOLVE_TIMEOUT_MS);
                const solution = outcome.solution;
                const report = await client.evaluate(problem, solution);
                const alpha2 = state.mirrorLights ? solution.alpha1 : solution.alpha2;
                const swatches = await client.preview(problem, solution.alpha1, alpha2);
                update(solveDone(state, problem, outcome, report, swatches));
            } catch (err) {
                update(solveFailed(state, describe(err)));
            }
        })();
    };

    const refreshPreview = (): void => {
        const problem = state.solvedProblem;
        const solution = state.solution;
        if (problem === null || solution === null) {
            return;
        }
        pending = (async () => {
            try {
                const alpha2 = state.mirrorLights ? solution.alpha1 : solution.alpha2;
                const swatches = await client.preview(problem, solution.alpha1, alpha2);
                update(withSwatches(state, swatches));
            } catch (err) {
                update(solveFailed(state, describe(err)));
            }
        })();
    };

    refs.problemSelect.addEventListener('change', () => {
        update(selectProblem(state, refs.problemSelect.value));
    });
    refs.deltaSlider.addEventListener('input', () => {
        update(tune(state, { delta: Number(refs.deltaSlider.value) }));
    });
    refs.deltaWhiteSlider.addEventListener('input', () => {
        update(tune(state, { deltaWhite: Number(refs.deltaWhiteSlider.value) }));
    });
    refs.seedInput.addEventListener('change', () => {
        update(tune(state, { seed: Number(refs.seedInput.value) }));
    });
    refs.mirrorToggle.addEventListener('change', () => {
        update(toggleMirror(state, refs.mirrorToggle.checked));
        refreshPreview();
    });
    refs.solveButton.addEventListener('click', runSolve);

    render(refs, state);
    try {
        const index = await client.fixtures();
        update(withFixtures(state, index.problems));
    } catch (err) {
        update({ ...state, phase: 'ready', banner: describe(err) });
    }

    return {
        refs,
        state: () => state,
        idle: async () => {
            await pending;
        },
    };
}

/* Self-mount when served as the bundle; tests boot explicitly instead. */
const mount = typeof document !== 'undefined' ? document.getElementById('app') : null;
if (mount !== null) {
    void boot(mount, new ApiClient());
}
