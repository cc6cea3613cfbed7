import { describe, expect, it } from 'vitest';

import type { SolveOutcome } from '../src/api';
import {
    SLIDER_MAX,
    SLIDER_MIN,
    beginSolve,
    initialState,
    problemForSolve,
    selectProblem,
    selectedProblem,
    solveDone,
    solveFailed,
    toggleMirror,
    tune,
    withFixtures,
    withSwatches,
    type SessionState,
} from '../src/state';
import {
    cannedFixtures,
    cannedPreviewRows,
    cannedProblem,
    cannedReport,
    cannedSolution,
} from './canned';

function readyState(): SessionState {
    return withFixtures(initialState(), cannedFixtures.problems);
}

function solvedState(): SessionState {
    const outcome: SolveOutcome = { kind: 'solved', solution: cannedSolution };
    return solveDone(
        beginSolve(readyState())!,
        cannedProblem,
        outcome,
        cannedReport,
        cannedPreviewRows,
    );
}

describe('boot and fixture loading', () => {
    it('starts empty, in boot phase, with default tuning', () => {
        const s = initialState();
        expect(s.phase).toBe('boot');
        expect(s.problems).toEqual([]);
        expect(s.solution).toBeNull();
        expect(s.params).toEqual({ delta: 0.1, deltaWhite: 0.085, seed: 42 });
    });

    it('withFixtures selects the first problem and seeds its params', () => {
        const s = readyState();
        const first = cannedFixtures.problems[0]!;
        expect(s.phase).toBe('ready');
        expect(s.selectedName).toBe(first.name);
        expect(s.params.delta).toBe(first.problem.params.delta);
        expect(s.params.deltaWhite).toBe(first.problem.params.delta_white);
        expect(s.params.seed).toBe(first.problem.params.seed);
        expect(selectedProblem(s)).toBe(first);
    });

    it('withFixtures with no problems stays unselected but ready', () => {
        const s = withFixtures(initialState(), []);
        expect(s.phase).toBe('ready');
        expect(s.selectedName).toBeNull();
        expect(selectedProblem(s)).toBeNull();
    });
});

describe('problem selection', () => {
    it('switching problems clears every result field', () => {
        const s = solvedState();
        const next = selectProblem(s, 'scc_3ch');
        expect(next.selectedName).toBe('scc_3ch');
        expect(next.solvedProblem).toBeNull();
        expect(next.solution).toBeNull();
        expect(next.report).toBeNull();
        expect(next.swatches).toBeNull();
        expect(next.infeasible).toBe(false);
        expect(next.stale).toBe(false);
    });

    it('selecting re-seeds tuning from the fixture params', () => {
        const tuned = tune(readyState(), { delta: 0.25, seed: 9 });
        const next = selectProblem(tuned, 'scc_3ch');
        const entry = cannedFixtures.problems.find((p) => p.name === 'scc_3ch')!;
        expect(next.params.delta).toBe(entry.problem.params.delta);
        expect(next.params.seed).toBe(entry.problem.params.seed);
    });

    it('an unknown name is a no-op', () => {
        const s = solvedState();
        expect(selectProblem(s, 'no_such_problem')).toBe(s);
    });
});

describe('tuning', () => {
    it('marks results stale only when a solution is shown', () => {
        expect(tune(readyState(), { delta: 0.2 }).stale).toBe(false);
        expect(tune(solvedState(), { delta: 0.2 }).stale).toBe(true);
    });

    it('tuning does not discard the shown solution', () => {
        const next = tune(solvedState(), { deltaWhite: 0.05 });
        expect(next.solution).toBe(cannedSolution);
        expect(next.report).toBe(cannedReport);
        expect(next.params.deltaWhite).toBe(0.05);
    });

    it('clamps sliders into the control range', () => {
        const s = readyState();
        expect(tune(s, { delta: 0.5 }).params.delta).toBe(SLIDER_MAX);
        expect(tune(s, { delta: -1 }).params.delta).toBe(SLIDER_MIN);
        expect(tune(s, { deltaWhite: Number.NaN }).params.deltaWhite).toBe(SLIDER_MIN);
    });

    it('truncates the seed to an integer', () => {
        expect(tune(readyState(), { seed: 7.9 }).params.seed).toBe(7);
        expect(tune(readyState(), { seed: -2.5 }).params.seed).toBe(-2);
    });
});

describe('solve lifecycle', () => {
    it('problemForSolve deep-copies the fixture and applies the tuning', () => {
        const tuned = tune(readyState(), { delta: 0.17, seed: 5 });
        const problem = problemForSolve(tuned)!;
        expect(problem.params.delta).toBe(0.17);
        expect(problem.params.seed).toBe(5);
        problem.params.starts = 1;
        const entry = selectedProblem(tuned)!;
        expect(entry.problem.params.starts).not.toBe(1);
    });

    it('beginSolve refuses while solving or without a selection', () => {
        const begun = beginSolve(readyState())!;
        expect(begun.phase).toBe('solving');
        expect(beginSolve(begun)).toBeNull();
        expect(beginSolve(withFixtures(initialState(), []))).toBeNull();
        expect(beginSolve(initialState())).toBeNull();
    });

    it('solveDone pins the as-solved problem and the infeasible flag', () => {
        const begun = beginSolve(readyState())!;
        const outcome: SolveOutcome = {
            kind: 'infeasible',
            solution: cannedSolution,
            message: 'no feasible point',
        };
        const next = solveDone(begun, cannedProblem, outcome, cannedReport, cannedPreviewRows);
        expect(next.phase).toBe('ready');
        expect(next.solvedProblem).toBe(cannedProblem);
        expect(next.solution).toBe(cannedSolution);
        expect(next.infeasible).toBe(true);
        expect(next.stale).toBe(false);
        expect(next.banner).toBeNull();
    });

    it('solveFailed banners the error and keeps previous results', () => {
        const s = solvedState();
        const next = solveFailed(s, 'connection refused');
        expect(next.phase).toBe('ready');
        expect(next.banner).toBe('connection refused');
        expect(next.solution).toBe(s.solution);
        expect(next.report).toBe(s.report);
        expect(next.swatches).toBe(s.swatches);
    });

    it('withSwatches replaces only the swatch rows', () => {
        const s = solvedState();
        const rows = cannedPreviewRows.slice(0, 2);
        const next = withSwatches(s, rows);
        expect(next.swatches).toBe(rows);
        expect(next.solution).toBe(s.solution);
    });

    it('toggleMirror flips the debug preview flag', () => {
        const on = toggleMirror(readyState(), true);
        expect(on.mirrorLights).toBe(true);
        expect(toggleMirror(on, false).mirrorLights).toBe(false);
    });
});
