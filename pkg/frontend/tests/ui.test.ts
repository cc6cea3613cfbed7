/* End-to-end console behavior against a stubbed fetch.
 *
 * The load-bearing checks here are the verbatim ones: every number, flag,
 * and swatch byte shown in the DOM must equal String() of the canned
 * payload field it came from, because the client owns none of the values
 * it displays.
 */

import { afterEach, describe, expect, it, vi } from 'vitest';

import { ApiClient } from '../src/api';
import { boot, type App } from '../src/main';
import {
    cannedFixtures,
    cannedInfeasibleBody,
    cannedPreviewIdenticalRows,
    cannedPreviewRows,
    cannedReport,
    cannedSolution,
} from './canned';
import { jsonResponse, parseBody, type LoggedRequest } from './support';

interface Routes {
    solve: (body: unknown) => Response | Promise<Response>;
}

interface Harness {
    app: App;
    requests: LoggedRequest[];
    routes: Routes;
}

async function mount(): Promise<Harness> {
    const requests: LoggedRequest[] = [];
    const routes: Routes = { solve: () => jsonResponse(cannedSolution) };
    vi.stubGlobal(
        'fetch',
        vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
            const path = String(input);
            const body = parseBody(init);
            requests.push({ path, body });
            if (path === '/api/fixtures') {
                return jsonResponse(cannedFixtures);
            }
            if (path === '/api/solve') {
                return routes.solve(body);
            }
            if (path === '/api/evaluate') {
                return jsonResponse(cannedReport);
            }
            if (path === '/api/preview') {
                const b = body as { alpha1: number[]; alpha2: number[] };
                const mirrored =
                    JSON.stringify(b.alpha1) === JSON.stringify(b.alpha2);
                return jsonResponse({
                    rows: mirrored ? cannedPreviewIdenticalRows : cannedPreviewRows,
                });
            }
            return jsonResponse({ error: { code: 'not_found', message: path } }, 404);
        }),
    );
    const root = document.createElement('div');
    document.body.append(root);
    const app = await boot(root, new ApiClient());
    return { app, requests, routes };
}

afterEach(() => {
    vi.unstubAllGlobals();
    document.body.textContent = '';
});

async function solveOnce(h: Harness): Promise<void> {
    h.app.refs.solveButton.click();
    await h.app.idle();
}

function solveRequests(h: Harness): LoggedRequest[] {
    return h.requests.filter((r) => r.path === '/api/solve');
}

describe('boot', () => {
    it('lists the fixture problems and seeds the controls', async () => {
        const h = await mount();
        const options = Array.from(h.app.refs.problemSelect.options);
        expect(options.map((o) => o.textContent)).toEqual([
            'iso_3ch (isochromatic / as_printed, 3ch)',
            'scc_3ch (specific_color_change, 3ch)',
        ]);
        const first = cannedFixtures.problems[0]!;
        expect(h.app.refs.deltaSlider.value).toBe(String(first.problem.params.delta));
        expect(h.app.refs.seedInput.value).toBe(String(first.problem.params.seed));
        expect(h.app.refs.solveButton.disabled).toBe(false);
        expect(h.app.refs.results.hidden).toBe(true);
    });

    it('banners a failed fixture load and keeps solve disabled', async () => {
        vi.stubGlobal(
            'fetch',
            vi.fn(async () => {
                throw new Error('ECONNREFUSED');
            }),
        );
        const root = document.createElement('div');
        document.body.append(root);
        const app = await boot(root, new ApiClient());
        expect(app.refs.errorBanner.hidden).toBe(false);
        expect(app.refs.errorBanner.textContent).toContain('ECONNREFUSED');
        expect(app.refs.solveButton.disabled).toBe(true);
    });
});

describe('solved results are verbatim payload values', () => {
    it('renders objective and constraint gauges exactly as sent', async () => {
        const h = await mount();
        await solveOnce(h);

        expect(h.app.refs.results.hidden).toBe(false);
        expect(h.app.refs.resultBanner.textContent).toBe('feasible solution');
        expect(h.app.refs.resultBanner.className).toContain('banner-feasible');
        expect(h.app.refs.objective.textContent).toBe(
            `objective ${String(cannedSolution.objective)} ` +
                `(feasible: ${String(cannedSolution.feasible)}, ` +
                `seed ${String(cannedSolution.seed)})`,
        );

        const gauges = Array.from(h.app.refs.gauges.querySelectorAll('li.gauge'));
        expect(gauges.length).toBe(cannedSolution.constraints.length);
        cannedSolution.constraints.forEach((row, i) => {
            const gauge = gauges[i]!;
            expect(gauge.querySelector('.gauge-name')!.textContent).toBe(row.name);
            expect(gauge.querySelector('.gauge-values')!.textContent).toBe(
                `${String(row.value)} / ${String(row.bound)}`,
            );
            expect(gauge.classList.contains('violated')).toBe(row.value > row.bound);
        });
    });

    it('renders the metric table and reference note exactly as sent', async () => {
        const h = await mount();
        await solveOnce(h);

        const rows = Array.from(h.app.refs.metricsBody.querySelectorAll('tr.metric'));
        expect(rows.length).toBe(cannedReport.metrics.length);
        cannedReport.metrics.forEach((metric, i) => {
            const row = rows[i]!;
            expect(row.getAttribute('data-label')).toBe(metric.label);
            expect(row.querySelector('.metric-value')!.textContent).toBe(
                String(metric.value),
            );
            expect(row.querySelector('.metric-reference')!.textContent).toBe(
                metric.reference === null ? '-' : String(metric.reference),
            );
        });
        expect(h.app.refs.referenceNote.textContent).toBe(
            `reference: ${cannedReport.reference_note}`,
        );
    });

    it('renders swatch bytes and chromaticities exactly as sent', async () => {
        const h = await mount();
        await solveOnce(h);

        const cells = Array.from(h.app.refs.swatchGrid.querySelectorAll('.swatch'));
        expect(cells.length).toBe(cannedPreviewRows.length);
        cannedPreviewRows.forEach((row, i) => {
            const cell = cells[i] as HTMLElement;
            expect(cell.getAttribute('data-material')).toBe(row.material);
            expect(cell.getAttribute('data-under')).toBe(row.under);
            expect(cell.getAttribute('data-srgb')).toBe(row.srgb.join(','));
            const patch = cell.querySelector('.swatch-color') as HTMLElement;
            expect(patch.style.backgroundColor).toBe(
                `rgb(${row.srgb[0]}, ${row.srgb[1]}, ${row.srgb[2]})`,
            );
            const caption = cell.querySelector('.swatch-caption')!.textContent!;
            expect(caption).toContain(`${row.material} under ${row.under}`);
            expect(caption).toContain(String(row.uv[0]));
            expect(caption).toContain(String(row.uv[1]));
        });

        const dots = Array.from(h.app.refs.scatter.querySelectorAll('circle'));
        expect(dots.length).toBe(cannedPreviewRows.length);
        const first = cannedPreviewRows[0]!;
        expect(dots[0]!.querySelector('title')!.textContent).toBe(
            `${first.material} under ${first.under}: ` +
                `${String(first.uv[0])}, ${String(first.uv[1])}`,
        );
    });

    it('shows an infeasible candidate flagged, with violations marked', async () => {
        const h = await mount();
        h.routes.solve = () => jsonResponse(cannedInfeasibleBody, 422);
        await solveOnce(h);

        expect(h.app.refs.resultBanner.textContent).toBe(
            'infeasible: showing the least-violating candidate',
        );
        expect(h.app.refs.resultBanner.className).toContain('banner-infeasible');
        const candidate = cannedInfeasibleBody.solution!;
        expect(h.app.refs.objective.textContent).toContain('feasible: false');
        expect(h.app.refs.objective.textContent).toContain(
            String(candidate.objective),
        );

        const gauges = Array.from(h.app.refs.gauges.querySelectorAll('li.gauge'));
        expect(gauges.length).toBe(candidate.constraints.length);
        let violatedSeen = 0;
        candidate.constraints.forEach((row, i) => {
            const gauge = gauges[i]!;
            expect(gauge.querySelector('.gauge-values')!.textContent).toBe(
                `${String(row.value)} / ${String(row.bound)}`,
            );
            const violated = row.value > row.bound;
            expect(gauge.classList.contains('violated')).toBe(violated);
            if (violated) {
                violatedSeen += 1;
            }
        });
        expect(violatedSeen).toBeGreaterThan(0);
    });
});

describe('interaction rules', () => {
    it('tuning marks the shown solution stale without hiding it', async () => {
        const h = await mount();
        await solveOnce(h);

        h.app.refs.deltaSlider.value = '0.12';
        h.app.refs.deltaSlider.dispatchEvent(new Event('input'));

        expect(h.app.state().stale).toBe(true);
        expect(h.app.refs.results.hidden).toBe(false);
        expect(h.app.refs.resultBanner.textContent).toBe(
            'feasible solution (stale: parameters changed since this solve)',
        );
        expect(h.app.refs.resultBanner.className).toContain('banner-stale');
        expect(h.app.refs.objective.textContent).toContain(
            String(cannedSolution.objective),
        );
    });

    it('switching problems clears the results pane', async () => {
        const h = await mount();
        await solveOnce(h);
        expect(h.app.refs.results.hidden).toBe(false);

        h.app.refs.problemSelect.value = 'scc_3ch';
        h.app.refs.problemSelect.dispatchEvent(new Event('change'));

        expect(h.app.state().selectedName).toBe('scc_3ch');
        expect(h.app.state().solution).toBeNull();
        expect(h.app.refs.results.hidden).toBe(true);
        expect(h.app.refs.resultBanner.hidden).toBe(true);
    });

    it('the mirror toggle previews both columns under light 1', async () => {
        const h = await mount();
        await solveOnce(h);

        const firstPreview = h.requests.find((r) => r.path === '/api/preview')!;
        expect((firstPreview.body as { alpha2: number[] }).alpha2).toEqual(
            cannedSolution.alpha2,
        );

        h.app.refs.mirrorToggle.checked = true;
        h.app.refs.mirrorToggle.dispatchEvent(new Event('change'));
        await h.app.idle();

        const previews = h.requests.filter((r) => r.path === '/api/preview');
        const last = previews[previews.length - 1]!.body as {
            problem: unknown;
            alpha1: number[];
            alpha2: number[];
        };
        expect(last.alpha2).toEqual(cannedSolution.alpha1);
        // the preview must reuse the as-solved problem, not a retuned one
        const sent = solveRequests(h)[0]!.body as Record<string, unknown>;
        const { timeout_ms: _omit, ...solvedProblem } = sent;
        expect(last.problem).toEqual(solvedProblem);

        const cells = Array.from(h.app.refs.swatchGrid.querySelectorAll('.swatch'));
        cannedPreviewIdenticalRows.forEach((row, i) => {
            expect((cells[i] as HTMLElement).getAttribute('data-srgb')).toBe(
                row.srgb.join(','),
            );
        });
        // identical weights: each material's two columns now agree byte for byte
        for (let i = 0; i < cells.length; i += 2) {
            expect((cells[i] as HTMLElement).getAttribute('data-srgb')).toBe(
                (cells[i + 1] as HTMLElement).getAttribute('data-srgb'),
            );
        }
    });

    it('a failed re-solve banners the error and keeps the old results', async () => {
        const h = await mount();
        await solveOnce(h);

        h.routes.solve = () => Promise.reject(new Error('connection refused'));
        await solveOnce(h);

        expect(h.app.refs.errorBanner.hidden).toBe(false);
        expect(h.app.refs.errorBanner.textContent).toBe('connection refused');
        expect(h.app.refs.results.hidden).toBe(false);
        expect(h.app.refs.objective.textContent).toContain(
            String(cannedSolution.objective),
        );
        expect(h.app.refs.solveButton.disabled).toBe(false);
        expect(h.app.refs.solveButton.textContent).toBe('solve');
    });

    it('runs at most one solve at a time', async () => {
        const h = await mount();
        let release!: (r: Response) => void;
        h.routes.solve = () =>
            new Promise<Response>((resolve) => {
                release = resolve;
            });

        h.app.refs.solveButton.click();
        h.app.refs.solveButton.click();
        expect(solveRequests(h).length).toBe(1);
        expect(h.app.refs.solveButton.disabled).toBe(true);
        expect(h.app.refs.solveButton.textContent).toBe('solving...');

        release(jsonResponse(cannedSolution));
        await h.app.idle();
        expect(solveRequests(h).length).toBe(1);
        expect(h.app.state().solution).toEqual(cannedSolution);
        expect(h.app.refs.solveButton.disabled).toBe(false);
    });
});
