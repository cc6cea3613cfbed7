/* DOM construction and rendering.
 *
 * Rendering is write-only: numbers and swatch bytes are stringified
 * straight off the API payloads (String(x), never reformatted), so what
 * the user reads is exactly what the server sent.  Layout math for the
 * scatter is the one place the client touches the values, and it only
 * positions them.
 */

import type { SessionState } from './state';
import { SLIDER_MAX, SLIDER_MIN, selectedProblem } from './state';
import type { SwatchRowPayload } from './types';

export interface Refs {
    problemSelect: HTMLSelectElement;
    deltaSlider: HTMLInputElement;
    deltaValue: HTMLElement;
    deltaWhiteSlider: HTMLInputElement;
    deltaWhiteValue: HTMLElement;
    seedInput: HTMLInputElement;
    mirrorToggle: HTMLInputElement;
    solveButton: HTMLButtonElement;
    errorBanner: HTMLElement;
    resultBanner: HTMLElement;
    results: HTMLElement;
    objective: HTMLElement;
    gauges: HTMLElement;
    metricsBody: HTMLElement;
    referenceNote: HTMLElement;
    swatchGrid: HTMLElement;
    scatter: SVGSVGElement;
}

const SVG_NS = 'http://www.w3.org/2000/svg';
const SCATTER_W = 260;
const SCATTER_H = 248;
const UV_SCALE = 400; // u' in [0, 0.65], v' in [0, 0.62] fill the viewBox

function el<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    className?: string,
    text?: string,
): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    if (className) {
        node.className = className;
    }
    if (text !== undefined) {
        node.textContent = text;
    }
    return node;
}

function labeled(labelText: string, control: HTMLElement): HTMLElement {
    const wrap = el('label', 'control');
    wrap.append(el('span', 'control-label', labelText), control);
    return wrap;
}

export function buildShell(root: HTMLElement): Refs {
    root.textContent = '';

    const header = el('header');
    header.append(el('h1', undefined, 'specled console'));
    header.append(
        el(
            'p',
            'tagline',
            'pick a problem, tune the budgets, solve, and read the lights',
        ),
    );

    const problemSelect = el('select');
    problemSelect.id = 'problem';

    const deltaSlider = el('input');
    deltaSlider.type = 'range';
    deltaSlider.id = 'delta';
    deltaSlider.min = String(SLIDER_MIN);
    deltaSlider.max = String(SLIDER_MAX);
    deltaSlider.step = '0.001';
    const deltaValue = el('span', 'control-value');
    deltaValue.id = 'delta-value';

    const deltaWhiteSlider = el('input');
    deltaWhiteSlider.type = 'range';
    deltaWhiteSlider.id = 'delta-white';
    deltaWhiteSlider.min = String(SLIDER_MIN);
    deltaWhiteSlider.max = String(SLIDER_MAX);
    deltaWhiteSlider.step = '0.001';
    const deltaWhiteValue = el('span', 'control-value');
    deltaWhiteValue.id = 'delta-white-value';

    const seedInput = el('input');
    seedInput.type = 'number';
    seedInput.id = 'seed';
    seedInput.step = '1';

    const mirrorToggle = el('input');
    mirrorToggle.type = 'checkbox';
    mirrorToggle.id = 'mirror';

    const solveButton = el('button', 'solve', 'solve');
    solveButton.id = 'solve';

    const controls = el('div', 'controls');
    controls.append(
        labeled('problem', problemSelect),
        labeled('delta (chromatic budget)', deltaSlider),
        deltaValue,
        labeled('delta_white (white budget)', deltaWhiteSlider),
        deltaWhiteValue,
        labeled('seed', seedInput),
        labeled('debug: preview both columns under light 1', mirrorToggle),
        solveButton,
    );

    const errorBanner = el('div', 'banner banner-error');
    errorBanner.id = 'banner-error';
    errorBanner.hidden = true;
    const resultBanner = el('div', 'banner');
    resultBanner.id = 'banner-result';
    resultBanner.hidden = true;

    const results = el('section', 'results');
    results.id = 'results';
    results.hidden = true;

    const objective = el('div', 'objective');
    objective.id = 'objective';

    const gauges = el('ul', 'gauges');
    gauges.id = 'gauges';

    const metricsTable = el('table', 'metrics');
    const metricsHead = el('thead');
    const headRow = el('tr');
    headRow.append(
        el('th', undefined, 'metric'),
        el('th', undefined, 'measured'),
        el('th', undefined, 'reference'),
    );
    metricsHead.append(headRow);
    const metricsBody = el('tbody');
    metricsBody.id = 'metrics';
    metricsTable.append(metricsHead, metricsBody);
    const referenceNote = el('p', 'reference-note');
    referenceNote.id = 'reference-note';

    const swatchGrid = el('div', 'swatches');
    swatchGrid.id = 'swatches';

    const scatter = document.createElementNS(SVG_NS, 'svg');
    scatter.id = 'scatter';
    scatter.setAttribute('viewBox', `0 0 ${SCATTER_W} ${SCATTER_H}`);
    scatter.setAttribute('width', String(SCATTER_W));
    scatter.setAttribute('height', String(SCATTER_H));

    results.append(
        objective,
        gauges,
        metricsTable,
        referenceNote,
        el('h2', undefined, 'swatches'),
        swatchGrid,
        el('h2', undefined, "u'v' chromaticity"),
        scatter,
    );

    root.append(header, controls, errorBanner, resultBanner, results);

    return {
        problemSelect,
        deltaSlider,
        deltaValue,
        deltaWhiteSlider,
        deltaWhiteValue,
        seedInput,
        mirrorToggle,
        solveButton,
        errorBanner,
        resultBanner,
        results,
        objective,
        gauges,
        metricsBody,
        referenceNote,
        swatchGrid,
        scatter,
    };
}

function renderProblemOptions(refs: Refs, state: SessionState): void {
    const current = refs.problemSelect.value;
    refs.problemSelect.textContent = '';
    for (const entry of state.problems) {
        const option = el('option');
        option.value = entry.name;
        const form = entry.constraint_form ? ` / ${entry.constraint_form}` : '';
        option.textContent = `${entry.name} (${entry.mode}${form}, ${entry.channels}ch)`;
        refs.problemSelect.append(option);
    }
    const wanted = state.selectedName ?? current;
    if (wanted) {
        refs.problemSelect.value = wanted;
    }
}

function renderControls(refs: Refs, state: SessionState): void {
    refs.deltaSlider.value = String(state.params.delta);
    refs.deltaValue.textContent = String(state.params.delta);
    refs.deltaWhiteSlider.value = String(state.params.deltaWhite);
    refs.deltaWhiteValue.textContent = String(state.params.deltaWhite);
    refs.seedInput.value = String(state.params.seed);
    refs.mirrorToggle.checked = state.mirrorLights;
    refs.solveButton.disabled =
        state.phase !== 'ready' || selectedProblem(state) === null;
    refs.solveButton.textContent = state.phase === 'solving' ? 'solving...' : 'solve';
}

function renderBanners(refs: Refs, state: SessionState): void {
    refs.errorBanner.hidden = state.banner === null;
    refs.errorBanner.textContent = state.banner ?? '';

    if (state.solution === null) {
        refs.resultBanner.hidden = true;
        return;
    }
    refs.resultBanner.hidden = false;
    const bits: string[] = [];
    let cls = 'banner ';
    if (state.infeasible) {
        bits.push('infeasible: showing the least-violating candidate');
        cls += 'banner-infeasible';
    } else {
        bits.push('feasible solution');
        cls += 'banner-feasible';
    }
    if (state.stale) {
        bits.push('(stale: parameters changed since this solve)');
        cls += ' banner-stale';
    }
    refs.resultBanner.className = cls;
    refs.resultBanner.textContent = bits.join(' ');
}

function renderSolution(refs: Refs, state: SessionState): void {
    refs.results.hidden = state.solution === null;
    if (state.solution === null) {
        return;
    }
    const sol = state.solution;
    refs.objective.textContent =
        `objective ${String(sol.objective)} ` +
        `(feasible: ${String(sol.feasible)}, seed ${String(sol.seed)})`;

    refs.gauges.textContent = '';
    for (const row of sol.constraints) {
        const item = el('li', 'gauge');
        const violated = row.value > row.bound;
        if (violated) {
            item.classList.add('violated');
        }
        item.append(el('span', 'gauge-name', row.name));
        item.append(
            el('span', 'gauge-values', `${String(row.value)} / ${String(row.bound)}`),
        );
        const bar = el('div', 'gauge-bar');
        const fill = el('div', 'gauge-fill');
        const frac =
            row.bound > 0 ? Math.min(1, row.value / row.bound) : violated ? 1 : 0;
        fill.style.width = `${frac * 100}%`;
        bar.append(fill);
        item.append(bar);
        refs.gauges.append(item);
    }
}

function renderMetrics(refs: Refs, state: SessionState): void {
    refs.metricsBody.textContent = '';
    refs.referenceNote.textContent = '';
    if (state.report === null) {
        return;
    }
    for (const metric of state.report.metrics) {
        const row = el('tr', 'metric');
        row.dataset.label = metric.label;
        row.append(el('td', undefined, metric.label));
        row.append(el('td', 'metric-value', String(metric.value)));
        row.append(
            el(
                'td',
                'metric-reference',
                metric.reference === null ? '-' : String(metric.reference),
            ),
        );
        refs.metricsBody.append(row);
    }
    refs.referenceNote.textContent = `reference: ${state.report.reference_note}`;
}

function swatchCell(row: SwatchRowPayload): HTMLElement {
    const cell = el('div', 'swatch');
    cell.dataset.material = row.material;
    cell.dataset.under = row.under;
    cell.dataset.srgb = row.srgb.join(',');
    const patch = el('div', 'swatch-color');
    patch.style.backgroundColor = `rgb(${row.srgb[0]}, ${row.srgb[1]}, ${row.srgb[2]})`;
    const caption = el(
        'div',
        'swatch-caption',
        `${row.material} under ${row.under}
u' ${String(row.uv[0])}
v' ${String(row.uv[1])}`,
    );
    cell.append(patch, caption);
    return cell;
}

function renderSwatches(refs: Refs, state: SessionState): void {
    refs.swatchGrid.textContent = '';
    if (state.swatches === null) {
        return;
    }
    for (const row of state.swatches) {
        refs.swatchGrid.append(swatchCell(row));
    }
}

function renderScatter(refs: Refs, state: SessionState): void {
    refs.scatter.textContent = '';
    if (state.swatches === null) {
        return;
    }
    for (const row of state.swatches) {
        const dot = document.createElementNS(SVG_NS, 'circle');
        dot.setAttribute('cx', String(row.uv[0] * UV_SCALE));
        dot.setAttribute('cy', String(SCATTER_H - row.uv[1] * UV_SCALE));
        dot.setAttribute('r', row.material === 'white' ? '4' : '6');
        dot.setAttribute(
            'fill',
            `rgb(${row.srgb[0]}, ${row.srgb[1]}, ${row.srgb[2]})`,
        );
        dot.setAttribute('stroke', row.under === 'w1' ? '#333' : '#999');
        dot.dataset.material = row.material;
        dot.dataset.under = row.under;
        const title = document.createElementNS(SVG_NS, 'title');
        title.textContent =
            `${row.material} under ${row.under}: ` +
            `${String(row.uv[0])}, ${String(row.uv[1])}`;
        dot.append(title);
        refs.scatter.append(dot);
    }
}

export function render(refs: Refs, state: SessionState): void {
    renderProblemOptions(refs, state);
    renderControls(refs, state);
    renderBanners(refs, state);
    renderSolution(refs, state);
    renderMetrics(refs, state);
    renderSwatches(refs, state);
    renderScatter(refs, state);
}
