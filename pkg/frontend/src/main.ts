// DOM wiring: paints the pure scene graph as SVG and maps user interaction
// to ViewState transitions. All layout decisions live in scene.ts.

import { ApiClient } from './api';
import {
    DetailScene,
    Scene,
    VIEW_HEIGHT,
    VIEW_WIDTH,
    animationYears,
    renderDetail,
    renderOverall,
} from './scene';
import {
    DEFAULT_STATE,
    GenealogyDoc,
    ViewState,
    selectSpecimen,
    setLabelSlot,
} from './types';

const SVG_NS = 'http://www.w3.org/2000/svg';
const LABEL_SLOTS = [
    'file', 'family', 'vulnerability', 'behavior', 'class', 'pack', 'fud', 'unknown',
];

let state: ViewState = { ...DEFAULT_STATE };
let genealogy: GenealogyDoc | null = null;
let animationTimer: number | null = null;
const api = new ApiClient();

function el<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    text?: string,
): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    if (text !== undefined) node.textContent = text;
    return node;
}

function paintScene(svg: SVGSVGElement, scene: Scene, detail: DetailScene | null): void {
    svg.replaceChildren();
    if (scene.schemaError) {
        const banner = document.createElementNS(SVG_NS, 'text');
        banner.setAttribute('x', '16');
        banner.setAttribute('y', '24');
        banner.setAttribute('fill', 'red');
        banner.textContent = scene.schemaError;
        svg.appendChild(banner);
        return;
    }
    for (const e of scene.edges) {
        const line = document.createElementNS(SVG_NS, 'line');
        line.setAttribute('x1', String(e.x1));
        line.setAttribute('y1', String(e.y1));
        line.setAttribute('x2', String(e.x2));
        line.setAttribute('y2', String(e.y2));
        line.setAttribute('stroke', '#bbb');
        line.setAttribute('stroke-width', String(e.width));
        if (e.ambiguous) line.setAttribute('stroke-dasharray', '4 2');
        svg.appendChild(line);
    }
    if (detail) {
        const byId = new Map(scene.nodes.map(n => [n.id, n]));
        for (const p of detail.paths) {
            const s = byId.get(p.src);
            const d = byId.get(p.dst);
            if (!s || !d) continue;
            const line = document.createElementNS(SVG_NS, 'line');
            line.setAttribute('x1', String(s.x));
            line.setAttribute('y1', String(s.y));
            line.setAttribute('x2', String(d.x));
            line.setAttribute('y2', String(d.y));
            line.setAttribute('stroke', p.color);
            line.setAttribute('stroke-width', String(p.width));
            svg.appendChild(line);
        }
    }
    for (const n of scene.nodes) {
        const dot = document.createElementNS(SVG_NS, 'circle');
        dot.setAttribute('cx', String(n.x));
        dot.setAttribute('cy', String(n.y));
        dot.setAttribute('r', n.id === state.selectedSpecimenId ? '8' : '5');
        dot.setAttribute('fill', n.color);
        dot.addEventListener('click', () => void onSelect(n.id));
        const title = document.createElementNS(SVG_NS, 'title');
        title.textContent = `${n.name} (${n.year}, ${n.category})`;
        dot.appendChild(title);
        svg.appendChild(dot);
    }
}

function paintLegend(target: HTMLElement, scene: Scene): void {
    target.replaceChildren();
    for (const entry of scene.legend) {
        const item = el('span', ` ${entry.category} `);
        item.style.borderLeft = `12px solid ${entry.color}`;
        item.style.marginRight = '12px';
        target.appendChild(item);
    }
}

function paintPanel(target: HTMLElement, detail: DetailScene | null): void {
    target.replaceChildren();
    if (!detail) return;
    target.appendChild(el('h3', `lineage of ${detail.focus}`));
    for (const row of detail.panel) {
        const text =
            `${row.src_specimen}.${row.src_function} -> ` +
            `${row.dst_specimen}.${row.dst_function} ` +
            `(sim ${row.similarity.toFixed(3)}, w ${row.weight}) ` +
            `[${row.src_tags.join(',')}] -> [${row.dst_tags.join(',')}]`;
        target.appendChild(el('div', text));
    }
}

async function redraw(): Promise<void> {
    if (!genealogy) return;
    const svg = document.getElementById('graph') as unknown as SVGSVGElement;
    const year = state.animationYear ?? Infinity;
    const scene = renderOverall(genealogy, state.activeLabelSlot, year);
    let detail: DetailScene | null = null;
    if (state.selectedSpecimenId) {
        const lineage = await api.lineage(state.selectedSpecimenId, state.depth);
        if (lineage) detail = renderDetail(genealogy, lineage);
    }
    paintScene(svg, scene, detail);
    paintLegend(document.getElementById('legend')!, scene);
    paintPanel(document.getElementById('panel')!, detail);
}

async function onSelect(id: string): Promise<void> {
    state = selectSpecimen(state, state.selectedSpecimenId === id ? null : id);
    await redraw();
}

function stopAnimation(): void {
    if (animationTimer !== null) {
        window.clearInterval(animationTimer);
        animationTimer = null;
    }
}

function startAnimation(): void {
    if (!genealogy) return;
    stopAnimation();
    const years = animationYears(genealogy);
    let idx = 0;
    animationTimer = window.setInterval(() => {
        if (idx >= years.length) {
            stopAnimation();
            state = { ...state, animationYear: null }; // final frame = static view
        } else {
            state = { ...state, animationYear: years[idx] };
            idx += 1;
        }
        void redraw();
    }, 600);
}

function buildControls(): void {
    const controls = document.getElementById('controls')!;
    const slotSelect = el('select');
    for (const slot of LABEL_SLOTS) {
        const opt = el('option', slot);
        opt.value = slot;
        if (slot === state.activeLabelSlot) opt.selected = true;
        slotSelect.appendChild(opt);
    }
    slotSelect.addEventListener('change', () => {
        state = setLabelSlot(state, slotSelect.value);
        void redraw();
    });
    const play = el('button', 'animate years');
    play.addEventListener('click', startAnimation);
    const stop = el('button', 'stop');
    stop.addEventListener('click', () => {
        stopAnimation();
        state = { ...state, animationYear: null };
        void redraw();
    });
    controls.append(slotSelect, play, stop);
}

export async function bootstrap(): Promise<void> {
    const svg = document.getElementById('graph') as unknown as SVGSVGElement;
    svg.setAttribute('viewBox', `0 0 ${VIEW_WIDTH} ${VIEW_HEIGHT}`);
    buildControls();
    genealogy = await api.genealogy();
    await redraw();
}

if (typeof document !== 'undefined' && document.getElementById('graph')) {
    void bootstrap();
}
