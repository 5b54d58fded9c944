// Pure scene-graph construction. Everything the DOM layer paints is computed
// here from the fetched JSON plus ViewState, so identical inputs always give
// a deep-equal scene.

import {
    EXPECTED_SCHEMA,
    FunctionDetailRow,
    GenealogyDoc,
    LineageDoc,
} from './types';

export const VIEW_WIDTH = 960;
export const VIEW_HEIGHT = 540;
export const MARGIN = 48;

export const UNRESOLVED = 'unresolved';
export const NEUTRAL_COLOR = '#9e9e9e';

// Deterministic palette; categories map to it by sorted-name index so the
// same category keeps its color across reloads.
export const PALETTE = [
    '#e6194b', '#3cb44b', '#ffe119', '#4363d8', '#f58231', '#911eb4',
    '#46f0f0', '#f032e6', '#bcf60c', '#fabebe', '#008080', '#e6beff',
    '#9a6324', '#800000', '#aaffc3', '#808000',
];

export interface SceneNode {
    id: string;
    name: string;
    year: number;
    x: number;
    y: number;
    category: string;
    color: string;
}

export interface SceneEdge {
    src: string;
    dst: string;
    x1: number;
    y1: number;
    x2: number;
    y2: number;
    width: number;
    ambiguous: boolean;
}

export interface LegendEntry {
    category: string;
    color: string;
}

export interface Scene {
    nodes: SceneNode[];
    edges: SceneEdge[];
    legend: LegendEntry[];
    yearDomain: [number, number];
    schemaError: string | null;
}

export function edgeWidth(weight: number): number {
    // weights span orders of magnitude; min 1px keeps tiny edges visible
    return Math.max(1, Math.log(1 + weight));
}

export function yearToX(year: number, domain: [number, number]): number {
    const [lo, hi] = domain;
    const span = hi - lo || 1;
    return MARGIN + ((year - lo) / span) * (VIEW_WIDTH - 2 * MARGIN);
}

function primaryCategory(labels: Record<string, string[]>, slot: string): string {
    const values = labels[slot];
    if (!values || values.length === 0) return UNRESOLVED;
    return [...values].sort()[0];
}

export function categoryColors(categories: string[]): Map<string, string> {
    const named = categories.filter(c => c !== UNRESOLVED).sort();
    const colors = new Map<string, string>();
    named.forEach((c, i) => colors.set(c, PALETTE[i % PALETTE.length]));
    colors.set(UNRESOLVED, NEUTRAL_COLOR);
    return colors;
}

// Stable per-id jitter so nodes of one lane do not overlap; pure string hash.
function jitter(id: string): number {
    let h = 2166136261;
    for (let i = 0; i < id.length; i++) {
        h = (h ^ id.charCodeAt(i)) * 16777619;
        h >>>= 0;
    }
    return (h % 1000) / 1000;
}

export function yearDomainOf(doc: GenealogyDoc): [number, number] {
    if (doc.nodes.length === 0) return [0, 0];
    const years = doc.nodes.map(n => n.year);
    return [Math.min(...years), Math.max(...years)];
}

/**
 * Overall view: every specimen positioned by year on the x-axis, colored by
 * its value of the active label slot, inside a category-banded lane.
 * `upToYear`, when finite, restricts the scene to specimens of that year or
 * earlier (used by the animation; the full domain still fixes positions so
 * frames never shift).
 */
export function renderOverall(
    doc: GenealogyDoc,
    labelSlot: string,
    upToYear: number = Infinity,
): Scene {
    if (doc.schema !== EXPECTED_SCHEMA) {
        return {
            nodes: [],
            edges: [],
            legend: [],
            yearDomain: [0, 0],
            schemaError: `unsupported schema version ${doc.schema}, expected ${EXPECTED_SCHEMA}`,
        };
    }
    const domain = yearDomainOf(doc);
    const categories = new Set<string>();
    for (const n of doc.nodes) categories.add(primaryCategory(n.labels, labelSlot));
    const ordered = [...categories].filter(c => c !== UNRESOLVED).sort();
    if (categories.has(UNRESOLVED)) ordered.push(UNRESOLVED);
    const colors = categoryColors(ordered);
    const laneHeight = (VIEW_HEIGHT - 2 * MARGIN) / Math.max(1, ordered.length);
    const laneOf = new Map(ordered.map((c, i) => [c, i]));

    const visible = doc.nodes.filter(n => n.year <= upToYear);
    const nodes: SceneNode[] = visible
        .map(n => {
            const category = primaryCategory(n.labels, labelSlot);
            const lane = laneOf.get(category) ?? 0;
            return {
                id: n.id,
                name: n.name,
                year: n.year,
                x: yearToX(n.year, domain),
                y: MARGIN + lane * laneHeight + (0.15 + 0.7 * jitter(n.id)) * laneHeight,
                category,
                color: colors.get(category) ?? NEUTRAL_COLOR,
            };
        })
        .sort((a, b) => a.id.localeCompare(b.id));

    const byId = new Map(nodes.map(n => [n.id, n]));
    const edges: SceneEdge[] = doc.edges
        .filter(e => byId.has(e.src) && byId.has(e.dst))
        .map(e => {
            const s = byId.get(e.src)!;
            const d = byId.get(e.dst)!;
            return {
                src: e.src,
                dst: e.dst,
                x1: s.x,
                y1: s.y,
                x2: d.x,
                y2: d.y,
                width: edgeWidth(e.weight),
                ambiguous: e.ambiguous_direction,
            };
        })
        .sort((a, b) => a.src.localeCompare(b.src) || a.dst.localeCompare(b.dst));

    const legend: LegendEntry[] = ordered.map(category => ({
        category,
        color: colors.get(category) ?? NEUTRAL_COLOR,
    }));
    return { nodes, edges, legend, yearDomain: domain, schemaError: null };
}

/** One cumulative animation frame; the final frame equals the static view. */
export function animationFrame(
    doc: GenealogyDoc,
    labelSlot: string,
    year: number,
): Scene {
    return renderOverall(doc, labelSlot, year);
}

export function animationYears(doc: GenealogyDoc): number[] {
    return [...new Set(doc.nodes.map(n => n.year))].sort((a, b) => a - b);
}

// -- detailed lineage view ----------------------------------------------------

export interface OverlayPath {
    src: string;
    dst: string;
    color: 'red' | 'blue';
    width: number;
}

export interface DetailScene {
    focus: string;
    paths: OverlayPath[];
    panel: FunctionDetailRow[];
    schemaError: string | null;
}

/**
 * Detail overlay: red paths toward ancestors, blue toward descendants,
 * thickness from edge weight; the panel lists the focus's function pairs.
 */
export function renderDetail(doc: GenealogyDoc, lineage: LineageDoc): DetailScene {
    if (lineage.schema !== EXPECTED_SCHEMA) {
        return {
            focus: lineage.focus,
            paths: [],
            panel: [],
            schemaError: `unsupported schema version ${lineage.schema}, expected ${EXPECTED_SCHEMA}`,
        };
    }
    const ancestors = new Set(lineage.ancestors.map(e => e.id));
    const descendants = new Set(lineage.descendants.map(e => e.id));
    const paths: OverlayPath[] = [];
    for (const e of doc.edges) {
        const toFocusSide = e.dst === lineage.focus || ancestors.has(e.dst);
        if (ancestors.has(e.src) && toFocusSide) {
            paths.push({ src: e.src, dst: e.dst, color: 'red', width: edgeWidth(e.weight) });
        }
        const fromFocusSide = e.src === lineage.focus || descendants.has(e.src);
        if (fromFocusSide && descendants.has(e.dst)) {
            paths.push({ src: e.src, dst: e.dst, color: 'blue', width: edgeWidth(e.weight) });
        }
    }
    paths.sort((a, b) => a.src.localeCompare(b.src) || a.dst.localeCompare(b.dst));
    return {
        focus: lineage.focus,
        paths,
        panel: [...lineage.function_detail],
        schemaError: null,
    };
}
