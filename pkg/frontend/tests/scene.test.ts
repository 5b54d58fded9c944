import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { describe, expect, it } from 'vitest';

import {
    MARGIN,
    NEUTRAL_COLOR,
    VIEW_WIDTH,
    animationFrame,
    animationYears,
    edgeWidth,
    renderDetail,
    renderOverall,
    yearToX,
} from '../src/scene';
import {
    DEFAULT_STATE,
    GenealogyDoc,
    LineageDoc,
    selectSpecimen,
    setLabelSlot,
} from '../src/types';

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), 'fixtures');

function loadFixture<T>(name: string): T {
    return JSON.parse(readFileSync(join(FIXTURES, name), 'utf-8')) as T;
}

function node(id: string, year: number, labels: Record<string, string[]> = {}) {
    return { id, name: id, year, labels };
}

function edge(src: string, dst: string, weight: number) {
    return { src, dst, weight, ambiguous_direction: false, function_pairs: [] };
}

const chainDoc: GenealogyDoc = {
    schema: 1,
    nodes: [node('a', 2001), node('b', 2009), node('c', 2016)],
    edges: [edge('a', 'b', 12), edge('b', 'c', 7)],
};

const chainLineageOfB: LineageDoc = {
    schema: 1,
    focus: 'b',
    ancestors: [{ id: 'a', depth: 1, path_weight: 12 }],
    descendants: [{ id: 'c', depth: 1, path_weight: 7 }],
    function_detail: [],
};

describe('renderOverall', () => {
    it('places a single unlabeled node as one neutral dot at its year', () => {
        const doc: GenealogyDoc = { schema: 1, nodes: [node('x', 2010)], edges: [] };
        const scene = renderOverall(doc, 'class');
        expect(scene.nodes).toHaveLength(1);
        expect(scene.nodes[0].color).toBe(NEUTRAL_COLOR);
        expect(scene.nodes[0].category).toBe('unresolved');
        expect(scene.nodes[0].x).toBe(yearToX(2010, scene.yearDomain));
    });

    it('positions nodes by year on the x-axis, left to right', () => {
        const scene = renderOverall(chainDoc, 'class');
        const xOf = new Map(scene.nodes.map(n => [n.id, n.x]));
        expect(xOf.get('a')!).toBeLessThan(xOf.get('b')!);
        expect(xOf.get('b')!).toBeLessThan(xOf.get('c')!);
        expect(xOf.get('a')).toBe(MARGIN);
        expect(xOf.get('c')).toBe(VIEW_WIDTH - MARGIN);
        // interpolated exactly: (2009-2001)/(2016-2001) of the inner width
        const expected = MARGIN + ((2009 - 2001) / (2016 - 2001)) * (VIEW_WIDTH - 2 * MARGIN);
        expect(xOf.get('b')).toBeCloseTo(expected, 10);
    });

    it('computes edge width as max(1, log(1+weight))', () => {
        const scene = renderOverall(chainDoc, 'class');
        const widths = new Map(scene.edges.map(e => [`${e.src}->${e.dst}`, e.width]));
        expect(widths.get('a->b')).toBeCloseTo(Math.log(13), 12);
        expect(widths.get('b->c')).toBeCloseTo(Math.log(8), 12);
        expect(edgeWidth(0)).toBe(1); // 1px floor
        expect(edgeWidth(1)).toBe(1);
    });

    it('assigns 12 distinct colors to 12 category values with a legend', () => {
        const classes = [
            'adware', 'backdoor', 'bot', 'dropper', 'greyware', 'keylogger',
            'locker', 'miner', 'rat', 'rootkit', 'virus', 'worm',
        ];
        const doc: GenealogyDoc = {
            schema: 1,
            nodes: classes.map((c, i) => node(`s${i}`, 2000 + i, { class: [c] })),
            edges: [],
        };
        const scene = renderOverall(doc, 'class');
        expect(scene.legend.map(l => l.category)).toEqual(classes);
        const colors = scene.legend.map(l => l.color);
        expect(new Set(colors).size).toBe(12);
        for (const n of scene.nodes) {
            expect(n.color).not.toBe(NEUTRAL_COLOR);
        }
    });

    it('is a pure function: identical inputs give deep-equal scenes', () => {
        expect(renderOverall(chainDoc, 'class')).toEqual(renderOverall(chainDoc, 'class'));
    });

    it('flags a schema version mismatch instead of rendering', () => {
        const scene = renderOverall({ ...chainDoc, schema: 2 }, 'class');
        expect(scene.schemaError).toMatch(/schema version 2/);
        expect(scene.nodes).toHaveLength(0);
    });

    it('renders the real pipeline export', () => {
        const doc = loadFixture<GenealogyDoc>('genealogy.json');
        const scene = renderOverall(doc, 'class');
        expect(scene.schemaError).toBeNull();
        expect(scene.nodes).toHaveLength(doc.nodes.length);
        const years = new Map(doc.nodes.map(n => [n.id, n.year]));
        for (const n of scene.nodes) {
            expect(n.x).toBe(yearToX(years.get(n.id)!, scene.yearDomain));
        }
        expect(scene.legend.some(l => l.category === 'worm')).toBe(true);
        expect(scene.legend[scene.legend.length - 1].category).toBe('unresolved');
    });
});

describe('renderDetail', () => {
    it('chain focus b: exactly one red path to a and one blue path to c', () => {
        const detail = renderDetail(chainDoc, chainLineageOfB);
        expect(detail.paths).toHaveLength(2);
        const red = detail.paths.filter(p => p.color === 'red');
        const blue = detail.paths.filter(p => p.color === 'blue');
        expect(red).toEqual([{ src: 'a', dst: 'b', color: 'red', width: edgeWidth(12) }]);
        expect(blue).toEqual([{ src: 'b', dst: 'c', color: 'blue', width: edgeWidth(7) }]);
    });

    it('isolated focus renders an empty overlay and panel', () => {
        const lineage: LineageDoc = {
            schema: 1, focus: 'x', ancestors: [], descendants: [], function_detail: [],
        };
        const doc: GenealogyDoc = { schema: 1, nodes: [node('x', 2010)], edges: [] };
        const detail = renderDetail(doc, lineage);
        expect(detail.paths).toHaveLength(0);
        expect(detail.panel).toHaveLength(0);
    });

    it('deep lineage colors multi-hop ancestor paths red', () => {
        const doc: GenealogyDoc = {
            schema: 1,
            nodes: [node('a', 2000), node('b', 2001), node('c', 2002)],
            edges: [edge('a', 'b', 5), edge('b', 'c', 3)],
        };
        const lineage: LineageDoc = {
            schema: 1,
            focus: 'c',
            ancestors: [
                { id: 'b', depth: 1, path_weight: 3 },
                { id: 'a', depth: 2, path_weight: 3 },
            ],
            descendants: [],
            function_detail: [],
        };
        const detail = renderDetail(doc, lineage);
        expect(detail.paths.map(p => [p.src, p.dst, p.color])).toEqual([
            ['a', 'b', 'red'],
            ['b', 'c', 'red'],
        ]);
    });

    it('panel lists function pairs with tags from the real export', () => {
        const doc = loadFixture<GenealogyDoc>('genealogy.json');
        const lineage = loadFixture<LineageDoc>('lineage_keylogX.json');
        const detail = renderDetail(doc, lineage);
        expect(detail.focus).toBe('keylogX');
        expect(detail.panel.length).toBeGreaterThan(0);
        for (const row of detail.panel) {
            expect([row.src_specimen, row.dst_specimen]).toContain('keylogX');
            expect(row.similarity).toBeGreaterThanOrEqual(0.95);
        }
        const red = detail.paths.filter(p => p.color === 'red');
        expect(new Set(red.map(p => p.src))).toEqual(new Set(['wormA', 'wormB']));
    });
});

describe('animation', () => {
    const threeYears: GenealogyDoc = {
        schema: 1,
        nodes: [node('a', 2001), node('b', 2009), node('c', 2016)],
        edges: [edge('a', 'b', 12), edge('b', 'c', 7)],
    };

    it('single-year corpus: one tick whose frame equals the static view', () => {
        const doc: GenealogyDoc = {
            schema: 1, nodes: [node('a', 2005), node('b', 2005)], edges: [],
        };
        expect(animationYears(doc)).toEqual([2005]);
        expect(animationFrame(doc, 'class', 2005)).toEqual(renderOverall(doc, 'class'));
    });

    it('frame 2 of a 3-year corpus contains exactly specimens of years <= year2', () => {
        const years = animationYears(threeYears);
        expect(years).toEqual([2001, 2009, 2016]);
        const frame = animationFrame(threeYears, 'class', years[1]);
        expect(frame.nodes.map(n => n.id)).toEqual(['a', 'b']);
        expect(frame.edges.map(e => `${e.src}->${e.dst}`)).toEqual(['a->b']);
    });

    it('node positions never shift between frames', () => {
        const full = renderOverall(threeYears, 'class');
        const frame = animationFrame(threeYears, 'class', 2009);
        const fullPos = new Map(full.nodes.map(n => [n.id, [n.x, n.y]]));
        for (const n of frame.nodes) {
            expect([n.x, n.y]).toEqual(fullPos.get(n.id));
        }
    });

    it('final frame deep-equals the static render', () => {
        const years = animationYears(threeYears);
        const final = animationFrame(threeYears, 'class', years[years.length - 1]);
        expect(final).toEqual(renderOverall(threeYears, 'class'));
    });

    it('scrubbing backward then forward reproduces identical frames', () => {
        const forward = [2001, 2009, 2016].map(y => animationFrame(threeYears, 'class', y));
        const replay = [2016, 2001, 2009].map(y => animationFrame(threeYears, 'class', y));
        expect(replay[1]).toEqual(forward[0]);
        expect(replay[2]).toEqual(forward[1]);
        expect(replay[0]).toEqual(forward[2]);
    });
});

describe('view state', () => {
    it('label switching preserves the selection', () => {
        let state = selectSpecimen(DEFAULT_STATE, 'keylogX');
        state = setLabelSlot(state, 'family');
        expect(state.activeLabelSlot).toBe('family');
        expect(state.selectedSpecimenId).toBe('keylogX');
    });

    it('selection toggles off to null', () => {
        const state = selectSpecimen(selectSpecimen(DEFAULT_STATE, 'x'), null);
        expect(state.selectedSpecimenId).toBeNull();
    });
});
