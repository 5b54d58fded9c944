// Thin fetch layer over the documented read-only API. Responses are applied
// last-write-wins: a stale response (older sequence number) never clobbers a
// newer one.

import { GenealogyDoc, LineageDoc } from './types';

export interface CategoryDoc {
    schema: number;
    label_slot: string;
    categories: string[];
    counts_per_year: Record<string, Record<string, number>>;
    category_edges: number[][];
}

export class ApiClient {
    private base: string;
    private seq = 0;
    private applied = new Map<string, number>();

    constructor(base: string = '') {
        this.base = base;
    }

    private async get<T>(path: string, key: string): Promise<T | null> {
        const ticket = ++this.seq;
        const resp = await fetch(this.base + path);
        if (!resp.ok) {
            throw new Error(`GET ${path} failed: ${resp.status}`);
        }
        const doc = (await resp.json()) as T;
        if ((this.applied.get(key) ?? 0) > ticket) {
            return null; // a newer request already landed
        }
        this.applied.set(key, ticket);
        return doc;
    }

    genealogy(): Promise<GenealogyDoc | null> {
        return this.get<GenealogyDoc>('/api/genealogy', 'genealogy');
    }

    category(slot: string): Promise<CategoryDoc | null> {
        return this.get<CategoryDoc>(`/api/category/${slot}`, 'category');
    }

    lineage(id: string, depth: number): Promise<LineageDoc | null> {
        return this.get<LineageDoc>(
            `/api/lineage/${encodeURIComponent(id)}?depth=${depth}`,
            'lineage',
        );
    }
}
