// JSON documents exactly as exported by the codelineage HTTP API.

export const EXPECTED_SCHEMA = 1;

export interface GenealogyNodeDoc {
    id: string;
    name: string;
    year: number;
    labels: Record<string, string[]>;
}

export interface FunctionPairDoc {
    src_fn: string;
    dst_fn: string;
    similarity: number;
    weight: number;
    src_tags: string[];
    dst_tags: string[];
}

export interface GenealogyEdgeDoc {
    src: string;
    dst: string;
    weight: number;
    ambiguous_direction: boolean;
    function_pairs: FunctionPairDoc[];
}

export interface GenealogyDoc {
    schema: number;
    nodes: GenealogyNodeDoc[];
    edges: GenealogyEdgeDoc[];
}

export interface LineageEntryDoc {
    id: string;
    depth: number;
    path_weight: number;
}

export interface FunctionDetailRow {
    src_specimen: string;
    dst_specimen: string;
    src_function: string;
    dst_function: string;
    similarity: number;
    weight: number;
    src_tags: string[];
    dst_tags: string[];
}

export interface LineageDoc {
    schema: number;
    focus: string;
    ancestors: LineageEntryDoc[];
    descendants: LineageEntryDoc[];
    function_detail: FunctionDetailRow[];
}

// Client-side view state; rendering is a pure function of (docs, state).
export interface ViewState {
    activeLabelSlot: string;
    selectedSpecimenId: string | null;
    animationYear: number | null;
    depth: number;
}

export const DEFAULT_STATE: ViewState = {
    activeLabelSlot: 'class',
    selectedSpecimenId: null,
    animationYear: null,
    depth: 10,
};

export function setLabelSlot(state: ViewState, slot: string): ViewState {
    // label switching is a client-side regroup; selection is preserved
    return { ...state, activeLabelSlot: slot };
}

export function selectSpecimen(state: ViewState, id: string | null): ViewState {
    return { ...state, selectedSpecimenId: id };
}
