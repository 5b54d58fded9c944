"""Time-respecting genealogy graph: specimen-level aggregation of function
reuse edges, category and lineage views, and versioned JSON export."""

from __future__ import annotations

import datetime as dt
import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .clones import ReuseEdge
from .corpus import Corpus, LABEL_SLOTS, Specimen
from .cparse import FunctionUnit
from .errors import IoError, UnknownLabelSlot, UnknownSpecimen

SCHEMA_VERSION = 1
UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class FunctionPair:
    src_fn: str
    dst_fn: str
    similarity: float
    weight: int
    src_tags: tuple[str, ...] = ()
    dst_tags: tuple[str, ...] = ()


@dataclass
class SpecimenEdge:
    src_id: str
    dst_id: str
    weight: int  # exact sum of function pair weights
    function_pairs: list[FunctionPair] = field(default_factory=list)
    ambiguous_direction: bool = False


@dataclass
class GenealogyNode:
    id: str
    name: str
    year: int
    labels: dict[str, Optional[list[str]]]


@dataclass
class Genealogy:
    nodes: dict[str, GenealogyNode]
    edges: list[SpecimenEdge]

    def incoming(self, specimen_id: str) -> list[SpecimenEdge]:
        return [e for e in self.edges if e.dst_id == specimen_id]

    def outgoing(self, specimen_id: str) -> list[SpecimenEdge]:
        return [e for e in self.edges if e.src_id == specimen_id]


def orient_edge(
    fn_a: FunctionUnit,
    fn_b: FunctionUnit,
    timestamps: Mapping[str, dt.date],
) -> tuple[FunctionUnit, FunctionUnit, bool]:
    """Earlier specimen is src; equal dates break by id and flag ambiguity."""
    ta, tb = timestamps[fn_a.specimen_id], timestamps[fn_b.specimen_id]
    if ta < tb:
        return fn_a, fn_b, False
    if tb < ta:
        return fn_b, fn_a, False
    if fn_a.specimen_id <= fn_b.specimen_id:
        return fn_a, fn_b, True
    return fn_b, fn_a, True


def aggregate_to_specimens(
    reuse_edges: Sequence[ReuseEdge],
    corpus: Corpus,
    tags_by_fn: Optional[Mapping[tuple[str, str, str], Sequence[str]]] = None,
) -> list[SpecimenEdge]:
    """Group function edges by specimen pair and sum their weights exactly.

    tags_by_fn, when given, maps (specimen_id, file, function name) to that
    function's tag list for the detailed view.
    """

    def tags_of(fn: FunctionUnit) -> tuple[str, ...]:
        if tags_by_fn is None:
            return ()
        return tuple(tags_by_fn.get((fn.specimen_id, fn.file, fn.name), ()))

    grouped: dict[tuple[str, str], SpecimenEdge] = {}
    for e in reuse_edges:
        key = (e.src_fn.specimen_id, e.dst_fn.specimen_id)
        edge = grouped.get(key)
        if edge is None:
            edge = SpecimenEdge(src_id=key[0], dst_id=key[1], weight=0)
            grouped[key] = edge
        edge.weight += e.weight
        edge.ambiguous_direction = edge.ambiguous_direction or e.ambiguous_direction
        edge.function_pairs.append(
            FunctionPair(
                src_fn=e.src_fn.name,
                dst_fn=e.dst_fn.name,
                similarity=e.similarity,
                weight=e.weight,
                src_tags=tags_of(e.src_fn),
                dst_tags=tags_of(e.dst_fn),
            )
        )
    return [grouped[k] for k in sorted(grouped)]


def build_genealogy(
    corpus: Corpus,
    specimen_edges: Sequence[SpecimenEdge],
) -> Genealogy:
    nodes = {
        s.id: GenealogyNode(
            id=s.id,
            name=s.name,
            year=s.year,
            labels={k: v for k, v in s.labels.slots.items()},
        )
        for s in corpus
    }
    for e in specimen_edges:
        if e.src_id not in nodes or e.dst_id not in nodes:
            raise UnknownSpecimen(f"edge endpoint missing from corpus: {e.src_id}->{e.dst_id}")
    return Genealogy(nodes=nodes, edges=list(specimen_edges))


# -- category view --------------------------------------------------------------


@dataclass
class CategoryView:
    label_slot: str
    categories: list[str]  # sorted values, "unresolved" last
    counts_per_year: dict[str, dict[int, int]]
    category_edges: list[list[int]]  # summed weights, [src][dst]


def _values_of(node: GenealogyNode, slot: str) -> list[str]:
    values = node.labels.get(slot)
    if not values:
        return [UNRESOLVED]
    return list(values)


def build_category_view(genealogy: Genealogy, label_slot: str) -> CategoryView:
    """Partition specimens by a label slot's values; multi-valued specimens
    contribute fully to each value, unlabeled ones to "unresolved"."""
    if label_slot not in LABEL_SLOTS:
        raise UnknownLabelSlot(f"unknown label slot: {label_slot}")
    value_set: set[str] = set()
    for node in genealogy.nodes.values():
        value_set.update(_values_of(node, label_slot))
    categories = sorted(value_set - {UNRESOLVED})
    if UNRESOLVED in value_set:
        categories.append(UNRESOLVED)
    index = {v: i for i, v in enumerate(categories)}

    counts: dict[str, dict[int, int]] = {v: {} for v in categories}
    for node in genealogy.nodes.values():
        for v in _values_of(node, label_slot):
            counts[v][node.year] = counts[v].get(node.year, 0) + 1

    matrix = [[0] * len(categories) for _ in categories]
    for e in genealogy.edges:
        src_vals = _values_of(genealogy.nodes[e.src_id], label_slot)
        dst_vals = _values_of(genealogy.nodes[e.dst_id], label_slot)
        for sv in src_vals:
            for dv in dst_vals:
                matrix[index[sv]][index[dv]] += e.weight
    return CategoryView(
        label_slot=label_slot,
        categories=categories,
        counts_per_year=counts,
        category_edges=matrix,
    )


# -- lineage view ----------------------------------------------------------------


@dataclass
class LineageEntry:
    specimen_id: str
    depth: int
    path_weight: int  # bottleneck: max over paths of the minimum edge weight


@dataclass
class LineageView:
    focus_id: str
    ancestors: list[LineageEntry]
    descendants: list[LineageEntry]
    function_detail: list[dict]


def _bottleneck_bfs(
    genealogy: Genealogy, focus_id: str, max_depth: int, direction: str
) -> list[LineageEntry]:
    """Depth-layered relaxation of bottleneck path weight up to max_depth hops.

    best[node] after layer k holds the max-over-paths (length <= k) of the
    minimum edge weight along the path; depth is the hop count of first reach.
    """
    import math as _math

    best: dict[str, float] = {focus_id: _math.inf}
    depth_of: dict[str, int] = {}
    for depth in range(1, max_depth + 1):
        updates: dict[str, float] = {}
        for e in genealogy.edges:
            if direction == "ancestors":
                u, v = e.dst_id, e.src_id  # walk edges backwards
            else:
                u, v = e.src_id, e.dst_id
            if u in best:
                cand = min(best[u], e.weight)
                if cand > best.get(v, -_math.inf) and cand > updates.get(v, -_math.inf):
                    updates[v] = cand
        changed = False
        for node, w in updates.items():
            if w > best.get(node, -_math.inf):
                best[node] = w
                changed = True
            depth_of.setdefault(node, depth)
        if not changed:
            break
    entries = [
        LineageEntry(nid, depth_of[nid], int(best[nid]))
        for nid in best
        if nid != focus_id
    ]
    entries.sort(key=lambda x: (x.depth, -x.path_weight, x.specimen_id))
    return entries


def lineage_of(genealogy: Genealogy, focus_id: str, max_depth: int = 10) -> LineageView:
    """Ancestors/descendants with bottleneck path weights plus the focus's
    direct function pairs."""
    if focus_id not in genealogy.nodes:
        raise UnknownSpecimen(f"unknown specimen: {focus_id}")
    detail = []
    for e in genealogy.incoming(focus_id) + genealogy.outgoing(focus_id):
        for fp in e.function_pairs:
            detail.append(
                {
                    "src_specimen": e.src_id,
                    "dst_specimen": e.dst_id,
                    "src_function": fp.src_fn,
                    "dst_function": fp.dst_fn,
                    "similarity": fp.similarity,
                    "weight": fp.weight,
                    "src_tags": list(fp.src_tags),
                    "dst_tags": list(fp.dst_tags),
                }
            )
    return LineageView(
        focus_id=focus_id,
        ancestors=_bottleneck_bfs(genealogy, focus_id, max_depth, "ancestors"),
        descendants=_bottleneck_bfs(genealogy, focus_id, max_depth, "descendants"),
        function_detail=detail,
    )


# -- export ----------------------------------------------------------------------


def genealogy_to_json(genealogy: Genealogy) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "nodes": [
            {
                "id": n.id,
                "name": n.name,
                "year": n.year,
                "labels": {k: v for k, v in n.labels.items() if v is not None},
            }
            for n in sorted(genealogy.nodes.values(), key=lambda n: n.id)
        ],
        "edges": [
            {
                "src": e.src_id,
                "dst": e.dst_id,
                "weight": e.weight,
                "ambiguous_direction": e.ambiguous_direction,
                "function_pairs": [
                    {
                        "src_fn": fp.src_fn,
                        "dst_fn": fp.dst_fn,
                        "similarity": fp.similarity,
                        "weight": fp.weight,
                        "src_tags": list(fp.src_tags),
                        "dst_tags": list(fp.dst_tags),
                    }
                    for fp in e.function_pairs
                ],
            }
            for e in sorted(genealogy.edges, key=lambda e: (e.src_id, e.dst_id))
        ],
    }


def category_view_to_json(view: CategoryView) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "label_slot": view.label_slot,
        "categories": view.categories,
        "counts_per_year": {
            v: {str(y): c for y, c in sorted(years.items())}
            for v, years in view.counts_per_year.items()
        },
        "category_edges": view.category_edges,
    }


def lineage_view_to_json(view: LineageView) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "focus": view.focus_id,
        "ancestors": [
            {"id": e.specimen_id, "depth": e.depth, "path_weight": e.path_weight}
            for e in view.ancestors
        ],
        "descendants": [
            {"id": e.specimen_id, "depth": e.depth, "path_weight": e.path_weight}
            for e in view.descendants
        ],
        "function_detail": view.function_detail,
    }


def _write_json(path: Path, payload: dict) -> None:
    try:
        path.write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}")


def export_view_json(
    genealogy: Genealogy,
    out_dir: str | Path,
    label_slots: Sequence[str] = LABEL_SLOTS,
) -> list[Path]:
    """Write genealogy.json plus one category_<slot>.json per slot."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    path = out / "genealogy.json"
    _write_json(path, genealogy_to_json(genealogy))
    written.append(path)
    for slot in label_slots:
        view = build_category_view(genealogy, slot)
        path = out / f"category_{slot}.json"
        _write_json(path, category_view_to_json(view))
        written.append(path)
    return written


def load_genealogy_json(path: str | Path) -> Genealogy:
    """Round-trip import of an exported genealogy.json."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    nodes = {
        n["id"]: GenealogyNode(
            id=n["id"],
            name=n.get("name", n["id"]),
            year=n["year"],
            labels={slot: n.get("labels", {}).get(slot) for slot in LABEL_SLOTS},
        )
        for n in doc["nodes"]
    }
    edges = [
        SpecimenEdge(
            src_id=e["src"],
            dst_id=e["dst"],
            weight=e["weight"],
            ambiguous_direction=e.get("ambiguous_direction", False),
            function_pairs=[
                FunctionPair(
                    src_fn=fp["src_fn"],
                    dst_fn=fp["dst_fn"],
                    similarity=fp["similarity"],
                    weight=fp["weight"],
                    src_tags=tuple(fp.get("src_tags", ())),
                    dst_tags=tuple(fp.get("dst_tags", ())),
                )
                for fp in e.get("function_pairs", ())
            ],
        )
        for e in doc["edges"]
    ]
    return Genealogy(nodes=nodes, edges=edges)


def topological_order(genealogy: Genealogy) -> list[str]:
    """Kahn's algorithm; raises ValueError when the graph has a cycle."""
    indeg = {nid: 0 for nid in genealogy.nodes}
    for e in genealogy.edges:
        indeg[e.dst_id] += 1
    queue = deque(sorted(nid for nid, d in indeg.items() if d == 0))
    order = []
    while queue:
        nid = queue.popleft()
        order.append(nid)
        for e in genealogy.outgoing(nid):
            indeg[e.dst_id] -= 1
            if indeg[e.dst_id] == 0:
                queue.append(e.dst_id)
    if len(order) != len(genealogy.nodes):
        raise ValueError("genealogy contains a cycle")
    return order
