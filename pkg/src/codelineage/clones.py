"""Function-level code-reuse detection.

Each function gets a fixed-length characteristic vector: the frequencies of
nine AST node categories accumulated bottom-up over its subtree. Near-equal
vectors across specimens indicate reuse; candidates come from p-stable
(Euclidean) LSH with deterministic multi-probe bounds wide enough that the
result set is identical to brute-force all-pairs verification.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .cparse import AstKind, AstNode, FunctionUnit, VECTOR_KINDS
from .errors import ConfigError

EPSILON = 1e-12

_KIND_INDEX = {k: i for i, k in enumerate(VECTOR_KINDS)}


@dataclass(frozen=True)
class CharacteristicVector:
    counts: tuple[int, ...]  # length 9, order: id lit assign_e incr_e array_e cond_e expr_s decl for_s
    node_total: int

    def norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.counts))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.counts)


def characteristic_vector(ast: AstNode) -> CharacteristicVector:
    """Bottom-up accumulation: own one-hot plus the elementwise child sum."""
    counts = [0] * len(VECTOR_KINDS)
    total = 0
    for node in ast.walk():
        total += 1
        idx = _KIND_INDEX.get(node.kind)
        if idx is not None:
            counts[idx] += 1
    return CharacteristicVector(tuple(counts), total)


def similarity(v1: CharacteristicVector, v2: CharacteristicVector) -> float:
    """1 - dist/(|v1|+|v2|+eps), clamped to [0,1]; identical vectors give 1."""
    dist = math.dist(v1.counts, v2.counts)
    sim = 1.0 - dist / (v1.norm() + v2.norm() + EPSILON)
    return min(1.0, max(0.0, sim))


@dataclass
class CloneConfig:
    threshold: float = 0.95
    min_tokens: int = 30
    max_specimen_fraction: float = 0.5
    lsh_projections: int = 3
    seed: int = 20250101

    def validate(self) -> None:
        if not (0.0 < self.threshold <= 1.0):
            raise ConfigError(f"threshold must be in (0,1], got {self.threshold}")
        if self.min_tokens < 1:
            raise ConfigError(f"min_tokens must be >= 1, got {self.min_tokens}")
        if not (0.0 < self.max_specimen_fraction <= 1.0):
            raise ConfigError(
                f"max_specimen_fraction must be in (0,1], got {self.max_specimen_fraction}"
            )


@dataclass
class ReuseEdge:
    src_fn: FunctionUnit
    dst_fn: FunctionUnit
    similarity: float
    weight: int  # node_total of the smaller function in the pair
    ambiguous_direction: bool = False


def _orient(
    a: FunctionUnit,
    b: FunctionUnit,
    timestamps: Mapping[str, dt.date],
) -> tuple[FunctionUnit, FunctionUnit, bool]:
    ta, tb = timestamps[a.specimen_id], timestamps[b.specimen_id]
    if ta < tb:
        return a, b, False
    if tb < ta:
        return b, a, False
    if a.specimen_id <= b.specimen_id:
        return a, b, True
    return b, a, True


def _eligible(
    functions: Sequence[FunctionUnit],
    cfg: CloneConfig,
) -> list[tuple[FunctionUnit, CharacteristicVector]]:
    """Apply token-count, zero-vector, and ubiquity filters."""
    with_vectors = []
    for fn in functions:
        if fn.body_ast is None or len(fn.tokens) < cfg.min_tokens:
            continue
        vec = characteristic_vector(fn.body_ast)
        if vec.is_zero():
            continue
        with_vectors.append((fn, vec))

    # ubiquity: a vector present in more than max_specimen_fraction of the
    # corpus is shared-library noise
    specimens = {fn.specimen_id for fn in functions}
    if not specimens:
        return []
    by_vector: dict[tuple[int, ...], set[str]] = {}
    for fn, vec in with_vectors:
        by_vector.setdefault(vec.counts, set()).add(fn.specimen_id)
    limit = cfg.max_specimen_fraction * len(specimens)
    return [
        (fn, vec)
        for fn, vec in with_vectors
        if len(by_vector[vec.counts]) <= limit or len(specimens) == 1
    ]


def _sort_key(edge: ReuseEdge) -> tuple:
    return (
        edge.src_fn.specimen_id,
        edge.dst_fn.specimen_id,
        edge.src_fn.name,
        edge.dst_fn.name,
        edge.src_fn.file,
        edge.dst_fn.file,
        edge.src_fn.start_line,
        edge.dst_fn.start_line,
    )


def _make_edge(
    a: FunctionUnit,
    va: CharacteristicVector,
    b: FunctionUnit,
    vb: CharacteristicVector,
    sim: float,
    timestamps: Mapping[str, dt.date],
) -> ReuseEdge:
    src, dst, ambiguous = _orient(a, b, timestamps)
    return ReuseEdge(
        src_fn=src,
        dst_fn=dst,
        similarity=sim,
        weight=min(va.node_total, vb.node_total),
        ambiguous_direction=ambiguous,
    )


def find_clones_bruteforce(
    functions: Sequence[FunctionUnit],
    cfg: CloneConfig,
    timestamps: Mapping[str, dt.date],
) -> list[ReuseEdge]:
    """All-pairs reference path; the oracle the LSH path must equal."""
    cfg.validate()
    items = _eligible(functions, cfg)
    edges = []
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            fa, va = items[i]
            fb, vb = items[j]
            if fa.specimen_id == fb.specimen_id:
                continue
            sim = similarity(va, vb)
            if sim >= cfg.threshold:
                edges.append(_make_edge(fa, va, fb, vb, sim, timestamps))
    edges.sort(key=_sort_key)
    return edges


def find_clones(
    functions: Sequence[FunctionUnit],
    cfg: Optional[CloneConfig] = None,
    timestamps: Optional[Mapping[str, dt.date]] = None,
) -> list[ReuseEdge]:
    """Cross-specimen clone pairs with similarity >= threshold.

    Candidate generation uses p-stable LSH over unit-norm Gaussian
    projections with a deterministic probe radius derived from the
    per-point worst-case match distance, so recall is exact: results are
    identical to brute force.
    """
    cfg = cfg or CloneConfig()
    cfg.validate()
    if timestamps is None:
        timestamps = {fn.specimen_id: dt.date(1970, 1, 1) for fn in functions}
    items = _eligible(functions, cfg)
    if len(items) < 2:
        return []

    vecs = np.array([v.counts for _, v in items], dtype=np.float64)
    norms = np.linalg.norm(vecs, axis=1)
    theta = cfg.threshold
    # for a pair (u, v) with sim >= theta and |u| <= |v|:
    #   dist <= (1-theta)(|u|+|v|) and |v| <= |u|(2-theta)/theta,
    # so probing from the smaller-norm point with radius 2(1-theta)|u|/theta
    # covers every qualifying pair
    radii = 2.0 * (1.0 - theta) * norms / max(theta, EPSILON)

    rng = np.random.default_rng(cfg.seed)
    k = max(1, cfg.lsh_projections)
    proj = rng.standard_normal((k, vecs.shape[1]))
    proj /= np.linalg.norm(proj, axis=1, keepdims=True)
    width = max(float(np.median(radii)), 1.0)

    coords = vecs @ proj.T  # (n, k)
    buckets: dict[tuple[int, ...], list[int]] = {}
    cells = np.floor(coords / width).astype(np.int64)
    for i, cell in enumerate(map(tuple, cells)):
        buckets.setdefault(cell, []).append(i)

    order = np.argsort(norms, kind="stable")
    edges: list[ReuseEdge] = []
    seen: set[tuple[int, int]] = set()
    for i in order:
        r = radii[i]
        deltas = [int(math.floor(r / width)) + 1] * k
        base = cells[i]
        # probe every bucket a qualifying partner could land in
        ranges = [range(base[d] - deltas[d], base[d] + deltas[d] + 1) for d in range(k)]
        stack = [()]
        for rng_d in ranges:
            stack = [cell + (c,) for cell in stack for c in rng_d]
        fa, va = items[i]
        for cell in stack:
            for j in buckets.get(cell, ()):
                if j == i:
                    continue
                pair = (min(i, j), max(i, j))
                if pair in seen:
                    continue
                # only the smaller-norm endpoint probes; skip larger partners
                if norms[j] < norms[i] or (norms[j] == norms[i] and j < i):
                    continue
                seen.add(pair)
                fb, vb = items[j]
                if fa.specimen_id == fb.specimen_id:
                    continue
                sim = similarity(va, vb)
                if sim >= cfg.threshold:
                    edges.append(_make_edge(fa, va, fb, vb, sim, timestamps))
    edges.sort(key=_sort_key)
    return edges


def edge_to_json(edge: ReuseEdge) -> dict:
    return {
        "src_specimen": edge.src_fn.specimen_id,
        "dst_specimen": edge.dst_fn.specimen_id,
        "src_function": edge.src_fn.name,
        "dst_function": edge.dst_fn.name,
        "src_file": edge.src_fn.file,
        "dst_file": edge.dst_fn.file,
        "similarity": edge.similarity,
        "weight": edge.weight,
        "ambiguous_direction": edge.ambiguous_direction,
    }
