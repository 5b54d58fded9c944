"""Pipeline orchestration: ingest -> parse -> metrics -> clones -> tags ->
genealogy -> export, with deterministic artifacts."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .clones import CloneConfig, ReuseEdge, edge_to_json, find_clones
from .corpus import Corpus, LABEL_SLOTS, load_corpus
from .cparse import FunctionUnit, parse_source
from .errors import ConfigError
from .genealogy import (
    aggregate_to_specimens,
    build_genealogy,
    export_view_json,
)
from .metrics import (
    METRIC_FIELDS,
    CocomoParams,
    SpecimenMetrics,
    corpus_yearly_series,
    specimen_metrics,
)
from .tags import Lexicon, default_lexicon, function_tags, load_lexicon

def _parse_config_text(text: str) -> dict:
    """TOML-style flat `key = value` document.

    Values: quoted strings, ints, floats, booleans. Dotted keys build
    nested tables (used for fp_ratios.C = 97.0). Comments start with #.
    """
    doc: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if value.startswith('"') and value.endswith('"') and len(value) >= 2:
            parsed: object = value[1:-1]
        elif value in ("true", "false"):
            parsed = value == "true"
        else:
            try:
                parsed = int(value)
            except ValueError:
                try:
                    parsed = float(value)
                except ValueError:
                    raise ConfigError(f"config line {lineno}: bad value {value!r}")
        target = doc
        parts = key.split(".")
        for part in parts[:-1]:
            target = target.setdefault(part, {})
            if not isinstance(target, dict):
                raise ConfigError(f"config line {lineno}: key conflict at {part!r}")
        target[parts[-1]] = parsed
    return doc


_KNOWN_KEYS = {
    "corpus_path",
    "out_dir",
    "threads",
    "clone_threshold",
    "clone_min_tokens",
    "clone_max_specimen_fraction",
    "cocomo_a",
    "cocomo_b",
    "fp_ratios",
    "periods",
    "lexicon_dir",
}


@dataclass
class PipelineConfig:
    corpus_path: Path = Path("corpus.json")
    out_dir: Path = Path("out")
    threads: int = 1
    clone_threshold: float = 0.95
    clone_min_tokens: int = 30
    clone_max_specimen_fraction: float = 0.5
    cocomo_a: float = 2.4
    cocomo_b: float = 1.05
    fp_ratios: dict[str, float] = field(default_factory=lambda: {"C": 97.0, "Cpp": 50.0})
    periods: str = "1976-1995,1996-2000,2001-2005,2006-2010,2011-2015,2016-2020,2021-2025"
    lexicon_dir: Optional[Path] = None

    def __post_init__(self):
        env_threads = os.environ.get("CODELINEAGE_THREADS")
        if env_threads:
            try:
                self.threads = int(env_threads)
            except ValueError:
                raise ConfigError(f"bad CODELINEAGE_THREADS: {env_threads!r}")
        self.validate()

    def validate(self) -> None:
        if not (0.0 < self.clone_threshold <= 1.0):
            raise ConfigError(f"clone_threshold out of (0,1]: {self.clone_threshold}")
        if self.clone_min_tokens < 1:
            raise ConfigError(f"clone_min_tokens must be >= 1: {self.clone_min_tokens}")
        if not (0.0 < self.clone_max_specimen_fraction <= 1.0):
            raise ConfigError(
                f"clone_max_specimen_fraction out of (0,1]: {self.clone_max_specimen_fraction}"
            )
        if self.cocomo_a <= 0 or self.cocomo_b <= 0:
            raise ConfigError("COCOMO constants must be positive")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1: {self.threads}")

    @classmethod
    def from_toml(cls, path: str | Path, overrides: Optional[dict] = None) -> "PipelineConfig":
        try:
            doc = _parse_config_text(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}")
        unknown = set(doc) - _KNOWN_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if overrides:
            doc.update({k: v for k, v in overrides.items() if v is not None})
        return cls._from_dict(doc)

    @classmethod
    def _from_dict(cls, doc: dict) -> "PipelineConfig":
        kwargs = dict(doc)
        for key in ("corpus_path", "out_dir", "lexicon_dir"):
            if key in kwargs and kwargs[key] is not None:
                kwargs[key] = Path(kwargs[key])
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc))

    def digest(self) -> str:
        # only analysis parameters: thread count and filesystem locations
        # must never change artifact bytes
        excluded = {"threads", "out_dir", "corpus_path"}
        payload = {
            k: str(v) for k, v in sorted(self.__dict__.items()) if k not in excluded
        }
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]

    def clone_config(self) -> CloneConfig:
        return CloneConfig(
            threshold=self.clone_threshold,
            min_tokens=self.clone_min_tokens,
            max_specimen_fraction=self.clone_max_specimen_fraction,
        )

    def cocomo_params(self) -> CocomoParams:
        return CocomoParams(a=self.cocomo_a, b=self.cocomo_b)

    def lexicon(self) -> Lexicon:
        if self.lexicon_dir is None:
            return default_lexicon()
        d = self.lexicon_dir
        return load_lexicon(
            d / "words.txt", d / "abbrev.tsv", d / "whitelist.txt", d / "blacklist.txt"
        )


def _run_meta(config: PipelineConfig) -> dict:
    return {"tool": "codelineage", "version": __version__, "config_digest": config.digest()}


def parse_corpus_functions(corpus: Corpus, threads: int = 1) -> list[FunctionUnit]:
    """Extract functions for every file of every specimen; deterministic order."""

    def parse_one(specimen):
        units = []
        for f in specimen.files:
            units.extend(parse_source(f.text, specimen_id=specimen.id, file=f.rel_path))
        return units

    ordered = sorted(corpus, key=lambda s: s.id)
    if threads <= 1:
        per_specimen = [parse_one(s) for s in ordered]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_specimen = list(pool.map(parse_one, ordered))
    units: list[FunctionUnit] = []
    for batch in per_specimen:
        units.extend(batch)
    return units


def metrics_csv(rows: list[SpecimenMetrics], meta: dict) -> str:
    buf = io.StringIO()
    buf.write(f"# codelineage {meta['version']} config={meta['config_digest']}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["specimen_id", "function_count", *METRIC_FIELDS, "total_exec_paths"])
    for m in rows:
        writer.writerow(
            [m.specimen_id, m.function_count]
            + [repr(getattr(m, f)) for f in METRIC_FIELDS]
            + [m.total_exec_paths]
        )
    return buf.getvalue()


def run_pipeline(config: PipelineConfig) -> dict[str, Path]:
    """Produce all artifacts under config.out_dir; byte-identical across runs
    and thread counts for identical inputs."""
    corpus = load_corpus(config.corpus_path)
    out = config.out_dir
    out.mkdir(parents=True, exist_ok=True)
    meta = _run_meta(config)
    artifacts: dict[str, Path] = {}

    # metrics
    rows = [
        specimen_metrics(s, config.cocomo_params(), config.fp_ratios)
        for s in sorted(corpus, key=lambda s: s.id)
    ]
    path = out / "metrics.csv"
    path.write_text(metrics_csv(rows, meta), encoding="utf-8")
    artifacts["metrics_csv"] = path
    yearly = (
        [s.to_json() for s in corpus_yearly_series(corpus, config.cocomo_params(), config.fp_ratios)]
        if len(corpus)
        else []
    )
    path = out / "metrics_yearly.json"
    path.write_text(
        json.dumps({"run": meta, "series": yearly}, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    artifacts["metrics_json"] = path

    # functions, clones, tags
    units = parse_corpus_functions(corpus, config.threads)
    edges = find_clones(units, config.clone_config(), corpus.timestamps())
    path = out / "clones.jsonl"
    with path.open("w", encoding="utf-8") as fh:
        fh.write(json.dumps({"run": meta}, sort_keys=True) + "\n")
        for e in edges:
            fh.write(json.dumps(edge_to_json(e), sort_keys=True) + "\n")
    artifacts["clones_jsonl"] = path

    lexicon = config.lexicon()
    tags_by_fn = {
        (u.specimen_id, u.file, u.name): list(function_tags(u, lexicon))
        for u in units
    }
    path = out / "tags.json"
    path.write_text(
        json.dumps(
            {
                "run": meta,
                "functions": [
                    {"specimen": k[0], "file": k[1], "function": k[2], "tags": v}
                    for k, v in sorted(tags_by_fn.items())
                ],
            },
            indent=2,
            sort_keys=True,
        )
        + "\n",
        encoding="utf-8",
    )
    artifacts["tags_json"] = path

    # genealogy + views
    spec_edges = aggregate_to_specimens(edges, corpus, tags_by_fn)
    genealogy = build_genealogy(corpus, spec_edges)
    for p in export_view_json(genealogy, out, LABEL_SLOTS):
        artifacts[p.name] = p
    return artifacts


def artifact_digests(artifacts: dict[str, Path]) -> dict[str, str]:
    return {
        name: hashlib.sha256(path.read_bytes()).hexdigest()
        for name, path in sorted(artifacts.items())
    }
