"""Specimen corpus loading: manifest parsing, file enumeration, label scheme."""

from __future__ import annotations

import datetime as dt
import hashlib
import json
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional

from .errors import (
    DuplicateSpecimenId,
    ManifestParseError,
    MissingTimestamp,
    UnknownLabelSlot,
)

LABEL_SLOTS = (
    "file",
    "family",
    "vulnerability",
    "behavior",
    "class",
    "pack",
    "fud",
    "unknown",
)

# extensions carrying programming logic, per language
LOGIC_EXTENSIONS = {
    "C": {".c", ".cc", ".cpp", ".cxx", ".h", ".hh", ".hpp", ".hxx"},
    "Cpp": {".c", ".cc", ".cpp", ".cxx", ".h", ".hh", ".hpp", ".hxx"},
    "Other": set(),
}

DATA_EXTENSIONS = {".json", ".xml", ".md", ".txt", ".yml", ".yaml"}


class Language(Enum):
    C = "C"
    Cpp = "Cpp"
    Other = "Other"


@dataclass(frozen=True)
class SourceFile:
    rel_path: str
    language: Language
    byte_len: int
    content_digest: str  # sha256 hex
    line_index: tuple[int, ...]  # byte offsets of line starts, starts at 0
    text: str  # UTF-8 with lossy replacement


@dataclass
class LabelSet:
    """Eight optional label slots; a missing slot (None) means unresolved."""

    slots: dict[str, Optional[list[str]]] = field(default_factory=dict)

    def __post_init__(self):
        for name in LABEL_SLOTS:
            self.slots.setdefault(name, None)

    def get(self, slot: str) -> Optional[list[str]]:
        if slot not in LABEL_SLOTS:
            raise UnknownLabelSlot(f"unknown label slot: {slot}")
        return self.slots[slot]

    def to_json(self) -> dict:
        return {k: v for k, v in self.slots.items() if v is not None}

    @classmethod
    def from_manifest(cls, obj: dict) -> "LabelSet":
        slots: dict[str, Optional[list[str]]] = {}
        for key, value in obj.items():
            if key not in LABEL_SLOTS:
                raise UnknownLabelSlot(f"unknown label slot in manifest: {key!r}")
            if key == "fud":
                if isinstance(value, bool):
                    slots[key] = [str(value).lower()]
                    continue
            if isinstance(value, str):
                slots[key] = [value]
            elif isinstance(value, list) and all(isinstance(v, str) for v in value):
                slots[key] = list(value)
            else:
                raise ManifestParseError(
                    f"label slot {key!r} must hold a string or list of strings"
                )
        return cls(slots)


@dataclass
class Specimen:
    id: str
    name: str
    root_path: Path
    timestamp: dt.date
    language: Language
    labels: LabelSet
    files: list[SourceFile] = field(default_factory=list)

    @property
    def year(self) -> int:
        return self.timestamp.year


@dataclass
class Corpus:
    specimens: list[Specimen]  # sorted by id

    def __iter__(self):
        return iter(self.specimens)

    def __len__(self):
        return len(self.specimens)

    def by_id(self, specimen_id: str) -> Specimen:
        for s in self.specimens:
            if s.id == specimen_id:
                return s
        raise KeyError(specimen_id)

    def timestamps(self) -> dict[str, dt.date]:
        return {s.id: s.timestamp for s in self.specimens}


def is_logic_file(rel_path: str, language: Language) -> bool:
    """True iff the extension is in the logic set for the language.

    Data/markup extensions (.json, .xml, ...) are always excluded.
    """
    ext = os.path.splitext(rel_path)[1].lower()
    if ext in DATA_EXTENSIONS:
        return False
    return ext in LOGIC_EXTENSIONS.get(language.value, set())


def _index_lines(data: bytes) -> tuple[int, ...]:
    offsets = [0]
    for i, b in enumerate(data):
        if b == 0x0A and i + 1 < len(data):
            offsets.append(i + 1)
    return tuple(offsets)


def load_source_file(root: Path, rel_path: str, language: Language) -> SourceFile:
    data = (root / rel_path).read_bytes()
    return SourceFile(
        rel_path=rel_path,
        language=language,
        byte_len=len(data),
        content_digest=hashlib.sha256(data).hexdigest(),
        line_index=_index_lines(data),
        text=data.decode("utf-8", errors="replace"),
    )


def _enumerate_files(root: Path, language: Language) -> list[SourceFile]:
    rel_paths = []
    for dirpath, dirnames, filenames in os.walk(root, followlinks=False):
        dirnames.sort()
        for fn in sorted(filenames):
            full = Path(dirpath) / fn
            if full.is_symlink():
                continue
            rel = full.relative_to(root).as_posix()
            if is_logic_file(rel, language):
                rel_paths.append(rel)
    return [load_source_file(root, rp, language) for rp in sorted(rel_paths)]


def load_corpus(manifest_path: str | Path) -> Corpus:
    """Load specimens listed in a corpus.json manifest; deterministic by id."""
    manifest_path = Path(manifest_path)
    try:
        records = json.loads(manifest_path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise ManifestParseError(f"cannot parse manifest {manifest_path}: {exc}")
    if not isinstance(records, list):
        raise ManifestParseError("manifest must be a JSON array of specimen records")

    base = manifest_path.parent
    specimens: list[Specimen] = []
    seen: set[str] = set()
    for rec in records:
        if not isinstance(rec, dict) or "id" not in rec:
            raise ManifestParseError(f"bad specimen record: {rec!r}")
        sid = rec["id"]
        if sid in seen:
            raise DuplicateSpecimenId(f"duplicate specimen id: {sid!r}")
        seen.add(sid)
        if "date" not in rec or not rec["date"]:
            raise MissingTimestamp(f"specimen {sid!r} has no date")
        try:
            timestamp = dt.date.fromisoformat(rec["date"])
        except ValueError as exc:
            raise MissingTimestamp(f"specimen {sid!r}: bad date {rec['date']!r}: {exc}")
        try:
            language = Language(rec.get("language", "C"))
        except ValueError:
            language = Language.Other
        labels = LabelSet.from_manifest(rec.get("labels", {}))
        root = base / rec.get("path", sid)
        files = _enumerate_files(root, language) if root.is_dir() else []
        specimens.append(
            Specimen(
                id=sid,
                name=rec.get("name", sid),
                root_path=root,
                timestamp=timestamp,
                language=language,
                labels=labels,
                files=files,
            )
        )
    specimens.sort(key=lambda s: s.id)
    return Corpus(specimens)


def corpus_to_json(corpus: Corpus) -> list[dict]:
    """Serialize for the determinism/round-trip checks (content digests, not text)."""
    return [
        {
            "id": s.id,
            "name": s.name,
            "date": s.timestamp.isoformat(),
            "language": s.language.value,
            "labels": s.labels.to_json(),
            "files": [
                {"path": f.rel_path, "bytes": f.byte_len, "sha256": f.content_digest}
                for f in s.files
            ],
        }
        for s in corpus
    ]
