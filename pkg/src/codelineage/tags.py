"""Function-tag mining: raw tag extraction from names, comments, and path
literals, followed by a five-step normalization pipeline (split, expand,
clean, filter, deduplicate)."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .cparse import FunctionUnit, TokKind
from .errors import LexiconLoadError

MIN_TAG_LEN = 3  # shorter fragments are noise unless whitelisted
COMMENT_TOP_K = 5


class TagSource(Enum):
    FunctionName = "FunctionName"
    VariableName = "VariableName"
    Comment = "Comment"
    RegistryPath = "RegistryPath"
    FilePath = "FilePath"


@dataclass(frozen=True)
class RawTag:
    text: str
    source: TagSource


@dataclass
class TagSet:
    tags: list[str]  # sorted, lowercase, deduplicated
    provenance: dict[str, set[TagSource]] = field(default_factory=dict)

    def __contains__(self, tag: str) -> bool:
        return tag in self.provenance

    def __iter__(self):
        return iter(self.tags)


@dataclass
class Lexicon:
    words: frozenset[str]
    abbreviations: dict[str, str]
    whitelist: frozenset[str]
    blacklist: frozenset[str]

    def is_word(self, tag: str) -> bool:
        if tag in self.blacklist:
            return False
        if tag in self.whitelist:
            return True
        return len(tag) >= MIN_TAG_LEN and tag in self.words


def _read_lines(path: Path) -> list[str]:
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconLoadError(f"cannot read lexicon file {path}: {exc}")
    out = []
    for line in raw.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def load_lexicon(
    words_path: Path,
    abbrev_path: Path,
    whitelist_path: Path,
    blacklist_path: Path,
) -> Lexicon:
    words = frozenset(w.lower() for w in _read_lines(words_path))
    whitelist = frozenset(w.lower() for w in _read_lines(whitelist_path))
    blacklist = frozenset(w.lower() for w in _read_lines(blacklist_path))
    abbrev: dict[str, str] = {}
    for line in _read_lines(abbrev_path):
        if "\t" not in line:
            raise LexiconLoadError(f"bad abbreviation entry (need TAB): {line!r}")
        key, _, value = line.partition("\t")
        abbrev[key.strip().lower()] = value.strip().lower()
    # resolve chains so expansion is a fixed point (keeps normalization idempotent)
    for key in list(abbrev):
        seen = {key}
        value = abbrev[key]
        while value in abbrev and value not in seen:
            seen.add(value)
            value = abbrev[value]
        abbrev[key] = value
    return Lexicon(words, abbrev, whitelist, blacklist)


def default_lexicon() -> Lexicon:
    data = resources.files("codelineage").joinpath("data")
    return load_lexicon(
        Path(str(data / "words.txt")),
        Path(str(data / "abbrev.tsv")),
        Path(str(data / "whitelist.txt")),
        Path(str(data / "blacklist.txt")),
    )


# -- extraction --------------------------------------------------------------

_REGISTRY_RE = re.compile(r"HKEY_|SOFTWARE\\\\|SOFTWARE\\", re.IGNORECASE)
_FILEPATH_RE = re.compile(
    r"[A-Za-z]:\\|\\\\[A-Za-z0-9_.$]+\\|%[A-Za-z]+%\\|\.(exe|dll|sys|bat|ini)\b",
    re.IGNORECASE,
)
_WORD_RE = re.compile(r"[A-Za-z]+")


def _comment_keywords(
    comment: str, blacklist: frozenset[str], k: int = COMMENT_TOP_K
) -> list[str]:
    """Frequency-ranked top-k non-stopword words of one comment block."""
    counts: dict[str, int] = {}
    for word in _WORD_RE.findall(comment):
        w = word.lower()
        if w in blacklist or len(w) < MIN_TAG_LEN:
            continue
        counts[w] = counts.get(w, 0) + 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [w for w, _ in ranked[:k]]


def extract_raw_tags(
    unit: FunctionUnit, lexicon: Optional[Lexicon] = None
) -> list[RawTag]:
    """Raw tags: function name, identifier tokens, comment keywords, and
    registry/file-path string literals."""
    blacklist = lexicon.blacklist if lexicon else frozenset()
    raw: list[RawTag] = [RawTag(unit.name, TagSource.FunctionName)]
    for tok in unit.tokens:
        if tok.kind is TokKind.Identifier and tok.text != unit.name:
            raw.append(RawTag(tok.text, TagSource.VariableName))
        elif tok.kind is TokKind.StringLiteral:
            body = tok.text.strip('"')
            if not body:
                continue
            if _REGISTRY_RE.search(body):
                raw.append(RawTag(body, TagSource.RegistryPath))
            elif _FILEPATH_RE.search(body):
                raw.append(RawTag(body, TagSource.FilePath))
    for comment in unit.comments:
        for word in _comment_keywords(comment, blacklist):
            raw.append(RawTag(word, TagSource.Comment))
    return raw


# -- normalization ------------------------------------------------------------

_CAMEL_RE = re.compile(
    r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+"
)


def split_raw_tag(text: str) -> list[str]:
    """Step 1: split camelCase and symbol-joined raw tags into word pieces."""
    pieces: list[str] = []
    for chunk in re.split(r"[^A-Za-z0-9]+", text):
        if chunk:
            pieces.extend(_CAMEL_RE.findall(chunk))
    return pieces


def normalize_tags(raw: Iterable[RawTag], lexicon: Lexicon) -> TagSet:
    """Apply the five normalization steps in order; output is sorted and pure."""
    provenance: dict[str, set[TagSource]] = {}
    for rt in raw:
        for piece in split_raw_tag(rt.text):  # (1) split
            piece = piece.lower()
            piece = lexicon.abbreviations.get(piece, piece)  # (2) expand
            piece = re.sub(r"[^a-z]", "", piece)  # (3) clean + lowercase
            if not piece:
                continue
            if not lexicon.is_word(piece):  # (4) dictionary/whitelist filter
                continue
            provenance.setdefault(piece, set()).add(rt.source)  # (5) dedupe
    return TagSet(tags=sorted(provenance), provenance=provenance)


def function_tags(unit: FunctionUnit, lexicon: Lexicon) -> TagSet:
    return normalize_tags(extract_raw_tags(unit, lexicon), lexicon)
