"""Identifier-based syscall/API scanning, per-period top-k tables, and
CWE-inheritance enrichment statistics (exact Fisher test)."""

from __future__ import annotations

import csv
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .corpus import Corpus, Specimen
from .cparse import TokKind, lex
from .errors import EmptyDerivedSet, EmptyListError, ReportParseError


class IdentifierKind(Enum):
    Syscall = "syscall"
    Api = "api"


@dataclass(frozen=True)
class IdentifierList:
    kind: IdentifierKind
    names: frozenset[str]


@dataclass(frozen=True)
class ScanHit:
    specimen_id: str
    identifier: str
    kind: IdentifierKind
    occurrence_count: int
    specimen_presence: bool = True


@dataclass(frozen=True)
class CweFinding:
    specimen_id: str
    cwe_id: int
    file: str
    line: int
    message: str


@dataclass(frozen=True)
class EnrichmentResult:
    cwe_id: int
    derived_hits: int
    derived_total: int
    overall_hits: int
    overall_total: int
    derived_rate: float
    overall_rate: float
    p_value: float


def load_identifier_list(path: str | Path, kind: IdentifierKind) -> IdentifierList:
    """One identifier per line; blank lines and # comments ignored."""
    names = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            names.add(line)
    if not names:
        raise EmptyListError(f"identifier list {path} is empty")
    return IdentifierList(kind=kind, names=frozenset(names))


def _fold(name: str) -> str:
    # the Windows API `Sleep` and libc `sleep` are reported as one token
    return "sleep" if name in ("Sleep", "sleep") else name


def scan_specimen(specimen: Specimen, idlist: IdentifierList) -> list[ScanHit]:
    """Match identifier tokens only (comments and strings never match)."""
    folded = {_fold(n) for n in idlist.names}
    counts: dict[str, int] = {}
    for f in specimen.files:
        tokens, _ = lex(f.text)
        for t in tokens:
            if t.kind is TokKind.Identifier:
                name = _fold(t.text)
                if name in folded:
                    counts[name] = counts.get(name, 0) + 1
    return [
        ScanHit(specimen.id, name, idlist.kind, count)
        for name, count in sorted(counts.items())
    ]


def scan_corpus(corpus: Corpus, idlist: IdentifierList) -> list[ScanHit]:
    hits: list[ScanHit] = []
    for s in corpus:
        hits.extend(scan_specimen(s, idlist))
    return hits


@dataclass(frozen=True)
class PeriodRanking:
    start_year: int
    end_year: int
    ranked: tuple[tuple[str, int], ...]  # (identifier, specimen presence count)

    def label(self) -> str:
        return f"{self.start_year}-{self.end_year}"

    def format_row(self) -> str:
        cells = [f"{name} ({count})" for name, count in self.ranked]
        return f"{self.label()} & " + " & ".join(cells)


def parse_periods(text: str) -> list[tuple[int, int]]:
    """Parse '1976-1995,1996-2000' into ordered, disjoint year ranges."""
    bounds = []
    for part in text.split(","):
        start, _, end = part.strip().partition("-")
        bounds.append((int(start), int(end)))
    for (s1, e1), (s2, e2) in zip(bounds, bounds[1:]):
        if e1 >= s2:
            raise ValueError(f"periods overlap: {s1}-{e1} and {s2}-{e2}")
    return bounds


def top_k_by_period(
    corpus: Corpus,
    hits: Sequence[ScanHit],
    k: int,
    period_bounds: Sequence[tuple[int, int]],
) -> list[PeriodRanking]:
    """Rank identifiers per period by specimen presence, ties lexicographic."""
    year_of = {s.id: s.year for s in corpus}
    rankings = []
    for start, end in period_bounds:
        presence: dict[str, set[str]] = {}
        for h in hits:
            y = year_of.get(h.specimen_id)
            if y is not None and start <= y <= end:
                presence.setdefault(h.identifier, set()).add(h.specimen_id)
        ranked = sorted(
            ((name, len(ids)) for name, ids in presence.items()),
            key=lambda kv: (-kv[1], kv[0]),
        )
        rankings.append(PeriodRanking(start, end, tuple(ranked[:k])))
    return rankings


# -- CWE findings --------------------------------------------------------------


def ingest_cwe_findings(
    report_path: str | Path, corpus: Optional[Corpus] = None
) -> tuple[list[CweFinding], list[str]]:
    """Parse an external analyzer's XML or CSV export.

    Specimen attribution is by path prefix against corpus roots; findings
    that match no specimen are returned in the second list, not fatal.
    """
    path = Path(report_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ReportParseError(f"cannot read report {path}: {exc}")
    records: list[tuple[str, int, int, str]] = []  # file, line, cwe, message
    stripped = text.lstrip()
    if stripped.startswith("<"):
        try:
            root = ET.fromstring(text)
        except ET.ParseError as exc:
            raise ReportParseError(f"bad XML report {path}: {exc}")
        for err in root.iter("error"):
            cwe = err.get("cwe")
            if cwe is None:
                continue
            file = err.get("file")
            line = err.get("line")
            if file is None:
                loc = err.find("location")
                if loc is not None:
                    file = loc.get("file")
                    line = loc.get("line")
            if file is None:
                continue
            records.append((file, int(line or 0), int(cwe), err.get("msg", "")))
    else:
        try:
            for row in csv.DictReader(text.splitlines()):
                records.append(
                    (
                        row["file"],
                        int(row.get("line") or 0),
                        int(row["cwe"]),
                        row.get("message", ""),
                    )
                )
        except (KeyError, ValueError) as exc:
            raise ReportParseError(f"bad CSV report {path}: {exc}")

    findings: list[CweFinding] = []
    unattributed: list[str] = []
    roots = []
    if corpus is not None:
        roots = [(s.id, s.root_path.resolve().as_posix()) for s in corpus]
    for file, line, cwe, message in records:
        if cwe <= 0:
            raise ReportParseError(f"bad CWE id {cwe} in {path}")
        sid = ""
        norm = Path(file).as_posix()
        for cand_id, root_path in roots:
            if norm.startswith(root_path + "/") or norm == root_path:
                sid = cand_id
                break
        if corpus is not None and not sid:
            unattributed.append(file)
            continue
        findings.append(CweFinding(sid, cwe, file, line, message))
    return findings, unattributed


# -- enrichment ----------------------------------------------------------------


def _hypergeom_p(k: int, row1: int, row2: int, col1: int) -> Fraction:
    return Fraction(
        math.comb(row1, k) * math.comb(row2, col1 - k),
        math.comb(row1 + row2, col1),
    )


def fisher_exact_two_sided(a: int, b: int, c: int, d: int) -> float:
    """Two-sided Fisher exact p for the 2x2 table [[a, b], [c, d]].

    Sums the exact hypergeometric probabilities of all tables (with the
    same margins) no more likely than the observed one; exact integer
    arithmetic, converted to float at the end.
    """
    if min(a, b, c, d) < 0:
        raise ValueError("table entries must be nonnegative")
    row1, row2, col1 = a + b, c + d, a + c
    if row1 == 0 or row2 == 0 or col1 == 0 or (b + d) == 0:
        return 1.0
    p_obs = _hypergeom_p(a, row1, row2, col1)
    lo = max(0, col1 - row2)
    hi = min(col1, row1)
    total = Fraction(0)
    for k in range(lo, hi + 1):
        p = _hypergeom_p(k, row1, row2, col1)
        if p <= p_obs:
            total += p
    return float(min(total, Fraction(1)))


def cwe_enrichment(
    derived_set: Iterable[str],
    corpus: Corpus,
    findings: Sequence[CweFinding],
    cwe_id: int,
) -> EnrichmentResult:
    """Presence-rate comparison of a CWE between a derived specimen set and
    the disjoint remainder of the corpus, with a two-sided Fisher exact p."""
    derived = set(derived_set)
    if not derived:
        raise EmptyDerivedSet("derived specimen set is empty")
    all_ids = {s.id for s in corpus}
    derived &= all_ids
    if not derived:
        raise EmptyDerivedSet("derived set has no specimens in the corpus")
    background = all_ids - derived
    with_cwe = {f.specimen_id for f in findings if f.cwe_id == cwe_id}
    a = len(derived & with_cwe)
    c = len(background & with_cwe)
    n1, n2 = len(derived), len(background)
    p = fisher_exact_two_sided(a, n1 - a, c, n2 - c)
    return EnrichmentResult(
        cwe_id=cwe_id,
        derived_hits=a,
        derived_total=n1,
        overall_hits=c,
        overall_total=n2,
        derived_rate=a / n1,
        overall_rate=c / n2 if n2 else 0.0,
        p_value=p,
    )
