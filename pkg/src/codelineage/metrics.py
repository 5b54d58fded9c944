"""Software-engineering metrics: scale, COCOMO cost estimates, code quality,
and normalized yearly trend aggregation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .corpus import Corpus, Language, SourceFile, Specimen
from .cparse import AstKind, AstNode, FunctionUnit, TokKind, lex, parse_source
from .errors import EmptyCorpus, UnknownLanguageRatio

# backfiring ratios: SLOC per function point
DEFAULT_FP_RATIOS = {"C": 97.0, "Cpp": 50.0}

# basic/organic COCOMO
DEFAULT_COCOMO_A = 2.4
DEFAULT_COCOMO_B = 1.05

PATH_SATURATION = 2**63 - 1

DECISION_KINDS = frozenset(
    {
        AstKind.if_s,
        AstKind.while_s,
        AstKind.do_s,
        AstKind.for_s,
        AstKind.switch_case,
        AstKind.logical_and,
        AstKind.logical_or,
    }
)


@dataclass
class CocomoParams:
    a: float = DEFAULT_COCOMO_A
    b: float = DEFAULT_COCOMO_B

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("COCOMO constants must be positive")


@dataclass
class CocomoEstimate:
    effort_pm: float
    dev_time_months: float
    team_size: float


@dataclass
class SpecimenMetrics:
    specimen_id: str
    sloc: int
    file_count: int
    function_points: float
    effort_pm: float
    dev_time_months: float
    team_size: float
    comment_to_code: float
    mean_cyclomatic: float
    total_exec_paths: int
    total_exec_paths_log10: float
    function_count: int
    cyclomatic_per_function: list[int] = field(default_factory=list)


def _line_classes(file: SourceFile) -> tuple[set[int], set[int]]:
    """Classify 1-based line numbers into (code_lines, comment_lines).

    A line counts as code if any non-comment token touches it; a comment
    line has comment content and no code.
    """
    tokens, _ = lex(file.text)
    code: set[int] = set()
    comment: set[int] = set()
    for t in tokens:
        span = range(t.line, t.line + t.text.count("\n") + 1)
        if t.kind is TokKind.Comment:
            comment.update(span)
        elif t.kind is not TokKind.Whitespace:
            # multi-line strings mark only real content lines
            code.update(span)
    return code, comment - code


def count_sloc(file: SourceFile) -> int:
    """Physical SLOC: lines with code, excluding blanks and comment-only lines."""
    code, _ = _line_classes(file)
    return len(code)


def comment_ratio(file: SourceFile) -> float:
    """comment_lines / max(code_lines, 1)."""
    code, comment = _line_classes(file)
    return len(comment) / max(len(code), 1)


def estimate_function_points(
    sloc: int, language: Language, ratios: Optional[dict[str, float]] = None
) -> float:
    """Backfired function points: SLOC divided by the per-language ratio."""
    table = ratios if ratios is not None else DEFAULT_FP_RATIOS
    key = language.value
    if key not in table:
        raise UnknownLanguageRatio(f"no FP backfire ratio for language {key!r}")
    if sloc == 0:
        return 0.0
    return sloc / table[key]


def cocomo_effort(sloc_total: int, params: CocomoParams) -> float:
    """Effort in person-months: a * (SLOC/1000)^b; 0 for an empty project."""
    if sloc_total == 0:
        return 0.0
    return params.a * (sloc_total / 1000.0) ** params.b


def cocomo_dev_time(effort_pm: float) -> float:
    """Development time in months: 2.5 * effort^0.38; 0 for zero effort."""
    if effort_pm == 0:
        return 0.0
    return 2.5 * effort_pm**0.38


def cocomo_team_size(effort_pm: float, dev_time_months: float) -> float:
    """Full-time developers: effort divided by development time."""
    if effort_pm == 0 and dev_time_months == 0:
        return 0.0
    if dev_time_months == 0:
        raise ZeroDivisionError("positive effort with zero development time")
    return effort_pm / dev_time_months


def cocomo_estimate(sloc_total: int, params: Optional[CocomoParams] = None) -> CocomoEstimate:
    params = params or CocomoParams()
    effort = cocomo_effort(sloc_total, params)
    dev_time = cocomo_dev_time(effort)
    return CocomoEstimate(effort, dev_time, cocomo_team_size(effort, dev_time))


def _is_decision(node: AstNode) -> bool:
    if node.kind in DECISION_KINDS:
        return True
    # cond_e counts only as ternary (3 children); comparisons do not branch
    return node.kind is AstKind.cond_e and len(node.children) == 3


def cyclomatic_complexity(unit: FunctionUnit) -> int:
    """1 + number of decision nodes in the function's AST."""
    ast = unit.body_ast
    if ast is None:
        return 1
    return 1 + sum(1 for n in ast.walk() if _is_decision(n))


def _sat_mul(a: int, b: int) -> int:
    if a > 0 and b > PATH_SATURATION // a:
        return PATH_SATURATION
    return min(a * b, PATH_SATURATION)


def _sat_add(a: int, b: int) -> int:
    return min(a + b, PATH_SATURATION)


def _npath(node: AstNode) -> int:
    kind = node.kind
    ch = node.children
    if kind is AstKind.if_s:
        cond = _npath(ch[0]) if ch else 1
        then = _npath(ch[1]) if len(ch) > 1 else 1
        els = _npath(ch[2]) if len(ch) > 2 else 1
        return _sat_mul(cond, _sat_add(then, els))
    if kind in (AstKind.while_s, AstKind.do_s, AstKind.for_s):
        paths = 1
        for c in ch:
            paths = _sat_mul(paths, _npath(c))
        return _sat_add(paths, 1)
    if kind is AstKind.cond_e and len(ch) == 3:
        return _sat_mul(_npath(ch[0]), _sat_add(_npath(ch[1]), _npath(ch[2])))
    if kind in (AstKind.logical_and, AstKind.logical_or):
        left = _npath(ch[0]) if ch else 1
        right = _npath(ch[1]) if len(ch) > 1 else 1
        return _sat_add(left, right)
    if kind is AstKind.other and any(c.kind is AstKind.switch_case for c in ch):
        # switch wrapper: sum of case paths, +1 skip path when no default
        total = 0
        pre = 1
        has_default = False
        for c in ch:
            if c.kind is AstKind.switch_case:
                total = _sat_add(total, _npath(c))
                has_default = has_default or c.is_default
            else:
                pre = _sat_mul(pre, _npath(c))
        if not has_default:
            total = _sat_add(total, 1)
        return _sat_mul(pre, max(total, 1))
    # sequence semantics: children multiply
    paths = 1
    for c in ch:
        paths = _sat_mul(paths, _npath(c))
    return paths


def execution_paths(unit: FunctionUnit) -> tuple[int, float]:
    """NPATH-style acyclic path count, saturating at 2^63-1, plus log10."""
    ast = unit.body_ast
    paths = _npath(ast) if ast is not None else 1
    return paths, math.log10(paths) if paths > 0 else 0.0


def specimen_metrics(
    specimen: Specimen,
    params: Optional[CocomoParams] = None,
    fp_ratios: Optional[dict[str, float]] = None,
) -> SpecimenMetrics:
    """All twelve per-specimen metrics."""
    sloc = sum(count_sloc(f) for f in specimen.files)
    code_lines = sloc
    comment_lines = 0
    for f in specimen.files:
        code, comment = _line_classes(f)
        comment_lines += len(comment)
    fp = estimate_function_points(sloc, specimen.language, fp_ratios) if sloc else 0.0
    est = cocomo_estimate(sloc, params)

    units: list[FunctionUnit] = []
    for f in specimen.files:
        units.extend(parse_source(f.text, specimen_id=specimen.id, file=f.rel_path))
    cyclo = [cyclomatic_complexity(u) for u in units]
    total_paths = 0
    for u in units:
        p, _ = execution_paths(u)
        total_paths = _sat_add(total_paths, p)
    return SpecimenMetrics(
        specimen_id=specimen.id,
        sloc=sloc,
        file_count=len(specimen.files),
        function_points=fp,
        effort_pm=est.effort_pm,
        dev_time_months=est.dev_time_months,
        team_size=est.team_size,
        comment_to_code=comment_lines / max(code_lines, 1),
        mean_cyclomatic=sum(cyclo) / len(cyclo) if cyclo else 0.0,
        total_exec_paths=total_paths,
        total_exec_paths_log10=math.log10(total_paths) if total_paths > 0 else 0.0,
        function_count=len(units),
        cyclomatic_per_function=cyclo,
    )


@dataclass
class YearlySeries:
    metric_name: str
    raw: dict[int, float]  # year -> raw mean
    points: dict[int, float]  # year -> min-max normalized value

    def to_json(self) -> dict:
        return {
            "metric": self.metric_name,
            "raw": {str(y): v for y, v in sorted(self.raw.items())},
            "normalized": {str(y): v for y, v in sorted(self.points.items())},
        }


def aggregate_yearly(
    corpus: Corpus,
    extractor: Callable[[Specimen], float],
    metric_name: str = "",
) -> YearlySeries:
    """Group by timestamp year, mean per year, min-max normalize across years.

    A constant series normalizes to 0.5 everywhere.
    """
    if len(corpus) == 0:
        raise EmptyCorpus("cannot aggregate an empty corpus")
    by_year: dict[int, list[float]] = {}
    for s in corpus:
        by_year.setdefault(s.year, []).append(extractor(s))
    raw = {y: sum(vs) / len(vs) for y, vs in by_year.items()}
    lo, hi = min(raw.values()), max(raw.values())
    if hi == lo:
        points = {y: 0.5 for y in raw}
    else:
        points = {y: (v - lo) / (hi - lo) for y, v in raw.items()}
    return YearlySeries(metric_name=metric_name, raw=raw, points=points)


METRIC_FIELDS = (
    "sloc",
    "file_count",
    "function_points",
    "effort_pm",
    "dev_time_months",
    "team_size",
    "comment_to_code",
    "mean_cyclomatic",
    "total_exec_paths_log10",
)


def corpus_yearly_series(
    corpus: Corpus,
    params: Optional[CocomoParams] = None,
    fp_ratios: Optional[dict[str, float]] = None,
) -> list[YearlySeries]:
    """One normalized trend series per metric field."""
    cache = {s.id: specimen_metrics(s, params, fp_ratios) for s in corpus}
    series = []
    for name in METRIC_FIELDS:
        series.append(
            aggregate_yearly(
                corpus, lambda s, _n=name: float(getattr(cache[s.id], _n)), name
            )
        )
    return series
