"""Error classes shared across the toolkit, each mapped to a CLI exit code."""


class CodeLineageError(Exception):
    """Base class; exit_code distinguishes error classes at the CLI boundary."""

    exit_code = 1


class ManifestParseError(CodeLineageError):
    exit_code = 10


class DuplicateSpecimenId(CodeLineageError):
    exit_code = 11


class MissingTimestamp(CodeLineageError):
    exit_code = 12


class UnknownLabelSlot(CodeLineageError):
    exit_code = 13


class UnknownLanguageRatio(CodeLineageError):
    exit_code = 20


class EmptyCorpus(CodeLineageError):
    exit_code = 21


class ConfigError(CodeLineageError):
    exit_code = 30


class LexiconLoadError(CodeLineageError):
    exit_code = 40


class EmptyListError(CodeLineageError):
    exit_code = 50


class ReportParseError(CodeLineageError):
    exit_code = 51


class EmptyDerivedSet(CodeLineageError):
    exit_code = 52


class UnknownSpecimen(CodeLineageError):
    exit_code = 60


class IoError(CodeLineageError):
    exit_code = 70
