"""Exception hierarchy.

Every error raised by the package derives from :class:`MetaSweepError`. The
four families map onto the CLI exit codes (usage=2, parse=3, analysis=4,
io=5).
"""

from __future__ import annotations


class MetaSweepError(Exception):
    exit_code = 1


# --- usage -----------------------------------------------------------------


class UsageError(MetaSweepError):
    exit_code = 2


class InvalidAlpha(UsageError):
    pass


class InvalidKind(UsageError):
    pass


# --- parsing / validation --------------------------------------------------


class IngestError(MetaSweepError):
    """A malformed input row or header.

    ``line`` is 1-based and refers to the physical line of the input file,
    or is ``None`` when the record was validated outside of a file.
    """

    exit_code = 3

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        super().__init__(self.__str__())

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}: {self.message}"


class EncodingError(IngestError):
    pass


class BadHeader(IngestError):
    pass


class BadSeparator(IngestError):
    pass


class TrailingSeparator(IngestError):
    pass


class RaggedRow(IngestError):
    pass


class EmptyConditionValue(IngestError):
    pass


class EmptyLabel(IngestError):
    pass


class DuplicateKey(IngestError):
    pass


class InvalidNumber(IngestError):
    pass


class NonFiniteNumber(InvalidNumber):
    pass


class CommaDecimal(InvalidNumber):
    pass


class NonPositiveCount(IngestError):
    pass


class NegativeSd(IngestError):
    pass


# --- analysis --------------------------------------------------------------


class AnalysisError(MetaSweepError):
    exit_code = 4


class ZeroPooledSd(AnalysisError):
    def __init__(self, study: str | None = None):
        self.study = study
        what = f"study {study!r}" if study else "study"
        super().__init__(f"{what}: both groups have zero standard deviation")


class DegenerateXi(AnalysisError):
    pass


class OutOfDomain(AnalysisError, ValueError):
    pass


class InsufficientStudies(AnalysisError):
    pass


class AmbiguousMembership(AnalysisError):
    pass


# --- io --------------------------------------------------------------------


class IoFailure(MetaSweepError):
    exit_code = 5

    def __init__(self, path, reason: str):
        self.path = path
        super().__init__(f"{path}: {reason}")
