"""Exception hierarchy shared across the package."""


class HetseqError(Exception):
    """Base class for all errors raised by hetseq."""


class DomainError(HetseqError, ValueError):
    """An argument lies outside the domain of an operation."""


class ConfigError(HetseqError, ValueError):
    """A configuration object violates its invariants."""


class ParseError(HetseqError, ValueError):
    """A data file could not be ingested.

    ``row`` is the 1-based data row (header excluded) and ``column`` the
    header name, when the problem can be pinned to a cell.
    """

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class DegenerateFoldError(HetseqError):
    """A fold statistic is undefined (empty/singleton cell or zero variance).

    ``cell_counts`` maps ``(group, arm)`` to the number of units in that
    cell; ``fold`` is filled in by the pipeline once the fold is known.
    """

    def __init__(self, message, cell_counts=None, fold=None):
        super().__init__(message)
        self.cell_counts = cell_counts
        self.fold = fold


class FitError(DegenerateFoldError):
    """A learner could not be fit on its training set (e.g. an empty arm)."""


class DegenerateRunError(HetseqError):
    """No usable fold statistics remain after applying the degenerate policy."""
