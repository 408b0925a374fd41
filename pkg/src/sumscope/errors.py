"""Exception hierarchy shared across the toolkit.

Every error raised on a documented contract violation derives from
``SumscopeError`` so callers can catch the whole family at once.
"""


class SumscopeError(Exception):
    """Base class for all toolkit errors."""


class ParseError(SumscopeError):
    """A corpus line is not valid JSON."""


class SchemaError(SumscopeError):
    """A parsed record violates the corpus schema (missing or empty fields)."""


class DegenerateInput(SumscopeError):
    """An operation received input for which its value is undefined."""


class InvalidRank(SumscopeError):
    """Requested SVD rank is outside [1, min(m, n)]."""


class InvalidPosition(SumscopeError):
    """A 1-based position lies outside its containing collection."""


class IoError(SumscopeError):
    """A required input file is missing or unreadable."""


class FormatError(SumscopeError):
    """A data file violates its documented format (dimensions, ranges, columns)."""


class AlignmentError(SumscopeError):
    """Externally supplied per-sentence or per-token data does not line up
    with the corpus text it claims to describe."""


class DimensionError(SumscopeError):
    """Two vectors that must share a dimension do not."""


class EmptySelection(SumscopeError):
    """No sentence fits the extraction budget."""


class UsageError(SumscopeError):
    """Invalid command-line invocation (maps to exit code 64)."""
