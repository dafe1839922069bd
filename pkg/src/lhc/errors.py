"""Exception types shared across the package.

The CLI maps these onto exit codes: ParseError -> 3, precondition
violations (everything else below) -> 4, unexpected errors -> 5.
"""


class LhcError(Exception):
    """Base class for all errors raised by this package."""


class UnknownTerm(LhcError):
    def __init__(self, term_id):
        super().__init__(f"unknown term: {term_id!r}")
        self.term_id = term_id


class InvalidWeight(LhcError):
    def __init__(self, weight):
        super().__init__(f"weight must be in (0, 1], got {weight!r}")
        self.weight = weight


class EmptyLabel(LhcError):
    def __init__(self):
        super().__init__("term label must be non-empty")


class ParseError(LhcError):
    """Syntax error in an imported stream, with 1-based position."""

    def __init__(self, message, line=None, column=None):
        pos = ""
        if line is not None:
            pos = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + pos)
        self.line = line
        self.column = column


class MalformedRow(LhcError):
    """A clinical record row that cannot be ingested; carries the row index."""

    def __init__(self, index, reason):
        super().__init__(f"row {index}: {reason}")
        self.index = index
        self.reason = reason


class EmptySnapshot(LhcError):
    def __init__(self):
        super().__init__("snapshot holds no statements")


class RankTooLarge(LhcError):
    def __init__(self, k, max_rank):
        super().__init__(f"rank {k} exceeds matrix rank bound {max_rank}")
        self.k = k
        self.max_rank = max_rank


class UnknownStatement(LhcError):
    def __init__(self, key):
        super().__init__(f"no statement with key {key!r}")
        self.key = key


class NoMatch(LhcError):
    """Free-text query where no token maps to any known term."""

    def __init__(self, query):
        super().__init__(f"no term matches query {query!r}")
        self.query = query


class MalformedHypothesis(LhcError):
    pass


class EmptySets(LhcError):
    def __init__(self):
        super().__init__("evaluation needs non-empty system and gold statement sets")


class StoreUnavailable(LhcError):
    def __init__(self, path, reason):
        super().__init__(f"store at {path!r} unavailable: {reason}")
        self.path = path
