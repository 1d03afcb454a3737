"""Exception types raised across the package.

Every error is a subclass of SynrouteError so callers (and the HTTP layer)
can catch the whole family at once.
"""


class SynrouteError(Exception):
    """Base class for all package errors."""


# --- file / record loading ---------------------------------------------------

class MissingFileError(SynrouteError):
    pass


class MalformedLineError(SynrouteError):
    def __init__(self, line_no: int, reason: str = ""):
        self.line_no = line_no
        super().__init__(f"malformed line {line_no}" + (f": {reason}" if reason else ""))


class DuplicateIdError(SynrouteError):
    def __init__(self, duplicate_id: str):
        self.duplicate_id = duplicate_id
        super().__init__(f"duplicate id: {duplicate_id!r}")


class UnknownPassageIdError(SynrouteError):
    pass


class VersionMismatchError(SynrouteError):
    pass


# --- parse reading -----------------------------------------------------------

class MalformedColumnCountError(SynrouteError):
    def __init__(self, line_no: int, got: int):
        self.line_no = line_no
        super().__init__(f"line {line_no}: expected 10 tab-separated columns, got {got}")


class CyclicHeadsError(SynrouteError):
    pass


class MultipleRootsError(SynrouteError):
    pass


class InvalidHeadError(SynrouteError):
    pass


class UnbalancedParensError(SynrouteError):
    def __init__(self, position: int):
        self.position = position
        super().__init__(f"unbalanced parentheses at offset {position}")


class EmptyNodeError(SynrouteError):
    pass


class EmptyTreeError(SynrouteError):
    pass


# --- featurization -----------------------------------------------------------

class SingleClassLabelsError(SynrouteError):
    pass


class KTooLargeError(SynrouteError):
    pass


class EmptyTrainingSetError(SynrouteError):
    pass


# --- adapter -----------------------------------------------------------------

class LengthMismatchError(SynrouteError):
    pass


class DimMismatchError(SynrouteError):
    pass


class EmptyDataError(SynrouteError):
    pass


class SingleClassError(SynrouteError):
    pass


# --- graph constr. / retrieval -----------------------------------------------

class UnknownSourcePassageError(SynrouteError):
    pass


class GraphFormatError(SynrouteError):
    pass


class EmptyFactSetError(SynrouteError):
    pass


class EntityNotInGraphError(SynrouteError):
    pass


class ZeroOccurrenceError(SynrouteError):
    pass


class NoConvergenceError(SynrouteError):
    def __init__(self, max_iters: int):
        self.max_iters = max_iters
        super().__init__(f"diffusion did not converge within {max_iters} iterations")


# --- routing / pipeline ------------------------------------------------------

class InvalidThresholdsError(SynrouteError):
    pass


class MissingParseError(SynrouteError):
    pass


class IndexNotBuiltError(SynrouteError):
    pass


# --- evaluation --------------------------------------------------------------

class EmptyDenominatorError(SynrouteError):
    pass


class EmptyValidationError(SynrouteError):
    pass


class EmptyRecordSetError(SynrouteError):
    pass


class JudgeUnavailableError(SynrouteError):
    pass
