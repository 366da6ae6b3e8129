"""Exception types raised across the package."""


class EthicaArError(Exception):
    """Base class for all package errors."""


# --- vision ---------------------------------------------------------------

class DictionarySearchFailed(EthicaArError):
    """The codeword search exhausted its trial budget."""


class BadWindow(EthicaArError):
    """Adaptive threshold window is even, too small, or larger than the image."""


class DegenerateConfiguration(EthicaArError):
    """Three of the four homography correspondence points are collinear."""


class OutOfFrame(EthicaArError):
    """A sample or placement point falls outside the image bounds."""


# --- game -----------------------------------------------------------------

class SchemaError(EthicaArError):
    """Question bank document is not well-formed."""


class ValidationError(EthicaArError):
    """Question bank content violates an invariant (duplicate id, empty probable set, ...)."""


class UnknownStudent(EthicaArError):
    """Student id is not on the roster."""


class WrongPhase(EthicaArError):
    """Session operation called outside its legal phase."""

    def __init__(self, expected, actual):
        super().__init__(f"operation requires phase {expected}, session is in {actual}")
        self.expected = expected
        self.actual = actual


class SessionComplete(EthicaArError):
    """No questions remain to draw."""


# --- store ----------------------------------------------------------------

class SequenceGap(EthicaArError):
    """Appended event does not continue the sequence by exactly one."""


class UnknownEntity(EthicaArError):
    """Event or query references a class/student/session that does not exist."""


class DuplicateEntity(EthicaArError):
    """Creation event for a class/student/session id that already exists."""


class StorageFailure(EthicaArError):
    """The backing log file could not be written."""


class CorruptLog(EthicaArError):
    """Replay hit an event that contradicts the log built so far."""

    def __init__(self, seq, reason):
        super().__init__(f"corrupt log at seq {seq}: {reason}")
        self.seq = seq
        self.reason = reason
