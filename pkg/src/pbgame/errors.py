"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Raised for an invalid game configuration or experiment spec."""


class IllegalMoveError(ValueError):
    """A move violates the rules of the game.

    ``rule`` names the violated rule; ``record_index`` is filled in when the
    move came from a transcript being replayed.
    """

    def __init__(self, message, rule="illegal", record_index=None):
        super().__init__(message)
        self.rule = rule
        self.record_index = record_index

    def __str__(self):
        msg = super().__str__()
        if self.record_index is not None:
            return f"record {self.record_index}: {msg}"
        return msg


class PreconditionError(RuntimeError):
    """A strategy phase was invoked outside the regime it is defined for."""


class RoomExhaustedError(RuntimeError):
    """Every A-B pair of the waiting-room is already an edge."""


class EscalationError(AssertionError):
    """An escalation step finished but its postconditions do not hold."""


class CapExceededError(ValueError):
    """The exact solver was asked for a board above its size cap."""


class TranscriptFormatError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line
