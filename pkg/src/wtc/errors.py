"""Exception hierarchy shared by every module of the package."""


class WTCError(Exception):
    """Base class for all errors raised by :mod:`wtc`."""


class InvalidPES(WTCError):
    """The raw data does not describe a prime event structure."""


class CyclicCausality(InvalidPES):
    pass


class SelfConflict(InvalidPES):
    pass


class CausalConflictOverlap(InvalidPES):
    pass


class DanglingEvent(InvalidPES):
    pass


class UnknownEvent(WTCError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class TauInCarrier(WTCError):
    pass


class InconsistentSet(WTCError):
    pass


class DomainClash(WTCError):
    pass


class RangeClash(WTCError):
    pass


class TauArgument(WTCError):
    pass


class NotApplicable(WTCError):
    pass


class NotABisimulation(WTCError):
    pass


class UnboundVariable(WTCError):
    pass


class UnboundProposition(WTCError):
    pass


class PositivityViolation(WTCError):
    pass


class ArityMismatch(WTCError):
    pass


class ArityError(WTCError):
    pass


class BoundsExceeded(WTCError):
    pass


class FormulaError(WTCError):
    """Structurally malformed formula (e.g. a binder on the silent label)."""


class ParseError(WTCError, SyntaxError):
    """Syntax error in a PES file, formula or process term.

    Carries the 1-based ``line`` and ``column`` of the offending token.
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)

    def __str__(self):
        return self.args[0]
