class AlgographError(Exception):
    """Base class for errors raised by algograph."""


class UnknownInstruction(AlgographError, KeyError):
    pass


class ConventionViolation(AlgographError, ValueError):
    """A control graph has an edge leaving its terminal state, or similar."""


class ArityMismatch(AlgographError, ValueError):
    pass


class FrameMismatch(AlgographError, ValueError):
    pass


class UnknownVariable(AlgographError, KeyError):
    pass


class MissingProgram(AlgographError, KeyError):
    pass


class MissingLabel(AlgographError, KeyError):
    pass


class UnboundSymbol(AlgographError, KeyError):
    pass


class ModelCheckFailed(AlgographError):
    def __init__(self, report):
        super().__init__(f"model check failed: {report.summary()}")
        self.report = report


class SpecificationMismatch(AlgographError, ValueError):
    pass


class BudgetExceeded(AlgographError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ParseError(AlgographError, ValueError):
    pass
