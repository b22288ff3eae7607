"""Exception hierarchy shared by every module of the package."""


class ArcDomError(Exception):
    """Base class for all package errors."""


class EmptyModel(ArcDomError):
    pass


class DegenerateArc(ArcDomError):
    pass


class InvalidModel(ArcDomError):
    """Endpoint positions are out of range or not pairwise distinct."""


class PreconditionViolated(ArcDomError):
    pass


class PlacementConflict(ArcDomError):
    pass


class UnknownId(ArcDomError):
    pass


class InconsistentMapping(ArcDomError):
    pass


class MappingViolated(ArcDomError):
    pass


class TooLarge(ArcDomError):
    pass


class InvalidSpec(ArcDomError):
    pass


class WeightSignViolation(ArcDomError):
    pass


class KindMismatch(ArcDomError):
    pass


class InternalInvariantError(ArcDomError):
    """A reduction produced a candidate that fails verification."""


class ParseError(ArcDomError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
