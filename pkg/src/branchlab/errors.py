"""Exception hierarchy shared by every branchlab module."""


class BranchLabError(Exception):
    """Base class for all library errors."""


class InputError(BranchLabError):
    """Malformed textual input; carries an optional line/column position."""

    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(self._format())

    def _format(self):
        where = [] if self.source is None else [str(self.source)]
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"column {self.column}")
        return f"{', '.join(where)}: {self.message}" if where else self.message

    def at_line(self, line):
        """Return a copy of this error positioned at ``line``."""
        return type(self)(self.message, line=line, column=self.column, source=self.source)


class FieldSyntax(InputError):
    pass


class PrimeRequired(InputError):
    pass


class PolySyntax(InputError):
    pass


class NotInValuationRing(BranchLabError):
    pass


class DivisionByZero(BranchLabError, ZeroDivisionError):
    pass


class ResultantUndefined(BranchLabError):
    pass


class OracleInapplicable(BranchLabError):
    """The resultant oracle cannot isolate the local intersection at the origin."""


# branch model
class InvalidBranch(BranchLabError):
    pass


class NotThroughOrigin(InvalidBranch):
    pass


class BothZero(InvalidBranch):
    pass


class NotPrimitive(InvalidBranch):
    pass


# tableau engine
class NonPositiveValuation(BranchLabError):
    pass


class RequiresMinimalPolicy(BranchLabError):
    pass


class UnrealizableTableau(BranchLabError):
    pass


class InsufficientColumns(BranchLabError):
    """A comparison needs tableau columns that are neither stored nor expandable."""


class InfiniteCharacteristicColumn(BranchLabError):
    pass


# clusters
class InvalidCluster(BranchLabError):
    pass


class SingularN(BranchLabError):
    pass


# intersections and approximations
class SameBranch(BranchLabError):
    pass


class NotCharacteristicIndex(BranchLabError):
    pass


class NonIntegerScaling(BranchLabError):
    pass


class IndexOutOfRange(BranchLabError):
    pass


# command line
class UsageError(BranchLabError):
    pass


class UnknownVerb(UsageError):
    pass


class MissingArgument(UsageError):
    pass


class BadOption(UsageError):
    pass
