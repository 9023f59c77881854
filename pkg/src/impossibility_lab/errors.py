"""Exception hierarchy shared by every module."""


class LabError(Exception):
    """Base class for all errors raised by impossibility_lab."""


class InputError(LabError, ValueError):
    """Arguments out of range or malformed input data."""


class InvalidTable(LabError):
    """A tabulated social choice rule is not total over its profile domain."""


class UnsupportedRule(LabError):
    """The operation needs a rule family defined on sub-societies or subsets."""


class PreconditionFailed(LabError):
    """A documented precondition does not hold.

    ``witness`` carries whatever evidence the check produced (an axiom report,
    a counterexample profile, ...).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AxiomViolation(LabError):
    """A proof step failed, so the rule cannot satisfy Pareto and IIA."""

    def __init__(self, message, pair=None, witness=None):
        super().__init__(message)
        self.pair = pair
        self.witness = witness


class InternalInvariantBroken(LabError, AssertionError):
    """Something that can never happen on valid input happened."""


class IllegalMove(LabError):
    """A game policy returned a move outside the legal move set."""


class MapRangeError(LabError):
    """A simplex map returned a point outside the simplex."""
