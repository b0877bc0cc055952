"""Exceptions shared across modules."""


class ParseError(ValueError):
    """Malformed group-spec or config text."""


class NotAGroup(ValueError):
    """A multiplication table fails the group axioms."""


class PresentationMismatch(ValueError):
    """Operands belong to different presentations."""


class BudgetExceeded(RuntimeError):
    """An exact enumeration would exceed the configured budget."""


class BudgetExhausted(RuntimeError):
    """A randomized search ran out of trials (not a disproof)."""


class SameAxis(ValueError):
    """Two axes coincide as lines where distinct lines are required."""


class NotHyperbolic(ValueError):
    """Operation requires an element acting hyperbolically on the tree."""


class HInElementary(ValueError):
    """The auxiliary element lies in the elementary closure."""


class InequalityFails(ValueError):
    """A displacement inequality required by a constructor fails."""

    def __init__(self, which, message=""):
        self.which = which
        super().__init__(message or f"inequality {which} fails")


class ConditionFails(ValueError):
    """A concatenation condition fails."""

    def __init__(self, which, index, message=""):
        self.which = which
        self.index = index
        super().__init__(message or f"condition ({which}) fails at index {index}")


class CosetCollision(ValueError):
    """Two supposedly distinct coset representatives share a coset."""


class NotAHomomorphism(ValueError):
    """A letter map does not respect the factor relations."""


class PatternFails(ValueError):
    """An alternating power pattern evaluates to the identity."""

    def __init__(self, pattern, message=""):
        self.pattern = pattern
        super().__init__(message or f"pattern {pattern} is trivial")


class AxesEqual(ValueError):
    """Two elements share an axis where distinct axes are required."""


class InsufficientPoints(ValueError):
    """Not enough positive data points for a fit."""
