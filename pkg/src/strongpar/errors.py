"""Exception hierarchy; the CLI maps these onto exit codes."""


class StrongparError(Exception):
    """Base class for all library errors."""


class InputError(StrongparError, ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""


class CatalogError(InputError):
    """Unknown group label or invalid size parameter."""


class LatticeError(InputError):
    """Containment or dimension mismatch between lattices."""


class CapExceeded(StrongparError):
    """An enumeration exceeded its configured cap (CLI exit code 3)."""


class NotEasyError(InputError):
    pass


class NotStronglyParabolicError(InputError):
    pass


class ConditionViolation(StrongparError):
    """A concavity / compatibility precondition failed; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FactorizationError(StrongparError):
    """Block elimination hit a non-invertible pivot."""


class NotInGroupError(InputError):
    """Matrix fails the membership test for the requested subgroup."""
