"""Exception types shared across the package."""


class ParakitError(Exception):
    """Base class for all package errors."""


class InputError(ParakitError):
    """Malformed or type-incompatible input (set mismatch, out-of-range index, ...)."""


class BudgetError(ParakitError):
    """An enumeration would exceed the configured resource budget."""


class ConstructionError(ParakitError):
    """A construction's precondition failed (e.g. non-injective unit map)."""


class InternalCheckError(ParakitError):
    """A law that should hold by theorem failed; indicates a falsified claim or a bug."""
