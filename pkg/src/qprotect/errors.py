"""Exception types shared across the package."""


class QProtectError(Exception):
    """Base class for all package-specific errors."""


class RangeError(QProtectError, ValueError):
    """A numeric parameter lies outside its admissible interval."""


class ZeroTraceError(QProtectError, ArithmeticError):
    """A post-selection branch has vanishing trace and cannot be normalized."""


class NotPSDError(QProtectError, ValueError):
    """Matrix expected to be positive semidefinite has a significantly negative eigenvalue."""


class NotContractionError(QProtectError, ValueError):
    """Operator expected to be a contraction has spectral norm above 1."""


class DegenerateStrengthError(QProtectError, ValueError):
    """Gadget strength at 0 or 1, where the ancilla-rotation construction breaks down."""


class ConfigError(QProtectError, ValueError):
    """Sweep or CLI configuration is invalid."""


class UnreachableError(QProtectError, RuntimeError):
    """Requested target cannot be met anywhere in the search interval."""
