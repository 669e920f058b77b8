"""Exception types shared across the package."""


class QBaileyError(Exception):
    """Base class for all package errors."""


class ZeroLeadingTerm(QBaileyError, ZeroDivisionError):
    """Raised when inverting a series that is zero up to its truncation order."""


class BeyondTruncation(QBaileyError, IndexError):
    """Raised when a coefficient at or beyond the truncation order is requested."""


class NonConvergent(QBaileyError, ValueError):
    """Raised for infinite products that do not converge q-adically."""


class DegenerateParameter(QBaileyError, ValueError):
    """Raised when a parameter specialization makes a required denominator vanish."""


class NonTerminating(QBaileyError, RuntimeError):
    """Raised when a summation fails to show valuation growth."""


class EvenInput(QBaileyError, ValueError):
    """Raised when an odd integer is required."""


class UnknownName(QBaileyError, KeyError):
    """Raised for an unknown series name or registry id."""
