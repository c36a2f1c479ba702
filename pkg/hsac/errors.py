"""
Exception hierarchy for the HSAC testbed.
"""


class HsacError(Exception):
    """Base class for all errors raised by hsac"""


class ConfigurationError(HsacError, ValueError):
    """Invalid configuration, hyperparameter, or tensor shape"""


class UsageError(HsacError, RuntimeError):
    """An object was used outside of its lifecycle (e.g. a consumed tape)"""


class DistributionError(HsacError, ValueError):
    """Invalid categorical distribution or policy table"""


class NonFiniteError(HsacError, ArithmeticError):
    """A NaN or infinity appeared where finite numbers are required"""
