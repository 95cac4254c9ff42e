"""Exception hierarchy.

Errors derived from :class:`InputError` describe bad input (CLI exit code 2);
:class:`InvariantViolation` signals a failed structural check (exit code 3).
"""


class ToricError(Exception):
    """Base class for every error raised by this package."""


class InputError(ToricError, ValueError):
    pass


class DimensionError(InputError):
    pass


class RankError(InputError):
    pass


class SaturationError(InputError):
    pass


class DegenerateInputError(InputError):
    pass


class GeometryError(InputError):
    pass


class PartitionError(InputError):
    pass


class NotNefError(InputError):
    pass


class SubstitutionError(InputError):
    pass


class CoefficientError(InputError):
    pass


class ChartError(InputError):
    pass


class IncompatibleError(InputError):
    pass


class ParameterError(InputError):
    pass


class FanoConditionError(InputError):
    pass


class SelectionError(InputError):
    pass


class BasisError(InputError):
    pass


class SamplingError(ToricError):
    pass


class InvariantViolation(ToricError):
    """A theorem-level check failed; indicates a bug or violated hypothesis."""
