"""Exception types raised across umgnet

Every error derives from `UpliftError` and from the builtin exception
that describes it best, so callers can catch either.  The `kind` slug is
used by the command line interface for its one-line diagnostics.
"""


class UpliftError(Exception):
    kind = "error"


class ShapeError(UpliftError, ValueError):
    kind = "shape"


class ParameterError(UpliftError, ValueError):
    kind = "parameter"


class IngestionError(UpliftError, ValueError):
    kind = "ingestion"


class ConfigurationError(UpliftError, ValueError):
    kind = "configuration"


class UndefinedATEError(UpliftError, ArithmeticError):
    kind = "undefined-ate"


class NoTrainingDataError(UpliftError, RuntimeError):
    kind = "no-training-data"
