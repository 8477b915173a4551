"""Exception hierarchy shared by every qtop module."""


class QtopError(Exception):
    """Base class for domain errors (CLI exit status 1)."""

    code = "QtopError"


class NotATopology(QtopError):
    code = "NotATopology"


class InvalidPartition(QtopError):
    code = "InvalidPartition"


class NotSurjective(QtopError):
    code = "NotSurjective"


class NotContinuous(QtopError):
    code = "NotContinuous"


class NotQuotient(QtopError):
    code = "NotQuotient"


class BaseMismatch(QtopError):
    code = "BaseMismatch"


class AlphabetMismatch(QtopError):
    code = "AlphabetMismatch"


class CarrierMismatch(QtopError):
    code = "CarrierMismatch"


class UnknownName(QtopError):
    code = "UnknownName"


class SizeLimit(QtopError):
    """A construction would exceed the configured carrier bound (CLI exit status 2)."""

    code = "SizeLimit"


class BadInput(QtopError):
    """Space description does not match the input schema."""

    code = "BadInput"
