"""Exception types raised by the package."""


class OttoError(Exception):
    """Base class for every error raised here."""


class DomainError(OttoError, ValueError):
    """An input lies outside the physical or mathematical domain."""


class ConfigError(OttoError, ValueError):
    """A stroke configuration does not support the requested quantity."""


class NotIrreducibleError(DomainError):
    """The cubic does not have three distinct real roots."""


class ClassificationError(OttoError):
    """A point matched none of the four operating-mode sign patterns."""
