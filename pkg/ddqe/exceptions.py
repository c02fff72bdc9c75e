from __future__ import annotations


class DDQEError(Exception):
    pass


class InvalidConfigError(DDQEError):
    """Rejected configuration; ``key`` names the offending entry when known."""

    def __init__(self, message: str, key: str | None = None):
        super().__init__(message)
        self.key = key


class DomainError(DDQEError, ValueError):
    pass


class DimensionError(DDQEError, ValueError):
    pass


class IntegrationError(DDQEError):
    pass


class ValidityBreachError(DDQEError):
    pass
