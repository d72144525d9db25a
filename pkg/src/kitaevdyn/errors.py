"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands live on registers of different size, or a site is out of range."""


class ResourceError(RuntimeError):
    """A dense conversion would exceed the configured site cap."""


class ContractError(ValueError):
    """An input violates a precondition (e.g. a non-Hermitian Hamiltonian)."""


class SynthesisError(RuntimeError):
    """No pulse pattern satisfies the link constraints.

    ``certificate`` holds the bonds ``(i, j, link)`` that could not be satisfied.
    """

    def __init__(self, message, certificate=()):
        super().__init__(message)
        self.certificate = tuple(certificate)


class ConfigError(ValueError):
    """Invalid run configuration. ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
