"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration (bad qubit count, odd gate count, bad CLI args)."""


class CapacityError(ValueError):
    """Requested a dense operation beyond the supported system size."""


class ParseError(ValueError):
    """Malformed Hamiltonian file; message carries the offending line number."""
