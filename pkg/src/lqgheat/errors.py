"""Exception types shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, NumericalError -> 3,
GridFormatError and OSError -> 4.
"""


class LqgError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(LqgError):
    """Invalid configuration value; message carries the offending key path."""


class NumericalError(LqgError):
    """A numerical contract was violated (solver stall, conservation breach,
    positivity breach, non-finite weights)."""


class GridFormatError(LqgError):
    """A grid file failed to parse (bad magic, size mismatch, non-finite data)."""
