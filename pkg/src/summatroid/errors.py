"""Exception types shared across the package."""

from __future__ import annotations


class TowerError(ValueError):
    """Invalid field tower parameters."""


class NotPrimeError(TowerError):
    pass


class ReducibleModulusError(TowerError):
    pass


class SubfieldDegreeError(TowerError):
    pass


class ProfileMismatchError(ValueError):
    """Operands live on different blocks, ambient dimensions or profiles."""


class ScaleError(RuntimeError):
    """A brute-force search would exceed its configured ceiling."""

    def __init__(self, what: str, size: int, ceiling: int):
        super().__init__(f"scale exceeded: {what} needs {size} states (ceiling {ceiling})")
        self.what = what
        self.size = size
        self.ceiling = ceiling


DEFAULT_CEILING = 2**24


def guard(what: str, size: int, ceiling: int | None) -> None:
    """Raise ScaleError if ``size`` exceeds ``ceiling`` (``None`` means default)."""
    if ceiling is None:
        ceiling = DEFAULT_CEILING
    if size > ceiling:
        raise ScaleError(what, size, ceiling)
