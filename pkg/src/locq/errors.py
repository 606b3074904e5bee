"""Exception types and the operation counter used for scaling checks."""

from __future__ import annotations


class UnsatisfiableClusterError(Exception):
    """A cluster does not support any error producing its syndrome."""


class CodeFormatError(Exception):
    """A code description file is malformed or inconsistent."""


class DecoderMismatchError(Exception):
    """A decoder was applied to a code kind it does not handle."""


class OpCounter:
    """Accumulates abstract unit-operation counts for complexity checks."""

    __slots__ = ("ticks",)

    def __init__(self) -> None:
        self.ticks = 0

    def add(self, n: int = 1) -> None:
        self.ticks += n

    def __repr__(self) -> str:
        return f"OpCounter(ticks={self.ticks})"
