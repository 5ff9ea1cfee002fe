"""Exception types shared across the package."""

from __future__ import annotations


class RainbowForgeError(Exception):
    """Base class for all library errors."""


class NotProper(RainbowForgeError):
    """A coloring assigns the same color to two adjacent vertices."""

    def __init__(self, u: int, v: int, color: int):
        super().__init__(f"vertices {u} and {v} are adjacent and share color {color}")
        self.edge = (u, v)
        self.color = color


class BudgetExceeded(RainbowForgeError):
    """An exact search hit its node or size limit. No answer is implied."""

    def __init__(self, what: str, limit: int, kind: str = "nodes"):
        super().__init__(f"{what}: search budget exceeded ({kind} limit {limit})")
        self.what = what
        self.limit = limit
        self.kind = kind


class PreconditionFailed(RainbowForgeError):
    pass


class GirthViolation(RainbowForgeError):
    """A tree-partition audit failed; carries the offending witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class LiftFailed(RainbowForgeError):
    def __init__(self, message: str, chord=None, cycle=None):
        super().__init__(message)
        self.chord = chord
        self.cycle = cycle


class EmbeddingFailed(RainbowForgeError):
    def __init__(self, message: str, state=None):
        super().__init__(message)
        self.state = state


class FormatError(RainbowForgeError, ValueError):
    """Malformed graph, coloring or forest file."""
