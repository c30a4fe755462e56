"""Exception hierarchy shared by every stage of the embedding pipeline.

Each class carries the CLI exit code it maps to. ``stage`` is filled in by
the pipeline when an error crosses a stage boundary.
"""

from __future__ import annotations


class TdpmError(Exception):
    exit_code = 1

    def __init__(self, message: str, *, stage: str | None = None):
        super().__init__(message)
        self.stage = stage

    def __str__(self) -> str:
        msg = super().__str__()
        return f"[{self.stage}] {msg}" if self.stage else msg


class InvalidArgumentError(TdpmError, ValueError):
    exit_code = 2


class ParseError(TdpmError, ValueError):
    exit_code = 3

    def __init__(self, message: str, *, row: int | None = None,
                 column: int | None = None, stage: str | None = None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message, stage=stage)
        self.row = row
        self.column = column


class DataIOError(TdpmError, OSError):
    exit_code = 3


class NumericError(TdpmError, ArithmeticError):
    exit_code = 4


class DegenerateNeighborhoodError(NumericError):
    """Centered neighborhood of ``index`` has rank below the tangent dimension."""

    def __init__(self, message: str, *, index: int | None = None,
                 rank: int | None = None, stage: str | None = None):
        super().__init__(message, stage=stage)
        self.index = index
        self.rank = rank


class DisconnectedGraphError(TdpmError):
    exit_code = 5

    def __init__(self, message: str, *, component_sizes: list[int] | None = None,
                 stage: str | None = None):
        super().__init__(message, stage=stage)
        self.component_sizes = list(component_sizes or [])
