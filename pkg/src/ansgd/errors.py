"""Exception types shared across the package."""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed dataset input; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ConfigError(ValueError):
    """Rejected parameter combination, named in the message."""


class DivergenceError(RuntimeError):
    """An iterate became non-finite; carries the iteration index."""

    def __init__(self, iteration: int, message: str = "", run_id: int | None = None):
        detail = message or "iterate is non-finite"
        where = f"iteration {iteration}" if run_id is None else f"run {run_id}, iteration {iteration}"
        super().__init__(f"{detail} at {where}")
        self.iteration = iteration
        self.run_id = run_id


class OracleError(RuntimeError):
    """Reference solver failed to meet its convergence certificate."""
