"""kneser-defects: Exact chromatic numbers and colorability defects of generalized Kneser hypergraphs."""

import os

__version__ = "0.1.0"

# Hard capacity for any hypergraph handled by the solvers (base or Kneser)
MAX_VERTICES = 128

# Override for the default search budget (set via CLI --budget or programmatically)
_budget_override: int | None = None


class KneserDefectsError(Exception):
    """Base class for all errors raised by kneser-defects."""

    pass


class ConfigError(KneserDefectsError):
    """Raised when environment configuration is invalid."""

    pass


class UsageError(KneserDefectsError, ValueError):
    """Raised when arguments do not fit together (e.g. mismatched vertex universes)."""

    pass


class DomainError(KneserDefectsError, ValueError):
    """Raised when a mathematical precondition fails (e.g. s >= |e|)."""

    pass


class CapacityError(KneserDefectsError, ValueError):
    """Raised when a hypergraph exceeds MAX_VERTICES."""

    pass


class HypergraphParseError(KneserDefectsError, ValueError):
    """Raised when a hypergraph file is malformed."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.message = message


def _validate_budget(value: int | str) -> int:
    """Validate and normalize a node budget.

    Args:
        value: The budget, as an int or a decimal string.

    Returns:
        The budget as a positive int.

    Raises:
        ConfigError: If the budget is not a positive integer.
    """
    if isinstance(value, str):
        value = value.strip()
        if not (value.isascii() and value.isdigit()):
            raise ConfigError(f"Budget must be a positive integer, got '{value}'")
        value = int(value)
    if value < 1:
        raise ConfigError(f"Budget must be at least 1, got {value}")
    return value


def set_default_budget(nodes: int | None) -> None:
    """Set an explicit default node budget for the exact solvers.

    This takes precedence over the environment. Call with None to clear
    the override.
    """
    global _budget_override
    if nodes is None:
        _budget_override = None
    else:
        _budget_override = _validate_budget(nodes)


def get_default_budget() -> int | None:
    """Get the node budget used when a solver is called without one.

    Resolution order:
    1. Explicit override (set via set_default_budget() or CLI --budget)
    2. KNESER_DEFECTS_BUDGET environment variable
    3. None (unbounded, exhaustive search)

    Raises:
        ConfigError: If the environment variable is not a positive integer.
    """
    if _budget_override is not None:
        return _budget_override

    env_budget = os.environ.get("KNESER_DEFECTS_BUDGET", "").strip()
    if env_budget:
        return _validate_budget(env_budget)

    return None


def get_log_level() -> str:
    """Get the log level name from KNESER_DEFECTS_LOG_LEVEL (default WARNING)."""
    level = os.environ.get("KNESER_DEFECTS_LOG_LEVEL", "").strip().upper()
    if level in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        return level
    return "WARNING"
