"""Exception types shared across the package, plus budget lookup."""

import os


class BudgetError(RuntimeError):
    """An enumeration or construction would exceed its configured size limit."""

    def __init__(self, parameter, value, limit):
        self.parameter = parameter
        self.value = value
        self.limit = limit
        super().__init__(f"{parameter}={value} exceeds budget {limit}")


class PrecisionError(RuntimeError):
    """A truncated computation was asked for information beyond its precision."""


class ConfigurationError(ValueError):
    """Parameters that make no sense together (caller bug)."""


_DEFAULTS = {
    "conductor": 10**6,
    "enumeration": 2 * 10**7,
    "group_order": 10**6,
    "graph_vertices": 2 * 10**5,
    "field_table": 2**21,
}


def budget(name: str) -> int:
    """Limit for `name`, overridable by ARTIFACT_BUDGET_<NAME> in the environment."""
    raw = os.environ.get("ARTIFACT_BUDGET_" + name.upper())
    if raw is not None:
        return int(raw)
    return _DEFAULTS[name]


def check_budget(name: str, value: int) -> None:
    limit = budget(name)
    if value > limit:
        raise BudgetError(name, value, limit)
