"""Extremal solution-free colorings: exact search, closed forms and constructions."""

from ._zsdiam import (
    Error,
    builtins,
    closed_form,
    compute,
    egz_oracle,
    expand,
    find_solution,
    verify_builtin,
)

__all__ = [
    "Error",
    "builtins",
    "closed_form",
    "compute",
    "egz_oracle",
    "expand",
    "find_solution",
    "verify_builtin",
]
