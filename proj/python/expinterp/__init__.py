"""Interpolation by sums of exponentials."""

import json

from ._core import (
    ConfigurationError,
    DomainError,
    PreconditionError,
    ResourceError,
    growth_exponent,
    solve,
    solve_crude,
    validate_scenario,
    verify_obstruction_pairing,
    version,
)
from ._core import run_scenario as _run_scenario

__version__ = version()


def run_scenario(text, seed=0, parallel=False):
    """Run scenario JSON text and return (parsed report, exit code)."""
    report, code = _run_scenario(text, seed, parallel)
    return json.loads(report), code


__all__ = [
    "ConfigurationError",
    "DomainError",
    "PreconditionError",
    "ResourceError",
    "growth_exponent",
    "run_scenario",
    "solve",
    "solve_crude",
    "validate_scenario",
    "verify_obstruction_pairing",
    "version",
]
