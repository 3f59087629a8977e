"""Platoon matching games: who departs when, and how platooning profit is split.

Thin convenience wrapper over the C++ core: scenarios and results travel as
plain dicts (JSON underneath), monetary amounts as exact decimal strings.
"""

import json as _json

from ._core import ConfigError, derive_seed, models
from ._core import (
    equilibria_json as _equilibria_json,
    generate_scenario_json as _generate_scenario_json,
    solve_json as _solve_json,
    sweep_csv_from_config as _sweep_csv_from_config,
)

__all__ = [
    "ConfigError",
    "derive_seed",
    "enumerate_equilibria",
    "generate_scenario",
    "models",
    "solve",
    "sweep_csv",
]


def generate_scenario(n=10, seed=1, window_start=0, window_end=30, max_delay=10):
    """Draw a random fleet under the standard economics."""
    return _json.loads(_generate_scenario_json(n, seed, window_start, window_end, max_delay))


def solve(model, scenario, seed=1, max_sweeps=100):
    """Solve one scenario under one model; returns the full run record."""
    return _json.loads(_solve_json(model, _as_text(scenario), seed, max_sweeps))


def enumerate_equilibria(model, scenario, seed=1, cap=1_000_000):
    """All pure Nash equilibria of the model's game, by brute force."""
    return _json.loads(_equilibria_json(model, _as_text(scenario), seed, cap))


def sweep_csv(config):
    """Monte Carlo sweep from a configuration dict; returns CSV text."""
    return _sweep_csv_from_config(_as_text(config))


def _as_text(doc):
    return doc if isinstance(doc, str) else _json.dumps(doc)
