"""Chaotic initial populations for a real-coded genetic algorithm."""

import json

from . import _cga
from ._cga import (
    CgaError,
    benchmarks,
    compute_performance,
    evaluate,
    function_names,
    generate_series,
    lyapunov,
    map_names,
    population_entropy,
    spearman,
)

__all__ = [
    "CgaError",
    "benchmarks",
    "compute_performance",
    "default_map_params",
    "evaluate",
    "function_names",
    "generate_series",
    "lyapunov",
    "map_names",
    "population_entropy",
    "resolve_config",
    "run_experiment",
    "run_trial",
    "spearman",
]


def _dump(config):
    if config is None:
        return ""
    if isinstance(config, str):
        return config
    return json.dumps(config)


def default_map_params():
    return json.loads(_cga.default_map_params())


def resolve_config(config=None):
    """Fully resolved configuration; missing keys take their defaults."""
    return json.loads(_cga.resolve_config(_dump(config)))


def run_trial(function, map, seed=None, trial_index=0, config=None):
    kwargs = {} if seed is None else {"seed": seed}
    return _cga.run_trial(function, map, trial_index=trial_index, config_json=_dump(config), **kwargs)


def run_experiment(config=None, output_dir=None):
    """Run the trial matrix and return the report mirror as a dict.

    When output_dir is given the four report files are written there too.
    """
    return json.loads(_cga.run_experiment(_dump(config), "" if output_dir is None else str(output_dir)))
