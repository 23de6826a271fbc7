"""MDL granular-ball generation and ball-center clustering."""

import json

from ._core import (
    ConfigError,
    DataError,
    ParseError,
    acc,
    adaptive_n_min,
    ari,
    cluster,
    generate,
    initial_ball_count,
    l1_length,
    log_shell_volume,
    nmi,
    normalize,
    partition_cost,
    run_json,
    select_model,
)


def run(input, **kwargs):
    """Run the CSV benchmark pipeline and return the report as a dict."""
    return json.loads(run_json(input, **kwargs))


__all__ = [
    "ConfigError",
    "DataError",
    "ParseError",
    "acc",
    "adaptive_n_min",
    "ari",
    "cluster",
    "generate",
    "initial_ball_count",
    "l1_length",
    "log_shell_volume",
    "nmi",
    "normalize",
    "partition_cost",
    "run",
    "run_json",
    "select_model",
]
